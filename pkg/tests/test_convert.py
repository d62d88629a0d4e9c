"""The fuel-bounded conversion oracle on raw terms."""

import random

from gen import GEN_CTX, Gen
from cubnf import syntax as S
from cubnf.cof import BOT, Eq, IVar, Join, Meet, ONE, ZERO
from cubnf.convert import NO, UNKNOWN, YES, bounded_convert, bounded_convert_tp
from cubnf.engine import embed, eq_nf
from cubnf.syntax import (
    App,
    BASE,
    BOOL,
    CaseSplit,
    Code,
    Coe,
    Ctx,
    El,
    FALSE,
    HComp,
    Lam,
    Loop,
    PApp,
    PLam,
    Pair,
    Path,
    Pi,
    TRUE,
    UNIV,
    Var,
)

i, j = IVar("i"), IVar("j")

CTX = (Ctx()
       .extend_tm("f", Pi("x", BOOL, BOOL))
       .extend_tm("g", Pi("x", BOOL, BOOL))
       .extend_tm("x", BOOL)
       .extend_tm("p", Path("_", BOOL, TRUE, FALSE))
       .extend_i("i").extend_i("j"))


def conv(a, b, ctx=CTX, fuel=1000):
    return bounded_convert(ctx, a, b, fuel).kind


def test_beta():
    assert conv(App(Lam("y", Var("y")), TRUE), TRUE) == YES


def test_path_beta_and_endpoints():
    assert conv(PApp(PLam("k", Var("x")), ZERO), Var("x")) == YES
    assert conv(PApp(Var("p"), ZERO), TRUE) == YES
    assert conv(PApp(Var("p"), ONE), FALSE) == YES
    assert conv(PApp(Var("p"), i), TRUE) == NO


def test_coe_reflexive():
    assert conv(Coe("k", BOOL, ZERO, ZERO, TRUE), TRUE) == YES
    assert conv(Coe("k", BOOL, i, i, Var("x")), Var("x")) == YES


def test_pair_projections_and_eta():
    assert conv(S.Fst(Pair(TRUE, FALSE)), TRUE) == YES
    pr = Ctx().extend_tm("q", S.Sigma("x", BOOL, BOOL))
    assert bounded_convert(pr, Var("q"), Pair(S.Fst(Var("q")), S.Snd(Var("q")))).kind == YES


def test_function_eta():
    assert conv(Var("f"), Lam("y", App(Var("f"), Var("y")))) == YES


def test_distinct_rigids_refuted():
    assert conv(TRUE, FALSE) == NO
    assert conv(App(Var("f"), Var("x")), App(Var("g"), Var("x"))) == NO
    assert conv(BASE, Loop(i)) == NO


def test_everything_equal_under_bottom():
    ctx = CTX.extend_cof(BOT)
    assert bounded_convert(ctx, TRUE, FALSE).kind == YES


def test_hcomp_collapse_rules():
    h = HComp(BOOL, i, i, BOT, "k", TRUE)
    assert conv(h, TRUE) == YES
    h2 = HComp(BOOL, ZERO, ONE, Eq(j, ZERO), "k", Var("x"))
    ctx = CTX.extend_cof(Eq(j, ZERO))
    assert bounded_convert(ctx, h2, Var("x")).kind == YES


def test_strict_bool_constructor_commutation():
    h = HComp(BOOL, ZERO, ONE, BOT, "k", TRUE)
    assert conv(h, TRUE) == YES


def test_case_split_selection_and_eta():
    cs = CaseSplit(((Eq(i, ZERO), TRUE), (Eq(i, ONE), TRUE)))
    ctx = CTX.extend_cof(Join((Eq(i, ZERO), Eq(i, ONE))))
    assert bounded_convert(ctx, cs, TRUE).kind == YES
    ctx0 = CTX.extend_cof(Eq(i, ZERO))
    assert bounded_convert(ctx0, cs, TRUE).kind == YES


def test_loop_normalizes_under_hypotheses():
    ctx = CTX.extend_cof(Eq(i, ZERO))
    assert bounded_convert(ctx, Loop(i), BASE).kind == YES
    phi = Join((Meet((Eq(i, ZERO), Eq(j, ONE))), Meet((Eq(i, ONE), Eq(j, ZERO)))))
    ctx2 = CTX.extend_cof(phi)
    assert bounded_convert(ctx2, Loop(i), Loop(j)).kind == YES


def test_universe_equations():
    assert conv(Code(El(Var("x"))), Var("x"),
                Ctx().extend_tm("x", UNIV)) == YES
    assert bounded_convert_tp(Ctx(), El(Code(BOOL)), BOOL).kind == YES


def test_fuel_exhaustion_reports_unknown():
    v = bounded_convert(CTX, App(Var("f"), Var("x")), App(Var("f"), Var("x")), fuel=1)
    assert v.kind == UNKNOWN and v.reason == "fuel-exhausted"


def test_stuck_composition_is_flex():
    hs = HComp(El(Var("c")), ZERO, ONE, BOT, "k", TRUE)
    ctx = Ctx().extend_tm("c", UNIV)
    v = bounded_convert(ctx, hs, TRUE)
    assert v.kind == UNKNOWN and v.reason == "unoriented-equation"


def test_never_definitive_against_eq_nf():
    # wherever eq_nf decides equality of canonical forms, bounded_convert
    # must not say No on the embeddings (and vice versa for Yes)
    rng = random.Random(53)
    g = Gen(rng)
    pairs = []
    for _ in range(80):
        ty, a = g.any_typed(2)
        ty2, b = g.any_typed(2)
        if ty == ty2:
            pairs.append((ty, a, b))
    checked = 0
    for ty, a, b in pairs:
        same = eq_nf(GEN_CTX, a, b, ty)
        v = bounded_convert(GEN_CTX, embed(a), embed(b), 3000)
        if same:
            assert v.kind != NO, (a, b)
        if v.kind == YES:
            assert same, (a, b)
        checked += 1
    assert checked


def test_glue_equations():
    eqc = S.Sigma("f", Pi("y", BOOL, BOOL), BOOL)
    from cubnf.cof import branch_of_eqs
    from cubnf.syntax import Split, SplitCase
    br = branch_of_eqs([(i, ZERO)])
    gty = S.GlueTp(Eq(i, ZERO), BOOL,
                   Split.of_cases([SplitCase(br, BOOL)]),
                   Split.of_cases([SplitCase(br, Var("e0"))]))
    ctx = Ctx().extend_i("i").extend_tm("e0", eqc).extend_tm("g", gty)
    # glue(b, a) = a under the cofibration
    gl = S.GlueIntro(Eq(i, ZERO), App(S.Fst(Var("e0")), TRUE), TRUE)
    ctx0 = ctx.extend_cof(Eq(i, ZERO))
    assert bounded_convert(ctx0, gl, TRUE).kind == YES
    # unglue(g) = e(g) under the cofibration
    ung = S.Unglue(Var("g"))
    assert bounded_convert(ctx0, ung, App(S.Fst(Var("e0")), Var("g"))).kind == YES
    # the glue type itself collapses to its partial type
    assert bounded_convert_tp(ctx0, gty, BOOL).kind == YES
