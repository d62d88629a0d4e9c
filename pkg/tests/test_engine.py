"""Decay rewriting, destabilizing substitution, and normal-form equality."""

import random

import pytest

from gen import GEN_CTX, Gen, permute_cofs
from cubnf import nf as N
from cubnf import syntax as S
from cubnf.cof import BOT, Eq, IVar, ONE, TOP, ZERO, branch_of_eqs, dnf
from cubnf.engine import (
    StarUnguardedError,
    canon,
    embed,
    embed_ne,
    eq_nf,
    subst_i_nf,
)
from cubnf.syntax import Ctx, EMPTY_SPLIT, Split, SplitCase

i, j = IVar("i"), IVar("j")


def _papp_backup(var: str) -> Split:
    return Split.of_cases([
        SplitCase(dnf(Eq(IVar(var), ZERO))[0], N.NF_TRUE),
        SplitCase(dnf(Eq(IVar(var), ONE))[0], N.NF_FALSE),
    ])


# ---------------------------------------------------------------------------
# Embedding


def test_embed_examples():
    assert embed(N.NF_TRUE) == S.TRUE
    assert embed(N.NUp(N.TAG_BOOL, N.NVar("b"), None, EMPTY_SPLIT)) == S.Var("b")
    assert embed(N.NLoop(i)) == S.Loop(i)


def test_embed_splits_become_case_splits():
    up = N.NUp(N.TAG_BOOL, N.NPApp(N.NVar("p"), i), None, _papp_backup("i"))
    raw = embed(up)
    assert raw == S.PApp(S.Var("p"), i)


def test_embed_rejects_bare_star():
    with pytest.raises(StarUnguardedError):
        embed_ne(N.NStar(TOP))


def test_embed_reparses(tmp_path):
    from cubnf.parser import Scope, parse_tm, print_tm
    from cubnf.sexp import read_all, write
    rng = random.Random(3)
    g = Gen(rng)
    sc = Scope(frozenset(GEN_CTX.names()), frozenset(GEN_CTX.ivars()))
    for _ in range(100):
        _, t = g.any_typed(3)
        raw = embed(t)
        text = write(print_tm(raw))
        assert parse_tm(read_all(text)[0], sc) == raw


# ---------------------------------------------------------------------------
# canon: the directed decay equations


def test_canon_loop_endpoints():
    assert canon([], N.NLoop(ZERO)) == N.NF_BASE
    assert canon([], N.NLoop(ONE)) == N.NF_BASE


def test_canon_star_collapse():
    backup = Split.of_cases([SplitCase(branch_of_eqs([]), N.NF_FALSE)])
    t = N.NUp(N.TAG_BOOL, N.NStar(TOP), None, backup)
    assert canon([], t) == N.NF_FALSE


def test_canon_hcomp_equal_endpoints():
    tube = Split.of_cases([SplitCase(dnf(Eq(IVar("k"), i))[0], N.NLoop(i))])
    t = N.NHCompVal(N.KIND_S1, i, i, BOT, "k", tube)
    assert canon([], t) == N.NLoop(i)


def test_canon_fixed_point_on_values():
    assert canon([], N.NF_TRUE) == N.NF_TRUE


def test_canon_idempotent_on_generated_terms():
    rng = random.Random(23)
    g = Gen(rng)
    for _ in range(300):
        _, t = g.any_typed(3)
        c1 = canon([], t)
        assert canon([], c1) == c1


def test_canon_size_never_increases():
    rng = random.Random(29)
    g = Gen(rng)
    for _ in range(200):
        _, t = g.any_typed(3)
        assert N.size(canon([], t)) <= N.size(t)


# ---------------------------------------------------------------------------
# Destabilizing substitution


def test_subst_selects_backup_branch():
    t = N.NUp(N.TAG_BOOL, N.NPApp(N.NVar("p"), i), None, _papp_backup("i"))
    ctx = Ctx().extend_tm("p", S.Path("_", S.BOOL, S.TRUE, S.FALSE)).extend_i("i")
    assert subst_i_nf(ctx, t, "i", ZERO) == N.NF_TRUE
    assert subst_i_nf(ctx, t, "i", ONE) == N.NF_FALSE


def test_subst_loop_boundary():
    ctx = Ctx().extend_i("i")
    assert subst_i_nf(ctx, N.NLoop(i), "i", ONE) == N.NF_BASE


def test_subst_closed_terms_fixed():
    ctx = Ctx().extend_i("i")
    assert subst_i_nf(ctx, N.NF_TRUE, "i", ZERO) == N.NF_TRUE


def test_subst_contraction_triggers_decay():
    # a neutral with frontier (i=j) decays under the contraction j := i
    ctx = (Ctx().extend_tm("p", S.Path("_", S.BOOL, S.TRUE, S.FALSE))
           .extend_i("i").extend_i("j"))
    inner = N.NPApp(N.NVar("p"), i)
    t = N.NUp(N.TAG_BOOL, inner, None, _papp_backup("i"))
    # substituting i := 0 by way of contraction with another variable
    mixed = subst_i_nf(ctx, t, "i", j)
    assert isinstance(mixed, N.NUp)
    done = subst_i_nf(Ctx().extend_tm("p", S.Path("_", S.BOOL, S.TRUE, S.FALSE)).extend_i("j"),
                      mixed, "j", ZERO)
    assert done == N.NF_TRUE


def test_subst_functoriality():
    rng = random.Random(31)
    g = Gen(rng)
    ctx0 = S.ctx_subst_i(GEN_CTX, "i", ZERO)
    ctx1 = S.ctx_subst_i(GEN_CTX, "j", ONE)
    for _ in range(150):
        _, t = g.any_typed(3)
        a = subst_i_nf(ctx0, subst_i_nf(GEN_CTX, t, "i", ZERO), "j", ONE)
        b = subst_i_nf(ctx1, subst_i_nf(GEN_CTX, t, "j", ONE), "i", ZERO)
        target = S.ctx_subst_i(ctx0, "j", ONE)
        assert eq_nf(target, a, b), t


# ---------------------------------------------------------------------------
# eq_nf


def test_eq_examples():
    ctx = Ctx()
    assert eq_nf(ctx, N.NLoop(ZERO), N.NF_BASE)
    assert eq_nf(ctx, N.NLoop(ONE), N.NF_BASE)
    assert not eq_nf(ctx, N.NF_TRUE, N.NF_FALSE)


def test_eq_cof_orientation_invariance():
    # hcomp tubes over (i=0) \/ (j=1) against the reversed spelling
    rng = random.Random(37)
    g = Gen(rng)
    count = 0
    for _ in range(300):
        _, t = g.any_typed(3)
        t2 = permute_cofs(rng, t)
        assert eq_nf(GEN_CTX, t, t2)
        if t2 != t:
            count += 1
    assert count > 5  # the permutation actually bites


def test_eq_equivalence_and_congruence():
    rng = random.Random(41)
    g = Gen(rng)
    terms = []
    for _ in range(60):
        ty, t = g.any_typed(3)
        terms.append(t)
    for t in terms:
        assert eq_nf(GEN_CTX, t, t)
    for a in terms[:25]:
        for b in terms[:25]:
            assert eq_nf(GEN_CTX, a, b) == eq_nf(GEN_CTX, b, a)
    # congruence through one-hole contexts
    def contexts(hole):
        yield N.NLam("z", hole)
        yield N.NPair(hole, N.NF_TRUE)
        yield N.mk_up([], N.TAG_BOOL, N.NApp(N.NVar("f0"), hole), None, EMPTY_SPLIT)
        yield N.mk_up([], N.TAG_BOOL,
                      N.NIf("x", N.T_BOOL, N.NVar("b0"), hole, N.NF_FALSE),
                      None, EMPTY_SPLIT)
    bools = [t for t in terms if True]
    for a in bools[:15]:
        if not isinstance(a, (N.NTrue, N.NFalse, N.NUp)):
            continue
        b = permute_cofs(rng, a)
        for ca, cb in zip(contexts(a), contexts(b)):
            assert eq_nf(GEN_CTX, ca, cb)


def test_eq_transitive_on_samples():
    rng = random.Random(43)
    g = Gen(rng)
    for _ in range(40):
        _, t = g.any_typed(3)
        a = permute_cofs(rng, t)
        b = permute_cofs(rng, a)
        assert eq_nf(GEN_CTX, t, a) and eq_nf(GEN_CTX, a, b) and eq_nf(GEN_CTX, t, b)


# ---------------------------------------------------------------------------
# Termination instrumentation


def test_rewrites_strictly_decrease_size():
    # the smart constructors assert the decrease internally; this drives
    # them hard and confirms the assertion stays silent while steps happen
    before = N.REWRITE_STEPS[0]
    rng = random.Random(47)
    g = Gen(rng)
    ctx0 = S.ctx_subst_i(GEN_CTX, "i", ZERO)
    for _ in range(200):
        _, t = g.any_typed(3)
        canon([], t)
        subst_i_nf(GEN_CTX, t, "i", ZERO)
    assert N.REWRITE_STEPS[0] > before


# ---------------------------------------------------------------------------
# Confluence at desk scale: rewriting inside-out and outside-in agree


def _star_wrap(t: N.Nf) -> N.Nf:
    backup = Split.of_cases([SplitCase(branch_of_eqs([]), t)])
    return N.NUp(N.TAG_BOOL, N.NStar(TOP), None, backup)


def _hcomp_wrap(kind: str, t: N.Nf) -> N.Nf:
    tube = Split.of_cases([SplitCase(dnf(Eq(IVar("k"), i))[0], t)])
    return N.NHCompVal(kind, i, i, BOT, "k", tube)


def test_confluence_two_rule_orders():
    rng = random.Random(59)
    g = Gen(rng)
    for _ in range(150):
        t = g.bool_nf(2)
        wrapped = _star_wrap(_star_wrap(t))
        outside_in = canon([], wrapped)
        inside_first = canon([], _star_wrap(canon([], _star_wrap(t))))
        assert outside_in == inside_first
        assert eq_nf(GEN_CTX, outside_in, t)
    for _ in range(150):
        t = g.wbool_nf(2)
        wrapped = _hcomp_wrap(N.KIND_WBOOL, _hcomp_wrap(N.KIND_WBOOL, t))
        a = canon([], wrapped)
        b = canon([], _hcomp_wrap(N.KIND_WBOOL, canon([], _hcomp_wrap(N.KIND_WBOOL, t))))
        assert eq_nf(GEN_CTX, a, b)
        assert eq_nf(GEN_CTX, a, canon([], t))
