"""Random well-formed normal forms over a fixed generation context.

Terms are built through the smart constructors, so the output is canonical
by construction; the suites re-check everything against the rule checker.
Tube payloads are restrictions of a single value, which makes overlap
agreement automatic.
"""

from __future__ import annotations

import random

from cubnf import nf as N
from cubnf import syntax as S
from cubnf.cof import BOT, Eq, IVar, Join, Meet, ONE, TOP, ZERO, dnf
from cubnf.engine import NfSubst
from cubnf.syntax import Ctx, Split, SplitCase

BOOL_PATH = S.Path("_", S.BOOL, S.TRUE, S.FALSE)

GEN_CTX = (
    Ctx()
    .extend_tm("b0", S.BOOL)
    .extend_tm("w0", S.WBOOL)
    .extend_tm("f0", S.Pi("x", S.BOOL, S.BOOL))
    .extend_tm("p0", BOOL_PATH)
    .extend_tm("pr0", S.Sigma("x", S.BOOL, S.BOOL))
    .extend_tm("c0", S.CIRCLE)
    .extend_i("i")
    .extend_i("j")
)

DIMS = ["i", "j"]


def const_split(governing, value: N.Nf) -> Split:
    """A split whose payloads are the restrictions of one value."""
    cases = []
    for br in dnf(governing):
        cases.append(SplitCase(br, NfSubst(br.subst_map(), []).nf(value)))
    return Split.of_cases(cases)


class Gen:
    def __init__(self, rng: random.Random, dims: list[str] | None = None):
        self.rng = rng
        self.dims = dims if dims is not None else list(DIMS)
        self.bool_vars = ["b0"]

    def dim(self) -> IVar:
        return IVar(self.rng.choice(self.dims))

    def iexpr(self):
        if self.dims and self.rng.random() < 0.6:
            return self.dim()
        return self.rng.choice([ZERO, ONE])

    def small_cof(self):
        opts = [BOT, TOP]
        if self.dims:
            opts += [Eq(self.dim(), self.rng.choice([ZERO, ONE]))]
            if len(self.dims) >= 2:
                a, b = self.rng.sample(self.dims, 2)
                opts += [Eq(IVar(a), IVar(b)),
                         Join((Eq(IVar(a), ZERO), Eq(IVar(b), ONE)))]
        return self.rng.choice(opts)

    # -- booleans ------------------------------------------------------------

    def bool_nf(self, depth: int) -> N.Nf:
        if depth <= 0:
            return self.rng.choice([N.NF_TRUE, N.NF_FALSE, self.up_bool_var()])
        pick = self.rng.randrange(6)
        if pick == 0:
            return N.NF_TRUE
        if pick == 1:
            return N.NF_FALSE
        if pick == 2:
            return self.up_bool_var()
        if pick == 3:
            return N.mk_up([], N.TAG_BOOL,
                           N.NIf("x", N.T_BOOL, N.NVar(self.rng.choice(self.bool_vars)),
                                 self.bool_nf(depth - 1), self.bool_nf(depth - 1)),
                           None, S.EMPTY_SPLIT)
        if pick == 4:
            return N.mk_up([], N.TAG_BOOL,
                           N.NApp(N.NVar("f0"), self.bool_nf(depth - 1)),
                           None, S.EMPTY_SPLIT)
        return self.papp_bool()

    def up_bool_var(self) -> N.Nf:
        return N.mk_up([], N.TAG_BOOL, N.NVar(self.rng.choice(self.bool_vars)),
                       None, S.EMPTY_SPLIT)

    def papp_bool(self) -> N.Nf:
        if not self.dims:
            return self.up_bool_var()
        r = self.dim()
        ne = N.NPApp(N.NVar("p0"), r)
        backup = Split.of_cases([
            SplitCase(dnf(Eq(r, ZERO))[0], N.NF_TRUE),
            SplitCase(dnf(Eq(r, ONE))[0], N.NF_FALSE),
        ])
        return N.mk_up([], N.TAG_BOOL, ne, None, backup)

    # -- weak booleans ---------------------------------------------------------

    def wbool_nf(self, depth: int) -> N.Nf:
        if depth <= 0:
            return self.rng.choice([N.NF_TRUE, N.NF_FALSE, self.up_wbool_var()])
        pick = self.rng.randrange(4)
        if pick == 0:
            return self.rng.choice([N.NF_TRUE, N.NF_FALSE])
        if pick == 1:
            return self.up_wbool_var()
        return self.hcomp_val(N.KIND_WBOOL, self.wbool_nf(depth - 1))

    def up_wbool_var(self) -> N.Nf:
        return N.mk_up([], N.TAG_WBOOL, N.NVar("w0"), None, S.EMPTY_SPLIT)

    # -- circle -------------------------------------------------------------------

    def s1_nf(self, depth: int) -> N.Nf:
        if depth <= 0:
            return self.rng.choice([N.NF_BASE, N.mk_loop(self.iexpr())])
        pick = self.rng.randrange(4)
        if pick == 0:
            return N.NF_BASE
        if pick == 1:
            return N.mk_loop(self.iexpr())
        if pick == 2:
            return self.hcomp_val(N.KIND_S1, self.s1_nf(depth - 1))
        return N.mk_up([], N.TAG_S1,
                       N.NS1Elim("x", N.T_S1, N.NVar("c0"),
                                 self.s1_nf(depth - 1), "k", self.s1_nf(depth - 1)),
                       None, S.EMPTY_SPLIT)

    def hcomp_val(self, kind: str, value: N.Nf) -> N.Nf:
        var = "k"
        r, s = self.iexpr(), self.iexpr()
        phi = self.small_cof()
        governing = Join((Eq(IVar(var), r), phi))
        tube = const_split(governing, value)
        return N.mk_hcomp_val([], kind, r, s, phi, var, tube)

    # -- composite types -------------------------------------------------------

    def fn_nf(self, depth: int) -> N.Nf:
        x = f"x{self.rng.randrange(100)}"
        self.bool_vars.append(x)
        body = self.bool_nf(depth - 1)
        self.bool_vars.pop()
        return N.NLam(x, body)

    def pair_nf(self, depth: int) -> N.Nf:
        return N.NPair(self.bool_nf(depth - 1), self.bool_nf(depth - 1))

    def path_nf(self, depth: int) -> N.Nf:
        # eta-expansion of the ambient path variable keeps the boundary exact
        return N.NPLam("k", N.mk_up([], N.TAG_BOOL,
                                    N.NPApp(N.NVar("p0"), IVar("k")),
                                    None, self._p0_backup("k")))

    def _p0_backup(self, var: str) -> Split:
        return Split.of_cases([
            SplitCase(dnf(Eq(IVar(var), ZERO))[0], N.NF_TRUE),
            SplitCase(dnf(Eq(IVar(var), ONE))[0], N.NF_FALSE),
        ])

    def any_typed(self, depth: int):
        ty, fn = self.rng.choice([
            (S.BOOL, self.bool_nf),
            (S.WBOOL, self.wbool_nf),
            (S.CIRCLE, self.s1_nf),
            (S.Pi("x", S.BOOL, S.BOOL), self.fn_nf),
            (S.Sigma("x", S.BOOL, S.BOOL), self.pair_nf),
            (BOOL_PATH, self.path_nf),
        ])
        return ty, fn(depth)


def permute_cofs(rng: random.Random, t):
    """Reverse the parts of meets and joins throughout: a lattice-equal,
    syntactically different variant."""
    from cubnf.cof import Meet, Join, Eq as CEq

    def pc(c):
        match c:
            case CEq(_, _):
                return c
            case Meet(parts):
                return Meet(tuple(pc(p) for p in reversed(parts)))
            case Join(parts):
                return Join(tuple(pc(p) for p in reversed(parts)))
        return c

    def go(x):
        match x:
            case N.NHCompVal(kind, r, s, phi, var, tube):
                return N.NHCompVal(kind, r, s, pc(phi), var, go(tube))
            case N.NGlueIntro(phi, b, part):
                return N.NGlueIntro(pc(phi), go(b), go(part))
            case Split(cases):
                return Split(tuple(SplitCase(c.branch, go(c.payload)) for c in cases))
            case N.NLam(x_, b):
                return N.NLam(x_, go(b))
            case N.NPLam(x_, b):
                return N.NPLam(x_, go(b))
            case N.NPair(a, b):
                return N.NPair(go(a), go(b))
            case N.NUp(tag, ne, tpne, backup):
                return N.NUp(tag, go_ne(ne), tpne, go(backup))
            case _:
                return x

    def go_ne(e):
        match e:
            case N.NApp(f, a):
                return N.NApp(go_ne(f), go(a))
            case N.NIf(x_, m, b, tt, ff):
                return N.NIf(x_, m, go_ne(b), go(tt), go(ff))
            case N.NPApp(f, r):
                return N.NPApp(go_ne(f), r)
            case N.NS1Elim(x_, m, b, bb, lv, ll):
                return N.NS1Elim(x_, m, go_ne(b), go(bb), lv, go(ll))
            case _:
                return e

    return go(t)
