"""Fuel-bounded conversion on raw terms.

Assembled from the stated judgmental equalities: beta for functions,
pairs, booleans and El/code; path beta and endpoint equations; the
composition collapse equations (source equals target, or the tube
cofibration holds; constructor commutation at the strict booleans); the
glue equations; case-split selection and its eta.

Verdicts are three-valued.  Yes and No are definitive; anything involving
an unstated equation (stuck compositions, opaque equivalences) degrades to
Unknown rather than guessing.  Under disjunctive hypotheses the problem is
decided separately beneath each branch of the canonical decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import syntax as S
from .cof import (
    Branch,
    Cof,
    Eq,
    IExpr,
    IVar,
    Join,
    Meet,
    ONE,
    ZERO,
    cof_eq,
    dnf,
    entails,
)
from .syntax import Ctx, Name, fresh_name, free_ivars, free_tm_vars

DEFAULT_FUEL = 1000

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

FUEL_EXHAUSTED = "fuel-exhausted"
UNORIENTED = "unoriented-equation"


@dataclass(frozen=True)
class ConvVerdict:
    kind: str
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.kind == YES


VERDICT_YES = ConvVerdict(YES)
VERDICT_NO = ConvVerdict(NO)


class _OutOfFuel(Exception):
    pass


def _both(a: ConvVerdict, b: ConvVerdict) -> ConvVerdict:
    if a.kind == NO or b.kind == NO:
        return VERDICT_NO
    if a.kind == YES and b.kind == YES:
        return VERDICT_YES
    reason = a.reason if a.kind == UNKNOWN else b.reason
    return ConvVerdict(UNKNOWN, reason or UNORIENTED)


def _all(verdicts) -> ConvVerdict:
    out = VERDICT_YES
    for v in verdicts:
        out = _both(out, v)
        if out.kind == NO:
            return out
    return out


def _spine_head(t: S.Tm) -> S.Tm | None:
    while True:
        match t:
            case S.App(f, _) | S.PApp(f, _):
                t = f
            case S.Fst(p) | S.Snd(p):
                t = p
            case S.If(_, _, b, _, _):
                t = b
            case S.S1Elim(_, _, b, _, _, _):
                t = b
            case S.Unglue(g):
                t = g
            case _:
                return t


def _is_rigid(t: S.Tm) -> bool:
    if isinstance(t, (S.HComp, S.Coe, S.GlueIntro, S.Unglue, S.CaseSplit)):
        return False
    head = _spine_head(t)
    return isinstance(head, (S.Var, S.TrueTm, S.FalseTm, S.BaseTm, S.Lam,
                             S.Pair, S.PLam, S.Loop, S.Code))


class _Conv:
    def __init__(self, ctx: Ctx, branch: Branch, fuel: int):
        self.ctx = ctx
        self.branch = branch
        self.hyps: list[Cof] = [branch.to_cof()]
        self.fuel = [fuel]

    def _spend(self):
        self.fuel[0] -= 1
        if self.fuel[0] <= 0:
            raise _OutOfFuel

    def _true(self, phi: Cof) -> bool:
        return entails(self.hyps, phi)

    def ie(self, r: IExpr) -> IExpr:
        return self.branch.rep(r)

    def ie_eq(self, r: IExpr, s: IExpr) -> bool:
        return self.branch.rep(r) == self.branch.rep(s)

    # -- weak head normalization ---------------------------------------------

    def whnf(self, t: S.Tm) -> S.Tm:
        while True:
            t2 = self._step(t)
            if t2 is None:
                return t
            self._spend()
            t = t2

    def _step(self, t: S.Tm) -> S.Tm | None:
        match t:
            case S.App(f, a):
                f2 = self.whnf(f)
                if isinstance(f2, S.Lam):
                    return S.subst_tm(f2.body, f2.var, a)
                return None if f2 is f else S.App(f2, a)
            case S.Fst(p):
                p2 = self.whnf(p)
                if isinstance(p2, S.Pair):
                    return p2.fst
                return None if p2 is p else S.Fst(p2)
            case S.Snd(p):
                p2 = self.whnf(p)
                if isinstance(p2, S.Pair):
                    return p2.snd
                return None if p2 is p else S.Snd(p2)
            case S.If(_, _, b, tt, ff):
                b2 = self.whnf(b)
                if isinstance(b2, S.TrueTm):
                    return tt
                if isinstance(b2, S.FalseTm):
                    return ff
                return None if b2 is b else S.If(t.var, t.motive, b2, tt, ff)
            case S.PApp(p, r):
                p2 = self.whnf(p)
                if isinstance(p2, S.PLam):
                    return S.subst_i_tm(p2.body, p2.var, r)
                r2 = self.ie(r)
                if r2 == ZERO or r2 == ONE:
                    ty = self.synth(p2)
                    if ty is not None:
                        ty2 = self.whnf_tp(ty)
                        if isinstance(ty2, S.Path):
                            return ty2.left if r2 == ZERO else ty2.right
                if p2 is not p or r2 != r:
                    return S.PApp(p2, r2)
                return None
            case S.Loop(r):
                r2 = self.ie(r)
                if r2 == ZERO or r2 == ONE:
                    return S.BASE
                return S.Loop(r2) if r2 != r else None
            case S.Code(ty):
                ty2 = self.whnf_tp(ty)
                if isinstance(ty2, S.El):
                    return ty2.code
                return None if ty2 is ty else S.Code(ty2)
            case S.CaseSplit(cases):
                for phi, body in cases:
                    if self._true(phi):
                        return body
                return None
            case S.HComp(ty, r, s, phi, i, tube):
                if self._true(Join((Eq(r, s), phi))):
                    return S.subst_i_tm(tube, i, s)
                ty2 = self.whnf_tp(ty)
                if isinstance(ty2, S.Bool):
                    # strict booleans: composition computes on constructors
                    pulled = self._constant_tube(tube, i, Join((Eq(IVar(i), r), phi)))
                    if pulled is not None:
                        return pulled
                return None if ty2 is ty else S.HComp(ty2, r, s, phi, i, tube)
            case S.Coe(i, ty, r, s, tm):
                if self.ie_eq(r, s):
                    return tm
                return None
            case S.GlueIntro(phi, b, a):
                if self._true(phi):
                    return a
                return None
            case S.Unglue(g):
                g2 = self.whnf(g)
                ty = self.synth(g2)
                if ty is not None:
                    ty2 = self._expose_glue(ty)
                    if ty2 is not None and self._true(ty2.phi):
                        from .nf import split_select
                        e = split_select(self.hyps, ty2.equiv)
                        if e is not None:
                            return S.App(S.Fst(e), g2)
                return None if g2 is g else S.Unglue(g2)
            case S.S1Elim(x, motive, scrut, b, lv, l):
                s2 = self.whnf(scrut)
                if isinstance(s2, S.BaseTm):
                    return b
                if isinstance(s2, S.Loop):
                    return S.subst_i_tm(l, lv, s2.arg)
                return None if s2 is scrut else S.S1Elim(x, motive, s2, b, lv, l)
            case _:
                return None

    def _expose_glue(self, ty: S.Tp) -> S.GlueTp | None:
        """Reduce a type just far enough to reveal a glue former, without
        collapsing the glue itself when its cofibration holds."""
        while True:
            match ty:
                case S.GlueTp(_, _, _, _):
                    return ty
                case S.El(c):
                    c2 = self.whnf(c)
                    if isinstance(c2, S.Code):
                        ty = c2.ty
                        continue
                    return None
                case S.TpSplit(cases):
                    hit = next((body for phi, body in cases if self._true(phi)), None)
                    if hit is None:
                        return None
                    ty = hit
                case _:
                    return None

    def _constant_tube(self, tube: S.Tm, i: Name, under: Cof) -> S.Tm | None:
        """If the tube is constructor-headed everywhere (a constant boolean
        constructor), pull it out of the composition."""
        inner = _Conv(self.ctx.extend_i(i).extend_cof(under),
                      self.branch, self.fuel[0])
        inner.fuel = self.fuel
        inner.hyps = self.hyps + [under]
        t2 = inner.whnf(tube)
        if isinstance(t2, (S.TrueTm, S.FalseTm)):
            return t2
        if isinstance(t2, S.CaseSplit) and t2.cases:
            parts = [inner.whnf(body) for _, body in t2.cases]
            if all(isinstance(p, S.TrueTm) for p in parts):
                return S.TRUE
            if all(isinstance(p, S.FalseTm) for p in parts):
                return S.FALSE
        return None

    def whnf_tp(self, ty: S.Tp) -> S.Tp:
        while True:
            match ty:
                case S.El(c):
                    c2 = self.whnf(c)
                    if isinstance(c2, S.Code):
                        self._spend()
                        ty = c2.ty
                        continue
                    return S.El(c2) if c2 is not c else ty
                case S.TpSplit(cases):
                    hit = None
                    for phi, body in cases:
                        if self._true(phi):
                            hit = body
                            break
                    if hit is None:
                        return ty
                    self._spend()
                    ty = hit
                case S.GlueTp(phi, _, partial, _):
                    if self._true(phi):
                        from .nf import split_select
                        sel = split_select(self.hyps, partial)
                        if sel is not None:
                            self._spend()
                            ty = sel
                            continue
                    return ty
                case _:
                    return ty

    # -- spine type synthesis (enough for the endpoint and unglue rules) ------

    def synth(self, t: S.Tm) -> S.Tp | None:
        match t:
            case S.Var(x):
                return self.ctx.lookup_tm(x)
            case S.App(f, a):
                ty = self.synth(f)
                if ty is None:
                    return None
                ty = self.whnf_tp(ty)
                if isinstance(ty, S.Pi):
                    return S.subst_tp(ty.cod, ty.var, a)
                return None
            case S.Fst(p):
                ty = self.synth(p)
                if ty is None:
                    return None
                ty = self.whnf_tp(ty)
                return ty.dom if isinstance(ty, S.Sigma) else None
            case S.Snd(p):
                ty = self.synth(p)
                if ty is None:
                    return None
                ty = self.whnf_tp(ty)
                if isinstance(ty, S.Sigma):
                    return S.subst_tp(ty.cod, ty.var, S.Fst(p))
                return None
            case S.PApp(p, r):
                ty = self.synth(p)
                if ty is None:
                    return None
                ty = self.whnf_tp(ty)
                if isinstance(ty, S.Path):
                    return S.subst_i_tp(ty.ty, ty.var, r)
                return None
            case S.If(x, motive, b, _, _):
                return S.subst_tp(motive, x, b)
            case S.S1Elim(x, motive, scrut, _, _, _):
                return S.subst_tp(motive, x, scrut)
            case S.Unglue(g):
                ty = self.synth(g)
                if ty is None:
                    return None
                ty = self.whnf_tp(ty)
                return ty.base if isinstance(ty, S.GlueTp) else None
            case S.HComp(ty, _, _, _, _, _):
                return ty
            case S.Coe(i, ty, _, s, _):
                return S.subst_i_tp(ty, i, s)
            case _:
                return None

    # -- conversion ------------------------------------------------------------

    def conv(self, a: S.Tm, b: S.Tm) -> ConvVerdict:
        self._spend()
        a, b = self.whnf(a), self.whnf(b)
        if S.alpha_eq(a, b):
            return VERDICT_YES

        # eta; case-split eta first so clauses distribute over the others
        match a, b:
            case S.CaseSplit(cases), _:
                return self._split_eta(cases, b)
            case _, S.CaseSplit(cases):
                return self._split_eta(cases, a)
            case S.Lam(x, body), _:
                z = self._freshen(x, a, b)
                return self.conv(S.subst_tm(body, x, S.Var(z)), S.App(b, S.Var(z)))
            case _, S.Lam(x, body):
                z = self._freshen(x, a, b)
                return self.conv(S.App(a, S.Var(z)), S.subst_tm(body, x, S.Var(z)))
            case S.Pair(f, s), _ if not isinstance(b, S.Pair):
                return _both(self.conv(f, S.Fst(b)), self.conv(s, S.Snd(b)))
            case _, S.Pair(f, s) if not isinstance(a, S.Pair):
                return _both(self.conv(S.Fst(a), f), self.conv(S.Snd(a), s))
            case S.PLam(i, body), _:
                z = self._freshen(i, a, b)
                inner = self._extend_i(z)
                return inner.conv(S.subst_i_tm(body, i, IVar(z)), S.PApp(b, IVar(z)))
            case _, S.PLam(i, body):
                z = self._freshen(i, a, b)
                inner = self._extend_i(z)
                return inner.conv(S.PApp(a, IVar(z)), S.subst_i_tm(body, i, IVar(z)))
            case _:
                pass

        return self._conv_structural(a, b)

    def _freshen(self, x: Name, *terms) -> Name:
        avoid = self.ctx.names() | {"_"}
        for t in terms:
            avoid |= free_tm_vars(t) | free_ivars(t)
        return fresh_name(x, avoid)

    def _extend_i(self, z: Name) -> "_Conv":
        inner = _Conv(self.ctx.extend_i(z), self.branch, self.fuel[0])
        inner.fuel = self.fuel
        inner.hyps = self.hyps
        return inner

    def _under_branch(self, branch: Branch) -> "_Conv | None":
        merged = _merge_branches(self.branch, branch)
        if not merged.consistent:
            return None
        inner = _Conv(self.ctx, merged, self.fuel[0])
        inner.fuel = self.fuel
        return inner

    def _under_cof(self, phi: Cof) -> "list[_Conv]":
        out = []
        for br in dnf(Meet(tuple(self.hyps + [phi]))):
            inner = _Conv(self.ctx.extend_cof(phi), br, self.fuel[0])
            inner.fuel = self.fuel
            out.append(inner)
        return out

    def _split_eta(self, cases, other: S.Tm) -> ConvVerdict:
        verdicts = []
        for phi, body in cases:
            for inner in self._under_cof(phi):
                verdicts.append(inner.conv(body, other))
        return _all(verdicts)

    def _conv_structural(self, a: S.Tm, b: S.Tm) -> ConvVerdict:
        if type(a) is not type(b):
            if _is_rigid(a) and _is_rigid(b):
                return VERDICT_NO
            return ConvVerdict(UNKNOWN, UNORIENTED)
        match a:
            case S.Var(x):
                return VERDICT_YES if x == b.name else VERDICT_NO
            case S.TrueTm() | S.FalseTm() | S.BaseTm():
                return VERDICT_YES
            case S.Loop(r):
                return VERDICT_YES if self.ie_eq(r, b.arg) else VERDICT_NO
            case S.App(f, x):
                return _both(self.conv(f, b.fn), self.conv(x, b.arg))
            case S.Fst(p) | S.Snd(p):
                return self.conv(p, b.pair)
            case S.PApp(p, r):
                head = self.conv(p, b.fn)
                arg = VERDICT_YES if self.ie_eq(r, b.arg) else VERDICT_NO
                return _both(head, arg)
            case S.If(x, motive, scrut, tt, ff):
                z = self._freshen(x, motive, b.motive)
                mot = self.conv_tp(S.subst_tp(motive, x, S.Var(z)),
                                   S.subst_tp(b.motive, b.var, S.Var(z)))
                return _all([mot, self.conv(scrut, b.scrut),
                             self.conv(tt, b.on_true), self.conv(ff, b.on_false)])
            case S.S1Elim(x, motive, scrut, base, lv, l):
                z = self._freshen(x, motive, b.motive)
                mot = self.conv_tp(S.subst_tp(motive, x, S.Var(z)),
                                   S.subst_tp(b.motive, b.var, S.Var(z)))
                zi = self._freshen(lv, l, b.on_loop)
                inner = self._extend_i(zi)
                lv_cmp = inner.conv(S.subst_i_tm(l, lv, IVar(zi)),
                                    S.subst_i_tm(b.on_loop, b.lvar, IVar(zi)))
                return _all([mot, self.conv(scrut, b.scrut),
                             self.conv(base, b.on_base), lv_cmp])
            case S.Code(ty):
                return self.conv_tp(ty, b.ty)
            case S.Unglue(g):
                return self.conv(g, b.tm)
            case S.GlueIntro(phi, base, part):
                if not cof_eq(self.hyps, phi, b.phi):
                    return ConvVerdict(UNKNOWN, UNORIENTED)
                vs = [self.conv(base, b.base)]
                for inner in self._under_cof(phi):
                    vs.append(inner.conv(part, b.part))
                v = _all(vs)
                return v if v.kind == YES else ConvVerdict(UNKNOWN, UNORIENTED)
            case S.HComp(ty, r, s, phi, i, tube):
                same = [self.conv_tp(ty, b.ty)]
                same.append(VERDICT_YES if self.ie_eq(r, b.src) else VERDICT_NO)
                same.append(VERDICT_YES if self.ie_eq(s, b.dst) else VERDICT_NO)
                same.append(VERDICT_YES if cof_eq(self.hyps, phi, b.phi) else VERDICT_NO)
                z = self._freshen(i, tube, b.tube)
                inner = self._extend_i(z)
                same.append(inner.conv(S.subst_i_tm(tube, i, IVar(z)),
                                       S.subst_i_tm(b.tube, b.var, IVar(z))))
                v = _all(same)
                # stuck compositions: componentwise disagreement is not
                # definitive (unstated rules could still identify them)
                return v if v.kind == YES else ConvVerdict(UNKNOWN, UNORIENTED)
            case S.Coe(i, ty, r, s, tm):
                z = self._freshen(i, ty, b.ty)
                inner = self._extend_i(z)
                same = [inner.conv_tp(S.subst_i_tp(ty, i, IVar(z)),
                                      S.subst_i_tp(b.ty, b.var, IVar(z)))]
                same.append(VERDICT_YES if self.ie_eq(r, b.src) else VERDICT_NO)
                same.append(VERDICT_YES if self.ie_eq(s, b.dst) else VERDICT_NO)
                same.append(self.conv(tm, b.tm))
                v = _all(same)
                return v if v.kind == YES else ConvVerdict(UNKNOWN, UNORIENTED)
            case S.Pair(f, s):
                return _both(self.conv(f, b.fst), self.conv(s, b.snd))
            case S.Lam(_, _) | S.PLam(_, _):
                raise AssertionError("eta cases handled above")
            case _:
                return ConvVerdict(UNKNOWN, UNORIENTED)

    def conv_tp(self, a: S.Tp, b: S.Tp) -> ConvVerdict:
        self._spend()
        a, b = self.whnf_tp(a), self.whnf_tp(b)
        if S.alpha_eq(a, b):
            return VERDICT_YES
        if type(a) is not type(b):
            flex = (S.El, S.GlueTp, S.TpSplit)
            if isinstance(a, flex) or isinstance(b, flex):
                return ConvVerdict(UNKNOWN, UNORIENTED)
            return VERDICT_NO
        match a:
            case S.Bool() | S.WBool() | S.S1() | S.U():
                return VERDICT_YES
            case S.Pi(x, dom, cod) | S.Sigma(x, dom, cod):
                z = self._freshen(x, cod, b.cod)
                return _both(self.conv_tp(dom, b.dom),
                             self.conv_tp(S.subst_tp(cod, x, S.Var(z)),
                                          S.subst_tp(b.cod, b.var, S.Var(z))))
            case S.Path(i, ty, l, r):
                z = self._freshen(i, ty, b.ty)
                inner = self._extend_i(z)
                return _all([inner.conv_tp(S.subst_i_tp(ty, i, IVar(z)),
                                           S.subst_i_tp(b.ty, b.var, IVar(z))),
                             self.conv(l, b.left), self.conv(r, b.right)])
            case S.El(c):
                v = self.conv(c, b.code)
                return v if v.kind != NO else ConvVerdict(UNKNOWN, UNORIENTED)
            case S.GlueTp(phi, base, partial, equiv):
                if not cof_eq(self.hyps, phi, b.phi):
                    return ConvVerdict(UNKNOWN, UNORIENTED)
                vs = [self.conv_tp(base, b.base)]
                if (partial.branches() != b.partial.branches()
                        or equiv.branches() != b.equiv.branches()):
                    return ConvVerdict(UNKNOWN, UNORIENTED)
                for ca, cb in zip(partial.cases, b.partial.cases):
                    sub = self._under_branch(ca.branch)
                    if sub is not None:
                        vs.append(sub.conv_tp(ca.payload, cb.payload))
                for ca, cb in zip(equiv.cases, b.equiv.cases):
                    sub = self._under_branch(ca.branch)
                    if sub is not None:
                        vs.append(sub.conv(ca.payload, cb.payload))
                v = _all(vs)
                return v if v.kind == YES else ConvVerdict(UNKNOWN, UNORIENTED)
            case _:
                return ConvVerdict(UNKNOWN, UNORIENTED)


def _merge_branches(a: Branch, b: Branch) -> Branch:
    from .cof import branch_of_eqs
    return branch_of_eqs(a.atoms + b.atoms)


def bounded_convert(ctx: Ctx, a: S.Tm, b: S.Tm, fuel: int = DEFAULT_FUEL) -> ConvVerdict:
    """Decide a = b under the context's hypotheses, within `fuel` steps.

    Under a disjunctive hypothesis, equality holds iff it holds beneath
    every branch of the canonical decomposition; beneath an inconsistent
    context every equation holds.
    """
    branches = dnf(Meet(tuple(ctx.cof_hyps())))
    if not branches:
        return VERDICT_YES
    verdicts = []
    for br in branches:
        conv = _Conv(ctx, br, fuel)
        try:
            verdicts.append(conv.conv(a, b))
        except _OutOfFuel:
            verdicts.append(ConvVerdict(UNKNOWN, FUEL_EXHAUSTED))
    return _all(verdicts)


def bounded_convert_tp(ctx: Ctx, a: S.Tp, b: S.Tp, fuel: int = DEFAULT_FUEL) -> ConvVerdict:
    branches = dnf(Meet(tuple(ctx.cof_hyps())))
    if not branches:
        return VERDICT_YES
    verdicts = []
    for br in branches:
        conv = _Conv(ctx, br, fuel)
        try:
            verdicts.append(conv.conv_tp(a, b))
        except _OutOfFuel:
            verdicts.append(ConvVerdict(UNKNOWN, FUEL_EXHAUSTED))
    return _all(verdicts)
