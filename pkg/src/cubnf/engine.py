"""Interval substitution on normal forms, directed decay rewriting,
decidable equality, and the embedding into raw terms.

Substitution recomputes every frontier as it goes; wherever a frontier
becomes entailed the neutral is replaced by its backup value, so the result
is canonical and carries no residual entailed-frontier neutral.  Rebuilding
through the smart constructors in `nf` is exactly the directed rewrite
system: a single bottom-up pass is a fixed point, and every step strictly
decreases the size metric (asserted there).
"""

from __future__ import annotations

import itertools

from . import nf as N
from . import syntax as S
from .cof import (
    Branch,
    Cof,
    Eq,
    IExpr,
    IVar,
    cof_eq,
    csubst_par,
    isubst_par,
    ivars,
)
from .nf import (
    Ne,
    Nf,
    NeTp,
    NfTp,
    free_ivars_nf,
)
from .syntax import Name, Split, fresh_name, split_isubst


class StarUnguardedError(Exception):
    kind = "star-unguarded"


# ---------------------------------------------------------------------------
# Embedding into raw terms


def split_to_case(sp: Split, embed_payload) -> tuple[tuple[Cof, S.Tm], ...]:
    return tuple((c.branch.to_cof(), embed_payload(c.payload)) for c in sp.cases)


def embed_ne(e: Ne) -> S.Tm:
    match e:
        case N.NVar(x):
            return S.Var(x)
        case N.NApp(f, a):
            return S.App(embed_ne(f), embed(a))
        case N.NFst(p):
            return S.Fst(embed_ne(p))
        case N.NSnd(p):
            return S.Snd(embed_ne(p))
        case N.NIf(x, motive, b, t, f):
            return S.If(x, embed_tp(motive), embed_ne(b), embed(t), embed(f))
        case N.NPApp(p, r):
            return S.PApp(embed_ne(p), r)
        case N.NUnglue(_, g):
            return S.Unglue(embed_ne(g))
        case N.NS1Elim(x, motive, t, b, lv, l):
            return S.S1Elim(x, embed_tp(motive), embed_ne(t), embed(b), lv, embed(l))
        case N.NStar(_):
            raise StarUnguardedError("bare star outside a backup-guarded position")
    raise TypeError(f"not a neutral: {e!r}")


def embed(t: Nf) -> S.Tm:
    match t:
        case N.NTrue():
            return S.TRUE
        case N.NFalse():
            return S.FALSE
        case N.NBase():
            return S.BASE
        case N.NLam(x, body):
            return S.Lam(x, embed(body))
        case N.NPair(a, b):
            return S.Pair(embed(a), embed(b))
        case N.NCode(ty):
            return S.Code(embed_tp(ty))
        case N.NPLam(i, body):
            return S.PLam(i, embed(body))
        case N.NGlueIntro(phi, b, part):
            return S.GlueIntro(phi, embed(b), S.CaseSplit(split_to_case(part, embed)))
        case N.NLoop(r):
            return S.Loop(r)
        case N.NHCompVal(kind, r, s, phi, i, tube):
            ty = S.WBOOL if kind == N.KIND_WBOOL else S.CIRCLE
            return S.HComp(ty, r, s, phi, i, S.CaseSplit(split_to_case(tube, embed)))
        case N.NHCompStuck(ty, r, s, phi, i, tube, _):
            return S.HComp(embed_netp(ty), r, s, phi, i,
                           S.CaseSplit(split_to_case(tube, embed)))
        case N.NCoeStuck(i, ty, r, s, tm, _):
            return S.Coe(i, embed_netp(ty), r, s, embed(tm))
        case N.NUp(_, ne, _, _):
            return embed_ne(ne)
    raise TypeError(f"not a normal form: {t!r}")


def embed_netp(t: NeTp) -> S.Tp:
    match t:
        case N.NEl(c):
            return S.El(embed_ne(c))
    raise TypeError(f"not a neutral type: {t!r}")


def embed_tp(t: NfTp) -> S.Tp:
    match t:
        case N.TBool():
            return S.BOOL
        case N.TWBool():
            return S.WBOOL
        case N.TS1():
            return S.CIRCLE
        case N.TU():
            return S.UNIV
        case N.TPi(x, dom, cod):
            return S.Pi(x, embed_tp(dom), embed_tp(cod))
        case N.TSigma(x, dom, cod):
            return S.Sigma(x, embed_tp(dom), embed_tp(cod))
        case N.TPath(i, ty, l, r):
            return S.Path(i, embed_tp(ty), embed(l), embed(r))
        case N.TGlue(phi, base, partial, equiv):
            return S.GlueTp(phi, embed_tp(base),
                            partial.map(lambda _, p: embed_tp(p)),
                            equiv)
        case N.TUp(ne, _):
            return embed_netp(ne)
    raise TypeError(f"not a normal type: {t!r}")


# ---------------------------------------------------------------------------
# Destabilizing interval substitution


class NfSubst:
    """Parallel interval substitution on normal forms.

    `hyps` are the cofibration hypotheses of the *target* context; they
    drive the decay decisions made by the smart constructors during the
    rebuild."""

    def __init__(self, i_map: dict[Name, IExpr], hyps: list[Cof]):
        self.i_map = {k: v for k, v in i_map.items() if v != IVar(k)}
        self.hyps = hyps
        self.avoid: set[Name] = set(self.i_map)
        for r in self.i_map.values():
            self.avoid |= ivars(r)

    def _under_i(self, x: Name, *bodies) -> tuple[Name, "NfSubst"]:
        i_map = {k: v for k, v in self.i_map.items() if k != x}
        if x in self.avoid:
            free: set[Name] = set(self.avoid)
            for b in bodies:
                free |= free_ivars_nf(b)
            x2 = fresh_name(x, free)
            i_map[x] = IVar(x2)
            return x2, NfSubst(i_map, self.hyps)
        return x, NfSubst(i_map, self.hyps)

    def ie(self, e: IExpr) -> IExpr:
        return isubst_par(e, self.i_map)

    def cof(self, c: Cof) -> Cof:
        return csubst_par(c, self.i_map)

    def split(self, sp: Split, go) -> Split:
        def payload_isubst(payload, tau: dict[Name, IExpr]):
            inner_hyps = [csubst_par(h, tau) for h in self.hyps]
            return go(NfSubst(tau, inner_hyps), payload)

        return split_isubst(sp, self.i_map, payload_isubst)

    # -- neutrals: purely structural; decay happens at the wrapper -----------

    def ne(self, e: Ne) -> Ne:
        match e:
            case N.NVar(_):
                return e
            case N.NApp(f, a):
                return N.NApp(self.ne(f), self.nf(a))
            case N.NFst(p):
                return N.NFst(self.ne(p))
            case N.NSnd(p):
                return N.NSnd(self.ne(p))
            case N.NIf(x, motive, b, t, f):
                return N.NIf(x, self.nftp(motive), self.ne(b), self.nf(t), self.nf(f))
            case N.NPApp(p, r):
                return N.NPApp(self.ne(p), self.ie(r))
            case N.NUnglue(phi, g):
                return N.NUnglue(self.cof(phi), self.ne(g))
            case N.NS1Elim(x, motive, t, b, lv, l):
                lv2, s2 = self._under_i(lv, l)
                return N.NS1Elim(x, self.nftp(motive), self.ne(t), self.nf(b),
                                 lv2, s2.nf(l))
            case N.NStar(phi):
                return N.NStar(self.cof(phi))
        raise TypeError(f"not a neutral: {e!r}")

    def netp(self, t: NeTp) -> NeTp:
        match t:
            case N.NEl(c):
                return N.NEl(self.ne(c))
        raise TypeError(f"not a neutral type: {t!r}")

    # -- normal forms ---------------------------------------------------------

    def nf(self, t: Nf) -> Nf:
        match t:
            case N.NTrue() | N.NFalse() | N.NBase():
                return t
            case N.NLam(x, body):
                return N.NLam(x, self.nf(body))
            case N.NPair(a, b):
                return N.NPair(self.nf(a), self.nf(b))
            case N.NCode(ty):
                return N.NCode(self.nftp(ty))
            case N.NPLam(i, body):
                i2, s2 = self._under_i(i, body)
                return N.NPLam(i2, s2.nf(body))
            case N.NGlueIntro(phi, b, part):
                return N.mk_glue(self.hyps, self.cof(phi), self.nf(b),
                                 self.split(part, lambda s, p: s.nf(p)))
            case N.NLoop(r):
                return N.mk_loop(self.ie(r))
            case N.NHCompVal(kind, r, s, phi, i, tube):
                i2, s2 = self._under_i(i, tube)
                return N.mk_hcomp_val(self.hyps, kind, self.ie(r), self.ie(s),
                                      self.cof(phi), i2,
                                      s2.split(tube, lambda ss, p: ss.nf(p)))
            case N.NHCompStuck(ty, r, s, phi, i, tube, backup):
                i2, s2 = self._under_i(i, tube)
                return N.mk_hcomp_stuck(self.hyps, self.netp(ty), self.ie(r),
                                        self.ie(s), self.cof(phi), i2,
                                        s2.split(tube, lambda ss, p: ss.nf(p)),
                                        self.split(backup, lambda ss, p: ss.nf(p)))
            case N.NCoeStuck(i, ty, r, s, tm, backup):
                i2, s2 = self._under_i(i, ty)
                return N.mk_coe_stuck(self.hyps, i2, s2.netp(ty), self.ie(r),
                                      self.ie(s), self.nf(tm),
                                      self.split(backup, lambda ss, p: ss.nf(p)))
            case N.NUp(tag, ne, tpne, backup):
                return N.mk_up(self.hyps, tag, self.ne(ne),
                               self.netp(tpne) if tpne is not None else None,
                               self.split(backup, lambda s, p: s.nf(p)))
        raise TypeError(f"not a normal form: {t!r}")

    def nftp(self, t: NfTp) -> NfTp:
        match t:
            case N.TBool() | N.TWBool() | N.TS1() | N.TU():
                return t
            case N.TPi(x, dom, cod):
                return N.TPi(x, self.nftp(dom), self.nftp(cod))
            case N.TSigma(x, dom, cod):
                return N.TSigma(x, self.nftp(dom), self.nftp(cod))
            case N.TPath(i, ty, l, r):
                i2, s2 = self._under_i(i, ty)
                return N.TPath(i2, s2.nftp(ty), self.nf(l), self.nf(r))
            case N.TGlue(phi, base, partial, equiv):
                return N.mk_glue_tp(self.hyps, self.cof(phi), self.nftp(base),
                                    self.split(partial, lambda s, p: s.nftp(p)),
                                    self.split(equiv, lambda s, p: S.isubst_tm_par(p, s.i_map)))
            case N.TUp(ne, backup):
                return N.mk_up_tp(self.hyps, self.netp(ne),
                                  self.split(backup, lambda s, p: s.nftp(p)))
        raise TypeError(f"not a normal type: {t!r}")


def subst_split_nf(hyps: list[Cof], sp: Split, i_map: dict[Name, IExpr]) -> Split:
    return NfSubst(i_map, hyps).split(sp, lambda s, p: s.nf(p))


def subst_i_nf(ctx: S.Ctx, t: Nf, i: Name, r: IExpr) -> Nf:
    """Substitute an interval expression into a normal form, decaying every
    neutral whose frontier becomes entailed in the target context."""
    target_hyps = [csubst_par(h, {i: r}) for h in ctx.cof_hyps()]
    return NfSubst({i: r}, target_hyps).nf(t)


def subst_i_nftp(ctx: S.Ctx, t: NfTp, i: Name, r: IExpr) -> NfTp:
    target_hyps = [csubst_par(h, {i: r}) for h in ctx.cof_hyps()]
    return NfSubst({i: r}, target_hyps).nftp(t)


# ---------------------------------------------------------------------------
# Canonicalization (the directed rewrite system)


def canon(hyps: list[Cof], t: Nf) -> Nf:
    """Exhaustively apply the directed decay equations; a bottom-up rebuild
    through the smart constructors reaches the fixed point in one pass."""
    return NfSubst({}, hyps).nf(t)


def canon_tp(hyps: list[Cof], t: NfTp) -> NfTp:
    return NfSubst({}, hyps).nftp(t)


# ---------------------------------------------------------------------------
# Equality of normal forms


def _mark(e: IExpr, env: dict[Name, int]):
    if isinstance(e, IVar) and e.name in env:
        return env[e.name]
    return e


def _marker_ivar(m) -> IExpr:
    if isinstance(m, int):
        return IVar(f"?{m}")
    assert isinstance(m, IExpr)
    return m


def _rename_cof(c: Cof, env: dict[Name, int]) -> Cof:
    sub = {n: IVar(f"?{k}") for n, k in env.items()}
    return csubst_par(c, sub)


def _class_hyps(classes) -> list[Cof]:
    out: list[Cof] = []
    for cls in classes:
        members = [_marker_ivar(m) for m in cls]
        out.extend(Eq(members[0], m) for m in members[1:])
    return out


class _NfCmp:
    """Structural comparison of canonical forms: binders up to alpha,
    interval leaves syntactic (modulo the merged classes of enclosing split
    cases), cofibration leaves up to lattice equality under the context
    hypotheses."""

    def __init__(self, hyps: list[Cof]):
        self.hyps = hyps
        self.counter = itertools.count()

    def ie(self, a: IExpr, b: IExpr, envl, envr, classes) -> bool:
        ml, mr = _mark(a, envl), _mark(b, envr)
        if ml == mr:
            return True
        return any(ml in cls and mr in cls for cls in classes)

    def cof(self, a: Cof, b: Cof, envl, envr, classes) -> bool:
        hyps = self.hyps + _class_hyps(classes)
        return cof_eq(hyps, _rename_cof(a, envl), _rename_cof(b, envr))

    def raw(self, a: S.Tm, b: S.Tm, envl, envr, classes) -> bool:
        # opaque raw payloads (equivalence witnesses): rename the enclosing
        # binders apart, then plain alpha comparison
        def ren(t, env):
            tm_map = {n: S.Var(f"?{k}") for n, k in env.items()}
            i_map = {n: IVar(f"?{k}") for n, k in env.items()}
            return S.RawSubst(tm_map, i_map).tm(t)
        return S.alpha_eq(ren(a, envl), ren(b, envr))

    def split(self, a: Split, b: Split, envl, envr, classes, payload_cmp) -> bool:
        if len(a.cases) != len(b.cases):
            return False
        def sig(branch: Branch, env):
            return frozenset(frozenset(_mark(e, env) for e in cls)
                             for cls in branch.classes)
        rmap = {sig(c.branch, envr): c for c in b.cases}
        if len(rmap) != len(b.cases):
            return False
        for cl in a.cases:
            s = sig(cl.branch, envl)
            cr = rmap.get(s)
            if cr is None:
                return False
            if not payload_cmp(cl.payload, cr.payload, envl, envr, classes + tuple(s)):
                return False
        return True

    def bind(self, xl: Name, xr: Name, envl, envr):
        k = next(self.counter)
        return {**envl, xl: k}, {**envr, xr: k}

    def nf(self, a: Nf, b: Nf, envl, envr, classes) -> bool:
        if type(a) is not type(b):
            return False
        match a:
            case N.NTrue() | N.NFalse() | N.NBase():
                return True
            case N.NLam(x, body):
                el, er = self.bind(x, b.var, envl, envr)
                return self.nf(body, b.body, el, er, classes)
            case N.NPair(x, y):
                return (self.nf(x, b.fst, envl, envr, classes)
                        and self.nf(y, b.snd, envl, envr, classes))
            case N.NCode(ty):
                return self.nftp(ty, b.ty, envl, envr, classes)
            case N.NPLam(i, body):
                el, er = self.bind(i, b.var, envl, envr)
                return self.nf(body, b.body, el, er, classes)
            case N.NGlueIntro(phi, base, part):
                return (self.cof(phi, b.phi, envl, envr, classes)
                        and self.nf(base, b.base, envl, envr, classes)
                        and self.split(part, b.part, envl, envr, classes, self.nf))
            case N.NLoop(r):
                return self.ie(r, b.arg, envl, envr, classes)
            case N.NHCompVal(kind, r, s, phi, i, tube):
                if kind != b.kind:
                    return False
                el, er = self.bind(i, b.var, envl, envr)
                return (self.ie(r, b.src, envl, envr, classes)
                        and self.ie(s, b.dst, envl, envr, classes)
                        and self.cof(phi, b.phi, envl, envr, classes)
                        and self.split(tube, b.tube, el, er, classes, self.nf))
            case N.NHCompStuck(ty, r, s, phi, i, tube, backup):
                el, er = self.bind(i, b.var, envl, envr)
                return (self.netp(ty, b.ty, envl, envr, classes)
                        and self.ie(r, b.src, envl, envr, classes)
                        and self.ie(s, b.dst, envl, envr, classes)
                        and self.cof(phi, b.phi, envl, envr, classes)
                        and self.split(tube, b.tube, el, er, classes, self.nf)
                        and self.split(backup, b.backup, envl, envr, classes, self.nf))
            case N.NCoeStuck(i, ty, r, s, tm, backup):
                el, er = self.bind(i, b.var, envl, envr)
                return (self.netp(ty, b.ty, el, er, classes)
                        and self.ie(r, b.src, envl, envr, classes)
                        and self.ie(s, b.dst, envl, envr, classes)
                        and self.nf(tm, b.tm, envl, envr, classes)
                        and self.split(backup, b.backup, envl, envr, classes, self.nf))
            case N.NUp(tag, ne, tpne, backup):
                if tag != b.tag:
                    return False
                if (tpne is None) != (b.tpne is None):
                    return False
                if tpne is not None and not self.netp(tpne, b.tpne, envl, envr, classes):
                    return False
                return (self.ne(ne, b.ne, envl, envr, classes)
                        and self.split(backup, b.backup, envl, envr, classes, self.nf))
        raise TypeError(f"not a normal form: {a!r}")

    def ne(self, a: Ne, b: Ne, envl, envr, classes) -> bool:
        if type(a) is not type(b):
            return False
        match a:
            case N.NVar(x):
                return envl.get(x, ("free", x)) == envr.get(b.name, ("free", b.name))
            case N.NApp(f, t):
                return (self.ne(f, b.fn, envl, envr, classes)
                        and self.nf(t, b.arg, envl, envr, classes))
            case N.NFst(p):
                return self.ne(p, b.pair, envl, envr, classes)
            case N.NSnd(p):
                return self.ne(p, b.pair, envl, envr, classes)
            case N.NIf(x, motive, scrut, t, f):
                el, er = self.bind(x, b.var, envl, envr)
                return (self.nftp(motive, b.motive, el, er, classes)
                        and self.ne(scrut, b.scrut, envl, envr, classes)
                        and self.nf(t, b.on_true, envl, envr, classes)
                        and self.nf(f, b.on_false, envl, envr, classes))
            case N.NPApp(p, r):
                return (self.ne(p, b.fn, envl, envr, classes)
                        and self.ie(r, b.arg, envl, envr, classes))
            case N.NUnglue(phi, g):
                return (self.cof(phi, b.glue_cof, envl, envr, classes)
                        and self.ne(g, b.tm, envl, envr, classes))
            case N.NS1Elim(x, motive, scrut, base, lv, l):
                el, er = self.bind(x, b.var, envl, envr)
                el2, er2 = self.bind(lv, b.lvar, envl, envr)
                return (self.nftp(motive, b.motive, el, er, classes)
                        and self.ne(scrut, b.scrut, envl, envr, classes)
                        and self.nf(base, b.on_base, envl, envr, classes)
                        and self.nf(l, b.on_loop, el2, er2, classes))
            case N.NStar(phi):
                return self.cof(phi, b.phi, envl, envr, classes)
        raise TypeError(f"not a neutral: {a!r}")

    def netp(self, a: NeTp, b: NeTp, envl, envr, classes) -> bool:
        if type(a) is not type(b):
            return False
        return self.ne(a.code, b.code, envl, envr, classes)

    def nftp(self, a: NfTp, b: NfTp, envl, envr, classes) -> bool:
        if type(a) is not type(b):
            return False
        match a:
            case N.TBool() | N.TWBool() | N.TS1() | N.TU():
                return True
            case N.TPi(x, dom, cod) | N.TSigma(x, dom, cod):
                el, er = self.bind(x, b.var, envl, envr)
                return (self.nftp(dom, b.dom, envl, envr, classes)
                        and self.nftp(cod, b.cod, el, er, classes))
            case N.TPath(i, ty, l, r):
                el, er = self.bind(i, b.var, envl, envr)
                return (self.nftp(ty, b.ty, el, er, classes)
                        and self.nf(l, b.left, envl, envr, classes)
                        and self.nf(r, b.right, envl, envr, classes))
            case N.TGlue(phi, base, partial, equiv):
                return (self.cof(phi, b.phi, envl, envr, classes)
                        and self.nftp(base, b.base, envl, envr, classes)
                        and self.split(partial, b.partial, envl, envr, classes, self.nftp)
                        and self.split(equiv, b.equiv, envl, envr, classes, self.raw))
            case N.TUp(ne, backup):
                return (self.netp(ne, b.ne, envl, envr, classes)
                        and self.split(backup, b.backup, envl, envr, classes, self.nftp))
        raise TypeError(f"not a normal type: {a!r}")


def eq_nf(ctx: S.Ctx, a: Nf, b: Nf, ty: S.Tp | None = None) -> bool:
    """Decidable equality: canonicalize, then compare structurally with
    cofibration leaves decided in the face lattice."""
    hyps = ctx.cof_hyps()
    ca, cb = canon(hyps, a), canon(hyps, b)
    return _NfCmp(hyps).nf(ca, cb, {}, {}, ())


def eq_nftp(ctx: S.Ctx, a: NfTp, b: NfTp) -> bool:
    hyps = ctx.cof_hyps()
    ca, cb = canon_tp(hyps, a), canon_tp(hyps, b)
    return _NfCmp(hyps).nftp(ca, cb, {}, {}, ())


def eq_split(ctx: S.Ctx, a: Split, b: Split) -> bool:
    hyps = ctx.cof_hyps()
    sub = NfSubst({}, hyps)
    ca = sub.split(a, lambda s, p: s.nf(p))
    cb = sub.split(b, lambda s, p: s.nf(p))
    return _NfCmp(hyps).split(ca, cb, {}, {}, (), _NfCmp(hyps).nf)
