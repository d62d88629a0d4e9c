"""Raw contexts, types, and terms of the calculus.

Named binding throughout; the contract is alpha equality plus
capture-avoiding substitution.  Substitution descends into interval and
cofibration subexpressions.  Case splits over cofibrations appear both as
raw case-split terms and, for glue data, as branch-keyed `Split` payloads
shared with the normal-form layer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable

from .cof import (
    Branch,
    Cof,
    Eq,
    IExpr,
    IVar,
    branch_of_eqs,
    csubst_par,
    cvars,
    isubst_par,
    ivars,
)

Name = str


# ---------------------------------------------------------------------------
# Branch-keyed splits (the up-front decomposition of a cofibration)


@dataclass(frozen=True)
class SplitCase:
    branch: Branch
    payload: Any


@dataclass(frozen=True)
class Split:
    """A family of payloads keyed by the canonical DNF branches of some
    cofibration; each payload lives in the context contracted by its branch."""

    cases: tuple[SplitCase, ...]

    @staticmethod
    def of_cases(cases: list[SplitCase]) -> "Split":
        return Split(tuple(sorted(cases, key=lambda c: c.branch.sort_key())))

    def branches(self) -> list[Branch]:
        return [c.branch for c in self.cases]

    def value_at(self, branch: Branch):
        for c in self.cases:
            if c.branch == branch:
                return c.payload
        return None

    def total_value(self):
        """The payload when the split is over a true cofibration (its
        canonical decomposition is then the single unconstrained branch)."""
        if len(self.cases) == 1 and not self.cases[0].branch.atoms:
            return self.cases[0].payload
        return None

    def map(self, f: Callable[[Branch, Any], Any]) -> "Split":
        return Split(tuple(SplitCase(c.branch, f(c.branch, c.payload)) for c in self.cases))


EMPTY_SPLIT = Split(())


def split_isubst(sp: Split, sub: dict[Name, IExpr], payload_isubst) -> Split:
    """Transport a split along an interval substitution.

    Each case branch is substituted and re-closed; branches that become
    inconsistent vanish.  Payloads live in contracted contexts, so their
    substitution is the composite `old-representative -> substituted ->
    new-representative`, applied via `payload_isubst(payload, sub')`.
    """
    out: list[SplitCase] = []
    for case in sp.cases:
        atoms = [
            (a if not isinstance(a, IVar) else sub.get(a.name, a),
             b if not isinstance(b, IVar) else sub.get(b.name, b))
            for a, b in case.branch.atoms
        ]
        new_branch = branch_of_eqs(atoms)
        if not new_branch.consistent:
            continue
        tau: dict[Name, IExpr] = {}
        names = set(sub)
        for cls in new_branch.classes:
            for e in cls:
                if isinstance(e, IVar):
                    names.add(e.name)
        for v in names:
            img = new_branch.rep(sub.get(v, IVar(v)))
            if img != IVar(v):
                tau[v] = img
        out.append(SplitCase(new_branch, payload_isubst(case.payload, tau)))
    merged: dict[Branch, Any] = {}
    for case in out:
        merged.setdefault(case.branch, case.payload)
    # keep the decomposition canonical: a branch refining another is absorbed
    kept = [b for b in merged if not any(c != b and b.satisfies(c) for c in merged)]
    return Split.of_cases([SplitCase(b, merged[b]) for b in kept])


# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class Tp:
    pass


@dataclass(frozen=True)
class Pi(Tp):
    var: Name
    dom: Tp
    cod: Tp


@dataclass(frozen=True)
class Sigma(Tp):
    var: Name
    dom: Tp
    cod: Tp


@dataclass(frozen=True)
class Bool(Tp):
    pass


@dataclass(frozen=True)
class WBool(Tp):
    pass


@dataclass(frozen=True)
class S1(Tp):
    pass


@dataclass(frozen=True)
class U(Tp):
    pass


@dataclass(frozen=True)
class El(Tp):
    code: "Tm"


@dataclass(frozen=True)
class Path(Tp):
    var: Name          # binds in ty only
    ty: Tp
    left: "Tm"
    right: "Tm"


@dataclass(frozen=True)
class GlueTp(Tp):
    phi: Cof
    base: Tp
    partial: Split     # of Tp
    equiv: Split       # of Tm


@dataclass(frozen=True)
class TpSplit(Tp):
    cases: tuple[tuple[Cof, Tp], ...]


BOOL, WBOOL, CIRCLE, UNIV = Bool(), WBool(), S1(), U()


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Tm:
    pass


@dataclass(frozen=True)
class Var(Tm):
    name: Name


@dataclass(frozen=True)
class Lam(Tm):
    var: Name
    body: Tm


@dataclass(frozen=True)
class App(Tm):
    fn: Tm
    arg: Tm


@dataclass(frozen=True)
class Pair(Tm):
    fst: Tm
    snd: Tm


@dataclass(frozen=True)
class Fst(Tm):
    pair: Tm


@dataclass(frozen=True)
class Snd(Tm):
    pair: Tm


@dataclass(frozen=True)
class TrueTm(Tm):
    pass


@dataclass(frozen=True)
class FalseTm(Tm):
    pass


@dataclass(frozen=True)
class If(Tm):
    var: Name          # binds in motive only
    motive: Tp
    scrut: Tm
    on_true: Tm
    on_false: Tm


@dataclass(frozen=True)
class Code(Tm):
    ty: Tp


@dataclass(frozen=True)
class PLam(Tm):
    var: Name
    body: Tm


@dataclass(frozen=True)
class PApp(Tm):
    fn: Tm
    arg: IExpr


@dataclass(frozen=True)
class HComp(Tm):
    ty: Tp
    src: IExpr
    dst: IExpr
    phi: Cof
    var: Name          # binds in tube
    tube: Tm


@dataclass(frozen=True)
class Coe(Tm):
    var: Name          # binds in ty
    ty: Tp
    src: IExpr
    dst: IExpr
    tm: Tm


@dataclass(frozen=True)
class GlueIntro(Tm):
    phi: Cof
    base: Tm
    part: Tm


@dataclass(frozen=True)
class Unglue(Tm):
    tm: Tm


@dataclass(frozen=True)
class BaseTm(Tm):
    pass


@dataclass(frozen=True)
class Loop(Tm):
    arg: IExpr


@dataclass(frozen=True)
class S1Elim(Tm):
    var: Name          # binds in motive only
    motive: Tp
    scrut: Tm
    on_base: Tm
    lvar: Name         # binds in on_loop
    on_loop: Tm


@dataclass(frozen=True)
class CaseSplit(Tm):
    cases: tuple[tuple[Cof, Tm], ...]


TRUE, FALSE, BASE = TrueTm(), FalseTm(), BaseTm()


# ---------------------------------------------------------------------------
# Contexts


@dataclass(frozen=True)
class TmBind:
    name: Name
    ty: Tp


@dataclass(frozen=True)
class IBind:
    name: Name


@dataclass(frozen=True)
class CofAssume:
    phi: Cof


CtxEntry = TmBind | IBind | CofAssume


@dataclass(frozen=True)
class Ctx:
    entries: tuple[CtxEntry, ...] = ()

    def extend_tm(self, name: Name, ty: Tp) -> "Ctx":
        return Ctx(self.entries + (TmBind(name, ty),))

    def extend_i(self, name: Name) -> "Ctx":
        return Ctx(self.entries + (IBind(name),))

    def extend_cof(self, phi: Cof) -> "Ctx":
        return Ctx(self.entries + (CofAssume(phi),))

    def lookup_tm(self, name: Name) -> Tp | None:
        for e in reversed(self.entries):
            if isinstance(e, TmBind) and e.name == name:
                return e.ty
        return None

    def has_ivar(self, name: Name) -> bool:
        return any(isinstance(e, IBind) and e.name == name for e in self.entries)

    def cof_hyps(self) -> list[Cof]:
        return [e.phi for e in self.entries if isinstance(e, CofAssume)]

    def names(self) -> set[Name]:
        out: set[Name] = set()
        for e in self.entries:
            if isinstance(e, (TmBind, IBind)):
                out.add(e.name)
        return out

    def ivars(self) -> list[Name]:
        return [e.name for e in self.entries if isinstance(e, IBind)]

    def drop_cofs(self) -> "Ctx":
        return Ctx(tuple(e for e in self.entries if not isinstance(e, CofAssume)))


def ctx_subst_i(ctx: Ctx, i: Name, r: IExpr) -> Ctx:
    """The target context of the substitution [r/i]: the binder of i is
    dropped (or renamed to r when r is a variable not yet in scope), and r
    replaces i in every later entry."""
    entries: list[CtxEntry] = []
    jname = r.name if isinstance(r, IVar) else None
    emitted = False
    for e in ctx.entries:
        match e:
            case IBind(name) if name == i:
                if jname is not None and not emitted:
                    entries.append(IBind(jname))
                    emitted = True
            case IBind(name) if name == jname:
                if not emitted:
                    entries.append(e)
                    emitted = True
            case IBind(_):
                entries.append(e)
            case TmBind(name, ty):
                entries.append(TmBind(name, isubst_tp_par(ty, {i: r})))
            case CofAssume(phi):
                entries.append(CofAssume(csubst_par(phi, {i: r})))
    return Ctx(tuple(entries))


def ctx_contract(ctx: Ctx, branch: Branch) -> tuple[Ctx, dict[Name, IExpr]]:
    """Contract a context by a branch: merged interval variables collapse to
    their class representative (sitting at the earliest member's position),
    and the substitution is applied to every later entry."""
    sub = branch.subst_map()
    rep_emitted: set[Name] = set()
    entries: list[CtxEntry] = []
    for e in ctx.entries:
        match e:
            case IBind(name):
                img = branch.rep(IVar(name))
                if isinstance(img, IVar):
                    if img.name not in rep_emitted:
                        rep_emitted.add(img.name)
                        entries.append(IBind(img.name))
                # merged to an endpoint: entry disappears
            case TmBind(name, ty):
                entries.append(TmBind(name, isubst_tp_par(ty, sub)))
            case CofAssume(phi):
                entries.append(CofAssume(csubst_par(phi, sub)))
    return Ctx(tuple(entries)), sub


# ---------------------------------------------------------------------------
# Free variables


def free_tm_vars(t: Tm | Tp) -> set[Name]:
    out: set[Name] = set()

    def go(x, bound: frozenset[Name]):
        match x:
            case Var(name):
                if name not in bound:
                    out.add(name)
            case Lam(x_, body):
                go(body, bound | {x_})
            case Pi(x_, dom, cod) | Sigma(x_, dom, cod):
                go(dom, bound)
                go(cod, bound | {x_})
            case If(x_, motive, scrut, t1, t2):
                go(motive, bound | {x_})
                go(scrut, bound)
                go(t1, bound)
                go(t2, bound)
            case S1Elim(x_, motive, scrut, b, _, l):
                go(motive, bound | {x_})
                go(scrut, bound)
                go(b, bound)
                go(l, bound)
            case Split(cases):
                for c in cases:
                    go(c.payload, bound)
            case CaseSplit(cases) | TpSplit(cases):
                for _, p in cases:
                    go(p, bound)
            case _ if isinstance(x, (Tm, Tp)):
                for f in vars(x).values():
                    if isinstance(f, (Tm, Tp, Split)):
                        go(f, bound)
            case _:
                pass

    go(t, frozenset())
    return out


def free_ivars(t: Tm | Tp) -> set[Name]:
    out: set[Name] = set()

    def go(x, bound: frozenset[Name]):
        match x:
            case IExpr():
                out.update(n for n in ivars(x) if n not in bound)
            case Cof():
                out.update(n for n in cvars(x) if n not in bound)
            case PLam(i, body):
                go(body, bound | {i})
            case Path(i, ty, l, r):
                go(ty, bound | {i})
                go(l, bound)
                go(r, bound)
            case HComp(ty, src, dst, phi, i, tube):
                go(ty, bound)
                go(src, bound)
                go(dst, bound)
                go(phi, bound)
                go(tube, bound | {i})
            case Coe(i, ty, src, dst, tm):
                go(ty, bound | {i})
                go(src, bound)
                go(dst, bound)
                go(tm, bound)
            case S1Elim(_, motive, scrut, b, lv, l):
                go(motive, bound)
                go(scrut, bound)
                go(b, bound)
                go(l, bound | {lv})
            case Split(cases):
                for c in cases:
                    for a, b_ in c.branch.atoms:
                        go(a, bound)
                        go(b_, bound)
                    go(c.payload, bound)
            case CaseSplit(cases) | TpSplit(cases):
                for phi, p in cases:
                    go(phi, bound)
                    go(p, bound)
            case _ if isinstance(x, (Tm, Tp)):
                for f in vars(x).values():
                    if isinstance(f, (Tm, Tp, Split, IExpr, Cof)):
                        go(f, bound)
            case _:
                pass

    go(t, frozenset())
    return out


_FRESH = itertools.count()


def fresh_name(base: Name, avoid: set[Name]) -> Name:
    if base not in avoid:
        return base
    stem = base.rstrip("'")
    cand = stem + "'"
    while cand in avoid:
        cand += "'"
    return cand


# ---------------------------------------------------------------------------
# Substitution

class RawSubst:
    """Simultaneous capture-avoiding substitution of terms for term
    variables and interval expressions for interval variables."""

    def __init__(self, tm_map: dict[Name, Tm] | None = None,
                 i_map: dict[Name, IExpr] | None = None):
        self.tm_map = dict(tm_map or {})
        self.i_map = dict(i_map or {})
        self.avoid: set[Name] = set(self.tm_map) | set(self.i_map)
        for u in self.tm_map.values():
            self.avoid |= free_tm_vars(u) | free_ivars(u)
        for r in self.i_map.values():
            self.avoid |= ivars(r)

    def _is_identity(self) -> bool:
        return not self.tm_map and not self.i_map

    # -- binders ------------------------------------------------------------

    def _under_tm(self, x: Name, *bodies) -> tuple[Name, "RawSubst"]:
        return self._under(x, bodies, is_interval=False)

    def _under_i(self, x: Name, *bodies) -> tuple[Name, "RawSubst"]:
        return self._under(x, bodies, is_interval=True)

    def _under(self, x: Name, bodies, is_interval: bool) -> tuple[Name, "RawSubst"]:
        tm_map = {k: v for k, v in self.tm_map.items() if k != x}
        i_map = {k: v for k, v in self.i_map.items() if k != x}
        if x in self.avoid:
            free: set[Name] = set(self.avoid)
            for b in bodies:
                free |= free_tm_vars(b) | free_ivars(b)
            x2 = fresh_name(x, free)
            if is_interval:
                i_map[x] = IVar(x2)
            else:
                tm_map[x] = Var(x2)
            return x2, RawSubst(tm_map, i_map)
        return x, RawSubst(tm_map, i_map)

    # -- leaves ---------------------------------------------------------------

    def ie(self, e: IExpr) -> IExpr:
        return isubst_par(e, self.i_map)

    def cof(self, c: Cof) -> Cof:
        return csubst_par(c, self.i_map)

    # -- splits ---------------------------------------------------------------

    def split(self, sp: Split, go) -> Split:
        def payload_isubst(payload, tau: dict[Name, IExpr]):
            carrier = RawSubst({}, tau)
            tm_map = {x: carrier.tm(u) for x, u in self.tm_map.items()}
            return go(RawSubst(tm_map, tau), payload)

        return split_isubst(sp, self.i_map, payload_isubst)

    # -- types ----------------------------------------------------------------

    def tp(self, t: Tp) -> Tp:
        if self._is_identity():
            return t
        match t:
            case Pi(x, dom, cod):
                x2, s2 = self._under_tm(x, cod)
                return Pi(x2, self.tp(dom), s2.tp(cod))
            case Sigma(x, dom, cod):
                x2, s2 = self._under_tm(x, cod)
                return Sigma(x2, self.tp(dom), s2.tp(cod))
            case Bool() | WBool() | S1() | U():
                return t
            case El(code):
                return El(self.tm(code))
            case Path(i, ty, l, r):
                i2, s2 = self._under_i(i, ty)
                return Path(i2, s2.tp(ty), self.tm(l), self.tm(r))
            case GlueTp(phi, base, partial, equiv):
                return GlueTp(self.cof(phi), self.tp(base),
                              self.split(partial, lambda s, p: s.tp(p)),
                              self.split(equiv, lambda s, p: s.tm(p)))
            case TpSplit(cases):
                return TpSplit(tuple((self.cof(c), self.tp(p)) for c, p in cases))
        raise TypeError(f"not a type: {t!r}")

    # -- terms ----------------------------------------------------------------

    def tm(self, t: Tm) -> Tm:
        if self._is_identity():
            return t
        match t:
            case Var(name):
                return self.tm_map.get(name, t)
            case Lam(x, body):
                x2, s2 = self._under_tm(x, body)
                return Lam(x2, s2.tm(body))
            case App(fn, arg):
                return App(self.tm(fn), self.tm(arg))
            case Pair(a, b):
                return Pair(self.tm(a), self.tm(b))
            case Fst(p):
                return Fst(self.tm(p))
            case Snd(p):
                return Snd(self.tm(p))
            case TrueTm() | FalseTm() | BaseTm():
                return t
            case If(x, motive, scrut, t1, t2):
                x2, s2 = self._under_tm(x, motive)
                return If(x2, s2.tp(motive), self.tm(scrut), self.tm(t1), self.tm(t2))
            case Code(ty):
                return Code(self.tp(ty))
            case PLam(i, body):
                i2, s2 = self._under_i(i, body)
                return PLam(i2, s2.tm(body))
            case PApp(fn, arg):
                return PApp(self.tm(fn), self.ie(arg))
            case HComp(ty, src, dst, phi, i, tube):
                i2, s2 = self._under_i(i, tube)
                return HComp(self.tp(ty), self.ie(src), self.ie(dst),
                             self.cof(phi), i2, s2.tm(tube))
            case Coe(i, ty, src, dst, tm):
                i2, s2 = self._under_i(i, ty)
                return Coe(i2, s2.tp(ty), self.ie(src), self.ie(dst), self.tm(tm))
            case GlueIntro(phi, base, part):
                return GlueIntro(self.cof(phi), self.tm(base), self.tm(part))
            case Unglue(tm):
                return Unglue(self.tm(tm))
            case Loop(arg):
                return Loop(self.ie(arg))
            case S1Elim(x, motive, scrut, b, lv, l):
                x2, s2 = self._under_tm(x, motive)
                lv2, s3 = self._under_i(lv, l)
                return S1Elim(x2, s2.tp(motive), self.tm(scrut), self.tm(b),
                              lv2, s3.tm(l))
            case CaseSplit(cases):
                return CaseSplit(tuple((self.cof(c), self.tm(p)) for c, p in cases))
        raise TypeError(f"not a term: {t!r}")


def subst_tm(t: Tm, x: Name, u: Tm) -> Tm:
    return RawSubst({x: u}, {}).tm(t)

def subst_tp(t: Tp, x: Name, u: Tm) -> Tp:
    return RawSubst({x: u}, {}).tp(t)

def subst_i_tm(t: Tm, i: Name, r: IExpr) -> Tm:
    return RawSubst({}, {i: r}).tm(t)

def subst_i_tp(t: Tp, i: Name, r: IExpr) -> Tp:
    return RawSubst({}, {i: r}).tp(t)

def isubst_tm_par(t: Tm, sub: dict[Name, IExpr]) -> Tm:
    return RawSubst({}, sub).tm(t)

def isubst_tp_par(t: Tp, sub: dict[Name, IExpr]) -> Tp:
    return RawSubst({}, sub).tp(t)


# ---------------------------------------------------------------------------
# Alpha equality


def _branch_signature(branch: Branch, env: dict[Name, object]):
    def mark(e: IExpr):
        if isinstance(e, IVar):
            return env.get(e.name, ("free", e.name))
        return e
    return frozenset(frozenset(mark(e) for e in cls) for cls in branch.classes)


def alpha_eq(a, b) -> bool:
    """Equality up to consistent renaming of bound names.

    Interval and cofibration leaves are compared syntactically (no lattice
    reasoning), except that inside a split case the merged variables of the
    case branch are interchangeable with their representative.
    """
    counter = itertools.count()

    def ie_eq(x: IExpr, y: IExpr, envl, envr, classes) -> bool:
        def mark(e, env):
            if isinstance(e, IVar):
                return env.get(e.name, ("free", e.name))
            return e
        ml, mr = mark(x, envl), mark(y, envr)
        if ml == mr:
            return True
        return any(ml in cls and mr in cls for cls in classes)

    def cof_eq_syn(x: Cof, y: Cof, envl, envr, classes) -> bool:
        if type(x) is not type(y):
            return False
        if isinstance(x, Eq):
            return (ie_eq(x.lhs, y.lhs, envl, envr, classes)
                    and ie_eq(x.rhs, y.rhs, envl, envr, classes))
        if len(x.parts) != len(y.parts):
            return False
        return all(cof_eq_syn(p, q, envl, envr, classes) for p, q in zip(x.parts, y.parts))

    def split_eq(x: Split, y: Split, envl, envr, classes, payload_eq) -> bool:
        if len(x.cases) != len(y.cases):
            return False
        rcases = {_branch_signature(c.branch, envr): c for c in y.cases}
        if len(rcases) != len(y.cases):
            return False
        for cl in x.cases:
            sig = _branch_signature(cl.branch, envl)
            cr = rcases.get(sig)
            if cr is None:
                return False
            inner = classes + tuple(sig)
            if not payload_eq(cl.payload, cr.payload, envl, envr, inner):
                return False
        return True

    def go(x, y, envl, envr, classes) -> bool:
        if type(x) is not type(y):
            return False
        match x:
            case Var(n):
                return envl.get(n, ("free", n)) == envr.get(y.name, ("free", y.name))
            case IExpr():
                return ie_eq(x, y, envl, envr, classes)
            case Cof():
                return cof_eq_syn(x, y, envl, envr, classes)
            case Split(_):
                return split_eq(x, y, envl, envr, classes, go)
            case CaseSplit(cs) | TpSplit(cs):
                if len(cs) != len(y.cases):
                    return False
                return all(
                    cof_eq_syn(c1, c2, envl, envr, classes) and go(p1, p2, envl, envr, classes)
                    for (c1, p1), (c2, p2) in zip(cs, y.cases)
                )
            case S1Elim(xv, motive, scrut, on_base, lv, on_loop):
                # two binders with disjoint scopes
                t1, t2 = next(counter), next(counter)
                e1l, e1r = {**envl, xv: t1}, {**envr, y.var: t1}
                e2l, e2r = {**envl, lv: t2}, {**envr, y.lvar: t2}
                return (go(motive, y.motive, e1l, e1r, classes)
                        and go(scrut, y.scrut, envl, envr, classes)
                        and go(on_base, y.on_base, envl, envr, classes)
                        and go(on_loop, y.on_loop, e2l, e2r, classes))
            case _ if isinstance(x, (Tm, Tp)):
                binders = _BINDERS.get(type(x), ())
                fl, fr = vars(x), vars(y)
                el, er = dict(envl), dict(envr)
                for field in binders:
                    tag = next(counter)
                    el[fl[field]] = tag
                    er[fr[field]] = tag
                for field, vl in fl.items():
                    vr = fr[field]
                    if field in binders:
                        continue
                    if isinstance(vl, (Tm, Tp, Split, IExpr, Cof)):
                        scoped = field in _SCOPED.get(type(x), ())
                        if not go(vl, vr, el if scoped else envl, er if scoped else envr, classes):
                            return False
                    elif isinstance(vl, tuple):
                        if not go_tuple(vl, vr, envl, envr, classes):
                            return False
                    elif vl != vr:
                        return False
                return True
            case _:
                return x == y

    def go_tuple(xs, ys, envl, envr, classes) -> bool:
        if len(xs) != len(ys):
            return False
        for p, q in zip(xs, ys):
            if isinstance(p, tuple):
                if not go_tuple(p, q, envl, envr, classes):
                    return False
            elif isinstance(p, (Tm, Tp, Split, IExpr, Cof)):
                if not go(p, q, envl, envr, classes):
                    return False
            elif p != q:
                return False
        return True

    return go(a, b, {}, {}, ())


# which dataclass fields are binders, and which fields they scope over
_BINDERS: dict[type, tuple[str, ...]] = {
    Pi: ("var",), Sigma: ("var",), Path: ("var",), Lam: ("var",),
    If: ("var",), PLam: ("var",), HComp: ("var",), Coe: ("var",),
    S1Elim: ("var", "lvar"),
}
_SCOPED: dict[type, tuple[str, ...]] = {
    Pi: ("cod",), Sigma: ("cod",), Path: ("ty",), Lam: ("body",),
    If: ("motive",), PLam: ("body",), HComp: ("tube",), Coe: ("ty",),
    S1Elim: ("motive", "on_loop"),
}
