"""Concrete syntax: parsing and printing of declarations, terms, and forms.

The grammar is documented in docs/format.md.  Parsing is scope-checked:
every identifier must be bound by the declaration's context or an enclosing
binder, and split payloads are checked in their contracted scope.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import nf as N
from . import syntax as S
from .cof import (
    BOT,
    Branch,
    Cof,
    Eq,
    IExpr,
    IVar,
    Join,
    Meet,
    ONE,
    TOP,
    ZERO,
    dnf,
    forall_elim,
)
from .sexp import Node, read_all, write

KEYWORDS = {
    "0", "1", "top", "bot", "=", "and", "or", "forall",
    "pi", "sigma", "bool", "wbool", "s1", "univ", "el", "path",
    "glue-tp", "tp-split", "up-tp",
    "lam", "app", "pair", "fst", "snd", "true", "false", "if", "code",
    "plam", "papp", "hcomp", "coe", "glue", "unglue", "base", "loop",
    "s1-elim", "case",
    "star", "up", "split", "hcomp-val", "hcomp-stuck", "coe-stuck",
    "ctx", "tm", "dim", "cof", "def", "nf", "assert-eq-nf", "assert-cof", "hyps",
}


# ---------------------------------------------------------------------------
# Declarations


@dataclass(frozen=True)
class DefDecl:
    name: str
    ctx: S.Ctx
    ty: S.Tp
    tm: S.Tm


@dataclass(frozen=True)
class NfDecl:
    name: str
    ctx: S.Ctx
    ty: S.Tp
    term: "N.Nf | S.Split"   # a split when the context carries cofibrations


@dataclass(frozen=True)
class AssertEqNf:
    ctx: S.Ctx
    ty: S.Tp
    lhs: "N.Nf | S.Split"
    rhs: "N.Nf | S.Split"


@dataclass(frozen=True)
class AssertCof:
    hyps: tuple[Cof, ...]
    goal: Cof


Decl = DefDecl | NfDecl | AssertEqNf | AssertCof


# ---------------------------------------------------------------------------
# Scopes


@dataclass(frozen=True)
class Scope:
    tms: frozenset[str] = frozenset()
    ivs: frozenset[str] = frozenset()

    def bind_tm(self, x: str) -> "Scope":
        return Scope(self.tms | {x}, self.ivs)

    def bind_i(self, x: str) -> "Scope":
        return Scope(self.tms, self.ivs | {x})

    def contract(self, branch: Branch) -> "Scope":
        gone = set(branch.subst_map())
        return Scope(self.tms, frozenset(v for v in self.ivs if v not in gone))


def _ident(node: Node, what: str) -> str:
    if not node.is_atom:
        raise node.err(f"expected {what}")
    name = node.atom
    if name in KEYWORDS or name.startswith("?"):
        raise node.err(f"reserved word used as {what}: {name}")
    return name


def _need(node: Node, n: int, form: str) -> list[Node]:
    if node.is_atom or len(node.items) != n:
        raise node.err(f"malformed {form}")
    return node.items


# ---------------------------------------------------------------------------
# Interval expressions and cofibrations


def parse_iexpr(node: Node, sc: Scope | None) -> IExpr:
    if not node.is_atom:
        raise node.err("not an interval expression")
    if node.atom == "0":
        return ZERO
    if node.atom == "1":
        return ONE
    name = node.atom
    if name in KEYWORDS or name.startswith("?") or name.isdigit():
        raise node.err("not an interval expression")
    if sc is not None and name not in sc.ivs:
        raise node.err(f"unbound interval variable: {name}")
    return IVar(name)


def parse_cof(node: Node, sc: Scope | None) -> Cof:
    if node.is_atom:
        if node.atom == "top":
            return TOP
        if node.atom == "bot":
            return BOT
        raise node.err("not a cofibration")
    match node.head():
        case "=":
            _, l, r = _need(node, 3, "(= r s)")
            return Eq(parse_iexpr(l, sc), parse_iexpr(r, sc))
        case "and":
            return Meet(tuple(parse_cof(p, sc) for p in node.items[1:]))
        case "or":
            return Join(tuple(parse_cof(p, sc) for p in node.items[1:]))
        case "forall":
            _, v, body = _need(node, 3, "(forall i phi)")
            i = _ident(v, "interval variable")
            inner = parse_cof(body, sc.bind_i(i) if sc is not None else None)
            return forall_elim(i, inner)
        case _:
            raise node.err("not a cofibration")


# ---------------------------------------------------------------------------
# Raw types and terms


def _parse_binder(node: Node, what: str) -> tuple[str, Node]:
    items = _need(node, 2, what)
    return _ident(items[0], "binder"), items[1]


def _is_binder_pair(node: Node) -> bool:
    return (not node.is_atom and len(node.items) == 2
            and node.items[0].is_atom and node.items[0].atom not in KEYWORDS)


def parse_tp(node: Node, sc: Scope) -> S.Tp:
    if node.is_atom:
        match node.atom:
            case "bool":
                return S.BOOL
            case "wbool":
                return S.WBOOL
            case "s1":
                return S.CIRCLE
            case "univ":
                return S.UNIV
        raise node.err(f"not a type: {node.atom}")
    match node.head():
        case "pi" | "sigma" as h:
            _, b, cod = _need(node, 3, f"({h} (x A) B)")
            x, domn = _parse_binder(b, "binder pair")
            ctor = S.Pi if h == "pi" else S.Sigma
            return ctor(x, parse_tp(domn, sc), parse_tp(cod, sc.bind_tm(x)))
        case "el":
            _, c = _need(node, 2, "(el M)")
            return S.El(parse_tm(c, sc))
        case "path":
            _, a, l, r = _need(node, 4, "(path (i A) t s) or (path A t s)")
            if _is_binder_pair(a):
                i, tyn = _parse_binder(a, "path binder")
                ty = parse_tp(tyn, sc.bind_i(i))
            else:
                i, ty = "_", parse_tp(a, sc)
            return S.Path(i, ty, parse_tm(l, sc), parse_tm(r, sc))
        case "glue-tp":
            _, phin, basen, partn, eqn = _need(node, 5, "(glue-tp phi B A-split e-split)")
            phi = parse_cof(phin, sc)
            return S.GlueTp(phi, parse_tp(basen, sc),
                            parse_split(partn, phi, sc, parse_tp),
                            parse_split(eqn, phi, sc, parse_tm))
        case "tp-split":
            cases = tuple((parse_cof(c.items[0], sc), parse_tp(c.items[1], sc))
                          for c in _case_nodes(node))
            return S.TpSplit(cases)
        case _:
            raise node.err("not a type")


def _case_nodes(node: Node) -> list[Node]:
    out = []
    for c in node.items[1:]:
        if c.is_atom or len(c.items) != 2:
            raise c.err("expected a (cofibration payload) clause")
        out.append(c)
    return out


def parse_tm(node: Node, sc: Scope) -> S.Tm:
    if node.is_atom:
        match node.atom:
            case "true":
                return S.TRUE
            case "false":
                return S.FALSE
            case "base":
                return S.BASE
        name = _ident(node, "variable")
        if name not in sc.tms:
            raise node.err(f"unbound variable: {name}")
        return S.Var(name)
    match node.head():
        case "lam":
            _, v, body = _need(node, 3, "(lam x t)")
            x = _ident(v, "binder")
            return S.Lam(x, parse_tm(body, sc.bind_tm(x)))
        case "app":
            _, f, a = _need(node, 3, "(app f a)")
            return S.App(parse_tm(f, sc), parse_tm(a, sc))
        case "pair":
            _, a, b = _need(node, 3, "(pair a b)")
            return S.Pair(parse_tm(a, sc), parse_tm(b, sc))
        case "fst":
            _, p = _need(node, 2, "(fst p)")
            return S.Fst(parse_tm(p, sc))
        case "snd":
            _, p = _need(node, 2, "(snd p)")
            return S.Snd(parse_tm(p, sc))
        case "if":
            _, mb, b, t, f = _need(node, 5, "(if (x P) b t f)")
            x, motiven = _parse_binder(mb, "motive binder")
            motive = parse_tp(motiven, sc.bind_tm(x))
            return S.If(x, motive, parse_tm(b, sc), parse_tm(t, sc), parse_tm(f, sc))
        case "code":
            _, a = _need(node, 2, "(code A)")
            return S.Code(parse_tp(a, sc))
        case "plam":
            _, v, body = _need(node, 3, "(plam i t)")
            i = _ident(v, "interval binder")
            return S.PLam(i, parse_tm(body, sc.bind_i(i)))
        case "papp":
            _, p, r = _need(node, 3, "(papp p r)")
            return S.PApp(parse_tm(p, sc), parse_iexpr(r, sc))
        case "hcomp":
            _, tyn, rn, sn, phin, tuben = _need(node, 6, "(hcomp A r s phi (i t))")
            i, tube_body = _parse_binder(tuben, "tube binder")
            return S.HComp(parse_tp(tyn, sc), parse_iexpr(rn, sc), parse_iexpr(sn, sc),
                           parse_cof(phin, sc), i, parse_tm(tube_body, sc.bind_i(i)))
        case "coe":
            _, tyb, rn, sn, tn = _need(node, 5, "(coe (i A) r s t)")
            i, tyn = _parse_binder(tyb, "line binder")
            return S.Coe(i, parse_tp(tyn, sc.bind_i(i)), parse_iexpr(rn, sc),
                         parse_iexpr(sn, sc), parse_tm(tn, sc))
        case "glue":
            _, phin, bn, an = _need(node, 4, "(glue phi b a)")
            return S.GlueIntro(parse_cof(phin, sc), parse_tm(bn, sc), parse_tm(an, sc))
        case "unglue":
            _, g = _need(node, 2, "(unglue g)")
            return S.Unglue(parse_tm(g, sc))
        case "loop":
            _, r = _need(node, 2, "(loop r)")
            return S.Loop(parse_iexpr(r, sc))
        case "s1-elim":
            _, mb, t, b, lb = _need(node, 5, "(s1-elim (x P) t b (i l))")
            x, motiven = _parse_binder(mb, "motive binder")
            lv, ln = _parse_binder(lb, "loop binder")
            return S.S1Elim(x, parse_tp(motiven, sc.bind_tm(x)), parse_tm(t, sc),
                            parse_tm(b, sc), lv, parse_tm(ln, sc.bind_i(lv)))
        case "case":
            cases = tuple((parse_cof(c.items[0], sc), parse_tm(c.items[1], sc))
                          for c in _case_nodes(node))
            return S.CaseSplit(cases)
        case _:
            raise node.err("not a term")


# ---------------------------------------------------------------------------
# Splits


def parse_split(node: Node, phi: Cof | None, sc: Scope, parse_payload) -> S.Split:
    """Parse `(split (psi X) ...)`.

    Each clause cofibration must canonicalize to a single conjunctive
    branch; its payload is parsed in the contracted scope.  Whether the
    clauses decompose the governing cofibration is the checker's concern
    (reported as wrong-shape), not a parse error.
    """
    if node.is_atom or node.head() != "split":
        raise node.err("expected (split (phi X) ...)")
    cases: list[S.SplitCase] = []
    for c in _case_nodes(node):
        psi = parse_cof(c.items[0], sc)
        branches = dnf(psi)
        if len(branches) != 1:
            raise c.items[0].err("split clause must be a single conjunctive branch")
        branch = branches[0]
        payload = parse_payload(c.items[1], sc.contract(branch))
        cases.append(S.SplitCase(branch, payload))
    seen: set[Branch] = set()
    for case in cases:
        if case.branch in seen:
            raise node.err("duplicate split clause")
        seen.add(case.branch)
    return S.Split.of_cases(cases)


# ---------------------------------------------------------------------------
# Normal and neutral forms


def parse_netp(node: Node, sc: Scope) -> N.NeTp:
    if node.is_atom or node.head() != "el":
        raise node.err("expected a neutral type (el E)")
    _, c = _need(node, 2, "(el E)")
    return N.NEl(parse_ne(c, sc))


def parse_nftp(node: Node, sc: Scope) -> N.NfTp:
    if node.is_atom:
        match node.atom:
            case "bool":
                return N.T_BOOL
            case "wbool":
                return N.T_WBOOL
            case "s1":
                return N.T_S1
            case "univ":
                return N.T_U
        raise node.err(f"not a normal type: {node.atom}")
    match node.head():
        case "pi" | "sigma" as h:
            _, b, cod = _need(node, 3, f"({h} (x A) B)")
            x, domn = _parse_binder(b, "binder pair")
            ctor = N.TPi if h == "pi" else N.TSigma
            return ctor(x, parse_nftp(domn, sc), parse_nftp(cod, sc.bind_tm(x)))
        case "path":
            _, a, l, r = _need(node, 4, "(path (i A) t s) or (path A t s)")
            if _is_binder_pair(a):
                i, tyn = _parse_binder(a, "path binder")
                ty = parse_nftp(tyn, sc.bind_i(i))
            else:
                i, ty = "_", parse_nftp(a, sc)
            return N.TPath(i, ty, parse_nf(l, sc), parse_nf(r, sc))
        case "glue-tp":
            _, phin, basen, partn, eqn = _need(node, 5, "(glue-tp phi B A-split e-split)")
            phi = parse_cof(phin, sc)
            # equivalence witnesses are opaque raw terms, never inspected
            return N.TGlue(phi, parse_nftp(basen, sc),
                           parse_split(partn, phi, sc, parse_nftp),
                           parse_split(eqn, phi, sc, parse_tm))
        case "up-tp":
            _, nen, bn = _need(node, 3, "(up-tp (el E) backup)")
            netp = parse_netp(nen, sc)
            return N.TUp(netp, parse_split(bn, None, sc, parse_nftp))
        case "el":
            raise node.err("a neutral type is not a normal type; stabilize it with (up-tp ...)")
        case _:
            raise node.err("not a normal type")


def parse_ne(node: Node, sc: Scope) -> N.Ne:
    if node.is_atom:
        name = _ident(node, "variable")
        if name not in sc.tms:
            raise node.err(f"unbound variable: {name}")
        return N.NVar(name)
    match node.head():
        case "app":
            _, f, a = _need(node, 3, "(app E NF)")
            return N.NApp(parse_ne(f, sc), parse_nf(a, sc))
        case "fst":
            _, p = _need(node, 2, "(fst E)")
            return N.NFst(parse_ne(p, sc))
        case "snd":
            _, p = _need(node, 2, "(snd E)")
            return N.NSnd(parse_ne(p, sc))
        case "if":
            _, mb, b, t, f = _need(node, 5, "(if (x P) E NF NF)")
            x, motiven = _parse_binder(mb, "motive binder")
            return N.NIf(x, parse_nftp(motiven, sc.bind_tm(x)), parse_ne(b, sc),
                         parse_nf(t, sc), parse_nf(f, sc))
        case "papp":
            _, p, r = _need(node, 3, "(papp E r)")
            return N.NPApp(parse_ne(p, sc), parse_iexpr(r, sc))
        case "unglue":
            _, phin, g = _need(node, 3, "(unglue phi E)")
            return N.NUnglue(parse_cof(phin, sc), parse_ne(g, sc))
        case "s1-elim":
            _, mb, t, b, lb = _need(node, 5, "(s1-elim (x P) E NF (i NF))")
            x, motiven = _parse_binder(mb, "motive binder")
            lv, ln = _parse_binder(lb, "loop binder")
            return N.NS1Elim(x, parse_nftp(motiven, sc.bind_tm(x)), parse_ne(t, sc),
                             parse_nf(b, sc), lv, parse_nf(ln, sc.bind_i(lv)))
        case "star":
            _, phin = _need(node, 2, "(star phi)")
            return N.NStar(parse_cof(phin, sc))
        case _:
            raise node.err("not a neutral form")


def parse_nf(node: Node, sc: Scope) -> N.Nf:
    if node.is_atom:
        match node.atom:
            case "true":
                return N.NF_TRUE
            case "false":
                return N.NF_FALSE
            case "base":
                return N.NF_BASE
        if node.atom in sc.tms:
            raise node.err("a neutral must be stabilized: write (up TAG NE BACKUP)")
        raise node.err(f"not a normal form: {node.atom}")
    match node.head():
        case "lam":
            _, v, body = _need(node, 3, "(lam x NF)")
            x = _ident(v, "binder")
            return N.NLam(x, parse_nf(body, sc.bind_tm(x)))
        case "pair":
            _, a, b = _need(node, 3, "(pair NF NF)")
            return N.NPair(parse_nf(a, sc), parse_nf(b, sc))
        case "code":
            _, a = _need(node, 2, "(code NFTP)")
            return N.NCode(parse_nftp(a, sc))
        case "plam":
            _, v, body = _need(node, 3, "(plam i NF)")
            i = _ident(v, "interval binder")
            return N.NPLam(i, parse_nf(body, sc.bind_i(i)))
        case "glue":
            _, phin, bn, an = _need(node, 4, "(glue phi NF SPLIT)")
            phi = parse_cof(phin, sc)
            return N.NGlueIntro(phi, parse_nf(bn, sc), parse_split(an, phi, sc, parse_nf))
        case "loop":
            _, r = _need(node, 2, "(loop r)")
            return N.NLoop(parse_iexpr(r, sc))
        case "hcomp-val":
            _, kindn, rn, sn, phin, tuben = _need(node, 6, "(hcomp-val KIND r s phi (i SPLIT))")
            if not (kindn.is_atom and kindn.atom in (N.KIND_WBOOL, N.KIND_S1)):
                raise kindn.err("hcomp-val kind must be wbool or s1")
            i, tuben2, phi, tube = _parse_tube(tuben, rn, phin, sc)
            return N.NHCompVal(kindn.atom, parse_iexpr(rn, sc), parse_iexpr(sn, sc),
                               phi, i, tube)
        case "hcomp-stuck":
            _, tyn, rn, sn, phin, tuben, bn = _need(node, 7,
                                                    "(hcomp-stuck NETP r s phi (i SPLIT) BACKUP)")
            ty = parse_netp(tyn, sc)
            i, tuben2, phi, tube = _parse_tube(tuben, rn, phin, sc)
            return N.NHCompStuck(ty, parse_iexpr(rn, sc), parse_iexpr(sn, sc), phi, i,
                                 tube, parse_split(bn, None, sc, parse_nf))
        case "coe-stuck":
            _, tyb, rn, sn, tn, bn = _need(node, 6, "(coe-stuck (i NETP) r s NF BACKUP)")
            i, tyn = _parse_binder(tyb, "line binder")
            return N.NCoeStuck(i, parse_netp(tyn, sc.bind_i(i)), parse_iexpr(rn, sc),
                               parse_iexpr(sn, sc), parse_nf(tn, sc),
                               parse_split(bn, None, sc, parse_nf))
        case "up":
            _, tagn, nen, bn = _need(node, 4, "(up TAG NE BACKUP)")
            if tagn.is_atom:
                if tagn.atom not in (N.TAG_BOOL, N.TAG_WBOOL, N.TAG_S1):
                    raise tagn.err("up tag must be bool, wbool, s1, or (el E)")
                tag, tpne = tagn.atom, None
            else:
                tag, tpne = N.TAG_EL, parse_netp(tagn, sc)
            return N.NUp(tag, parse_ne(nen, sc), tpne, parse_split(bn, None, sc, parse_nf))
        case _:
            raise node.err("not a normal form")


def _parse_tube(tuben: Node, rn: Node, phin: Node, sc: Scope):
    """A tube `(i SPLIT)` over the cofibration (i = r) \\/ phi, in scope i."""
    i, body = _parse_binder(tuben, "tube binder")
    sc2 = sc.bind_i(i)
    phi = parse_cof(phin, sc)
    governing = Join((Eq(IVar(i), parse_iexpr(rn, sc)), phi))
    tube = parse_split(body, governing, sc2, parse_nf)
    return i, body, phi, tube


# ---------------------------------------------------------------------------
# Contexts and declarations


def parse_ctx(node: Node, allow_cof: bool = True) -> tuple[S.Ctx, Scope]:
    if node.is_atom or node.head() != "ctx":
        raise node.err("expected (ctx ENTRY ...)")
    ctx = S.Ctx()
    sc = Scope()
    for e in node.items[1:]:
        match e.head():
            case "tm":
                _, v, tyn = _need(e, 3, "(tm x TYPE)")
                x = _ident(v, "variable")
                if x in sc.tms or x in sc.ivs:
                    raise v.err(f"duplicate name: {x}")
                ctx = ctx.extend_tm(x, parse_tp(tyn, sc))
                sc = sc.bind_tm(x)
            case "dim":
                _, v = _need(e, 2, "(dim i)")
                x = _ident(v, "interval variable")
                if x in sc.tms or x in sc.ivs:
                    raise v.err(f"duplicate name: {x}")
                ctx = ctx.extend_i(x)
                sc = sc.bind_i(x)
            case "cof":
                if not allow_cof:
                    raise e.err("cofibration assumption not allowed here")
                _, phin = _need(e, 2, "(cof phi)")
                ctx = ctx.extend_cof(parse_cof(phin, sc))
            case _:
                raise e.err("context entry must be (tm ...), (dim ...), or (cof ...)")
    return ctx, sc


def _parse_checked_term(node: Node, ctx: S.Ctx, sc: Scope):
    """The body of an `nf` declaration: a split when the context carries
    cofibration assumptions (the up-front decomposition), else a bare nf."""
    hyps = ctx.cof_hyps()
    if hyps:
        phi = Meet(tuple(hyps))
        return parse_split(node, phi, sc, parse_nf)
    return parse_nf(node, sc)


def parse_decl(node: Node) -> Decl:
    match node.head():
        case "def":
            _, namen, ctxn, tyn, tmn = _need(node, 5, "(def NAME CTX TYPE TERM)")
            name = _ident(namen, "definition name")
            ctx, sc = parse_ctx(ctxn)
            return DefDecl(name, ctx, parse_tp(tyn, sc), parse_tm(tmn, sc))
        case "nf":
            _, namen, ctxn, tyn, nfn = _need(node, 5, "(nf NAME CTX TYPE NF)")
            name = _ident(namen, "declaration name")
            ctx, sc = parse_ctx(ctxn)
            return NfDecl(name, ctx, parse_tp(tyn, sc), _parse_checked_term(nfn, ctx, sc))
        case "assert-eq-nf":
            _, ctxn, tyn, an, bn = _need(node, 5, "(assert-eq-nf CTX TYPE NF NF)")
            ctx, sc = parse_ctx(ctxn)
            return AssertEqNf(ctx, parse_tp(tyn, sc),
                              _parse_checked_term(an, ctx, sc),
                              _parse_checked_term(bn, ctx, sc))
        case "assert-cof":
            _, hypn, goaln = _need(node, 3, "(assert-cof (hyps phi ...) phi)")
            if hypn.is_atom or hypn.head() != "hyps":
                raise hypn.err("expected (hyps phi ...)")
            hyps = tuple(parse_cof(h, None) for h in hypn.items[1:])
            return AssertCof(hyps, parse_cof(goaln, None))
        case _:
            raise node.err("unknown declaration")


def parse_file(text: str) -> list[Decl]:
    return [parse_decl(n) for n in read_all(text)]


# ---------------------------------------------------------------------------
# Printing


def print_iexpr(e: IExpr):
    if e == ZERO:
        return "0"
    if e == ONE:
        return "1"
    return e.name


def print_cof(c: Cof):
    match c:
        case Eq(l, r):
            return ["=", print_iexpr(l), print_iexpr(r)]
        case Meet(()):
            return "top"
        case Join(()):
            return "bot"
        case Meet(parts):
            return ["and"] + [print_cof(p) for p in parts]
        case Join(parts):
            return ["or"] + [print_cof(p) for p in parts]
    raise TypeError(f"not a cofibration: {c!r}")


def print_split(sp: S.Split, print_payload):
    out = ["split"]
    for case in sp.cases:
        out.append([print_cof(case.branch.to_cof()), print_payload(case.payload)])
    return out


def print_tp(t: S.Tp):
    match t:
        case S.Bool():
            return "bool"
        case S.WBool():
            return "wbool"
        case S.S1():
            return "s1"
        case S.U():
            return "univ"
        case S.Pi(x, dom, cod):
            return ["pi", [x, print_tp(dom)], print_tp(cod)]
        case S.Sigma(x, dom, cod):
            return ["sigma", [x, print_tp(dom)], print_tp(cod)]
        case S.El(c):
            return ["el", print_tm(c)]
        case S.Path(i, ty, l, r):
            from .syntax import free_ivars
            if i == "_" or i not in free_ivars(ty):
                return ["path", print_tp(ty), print_tm(l), print_tm(r)]
            return ["path", [i, print_tp(ty)], print_tm(l), print_tm(r)]
        case S.GlueTp(phi, base, partial, equiv):
            return ["glue-tp", print_cof(phi), print_tp(base),
                    print_split(partial, print_tp), print_split(equiv, print_tm)]
        case S.TpSplit(cases):
            return ["tp-split"] + [[print_cof(c), print_tp(p)] for c, p in cases]
    raise TypeError(f"not a type: {t!r}")


def print_tm(t: S.Tm):
    match t:
        case S.Var(x):
            return x
        case S.TrueTm():
            return "true"
        case S.FalseTm():
            return "false"
        case S.BaseTm():
            return "base"
        case S.Lam(x, body):
            return ["lam", x, print_tm(body)]
        case S.App(f, a):
            return ["app", print_tm(f), print_tm(a)]
        case S.Pair(a, b):
            return ["pair", print_tm(a), print_tm(b)]
        case S.Fst(p):
            return ["fst", print_tm(p)]
        case S.Snd(p):
            return ["snd", print_tm(p)]
        case S.If(x, motive, b, tt, ff):
            return ["if", [x, print_tp(motive)], print_tm(b), print_tm(tt), print_tm(ff)]
        case S.Code(ty):
            return ["code", print_tp(ty)]
        case S.PLam(i, body):
            return ["plam", i, print_tm(body)]
        case S.PApp(p, r):
            return ["papp", print_tm(p), print_iexpr(r)]
        case S.HComp(ty, r, s, phi, i, tube):
            return ["hcomp", print_tp(ty), print_iexpr(r), print_iexpr(s),
                    print_cof(phi), [i, print_tm(tube)]]
        case S.Coe(i, ty, r, s, tm):
            return ["coe", [i, print_tp(ty)], print_iexpr(r), print_iexpr(s), print_tm(tm)]
        case S.GlueIntro(phi, b, a):
            return ["glue", print_cof(phi), print_tm(b), print_tm(a)]
        case S.Unglue(g):
            return ["unglue", print_tm(g)]
        case S.Loop(r):
            return ["loop", print_iexpr(r)]
        case S.S1Elim(x, motive, t_, b, lv, l):
            return ["s1-elim", [x, print_tp(motive)], print_tm(t_), print_tm(b),
                    [lv, print_tm(l)]]
        case S.CaseSplit(cases):
            return ["case"] + [[print_cof(c), print_tm(p)] for c, p in cases]
    raise TypeError(f"not a term: {t!r}")


def print_netp(t: N.NeTp):
    match t:
        case N.NEl(c):
            return ["el", print_ne(c)]
    raise TypeError(f"not a neutral type: {t!r}")


def print_nftp(t: N.NfTp):
    match t:
        case N.TBool():
            return "bool"
        case N.TWBool():
            return "wbool"
        case N.TS1():
            return "s1"
        case N.TU():
            return "univ"
        case N.TPi(x, dom, cod):
            return ["pi", [x, print_nftp(dom)], print_nftp(cod)]
        case N.TSigma(x, dom, cod):
            return ["sigma", [x, print_nftp(dom)], print_nftp(cod)]
        case N.TPath(i, ty, l, r):
            if i == "_" or i not in N.free_ivars_nf(ty):
                return ["path", print_nftp(ty), print_nf(l), print_nf(r)]
            return ["path", [i, print_nftp(ty)], print_nf(l), print_nf(r)]
        case N.TGlue(phi, base, partial, equiv):
            return ["glue-tp", print_cof(phi), print_nftp(base),
                    print_split(partial, print_nftp), print_split(equiv, print_tm)]
        case N.TUp(ne, backup):
            return ["up-tp", print_netp(ne), print_split(backup, print_nftp)]
    raise TypeError(f"not a normal type: {t!r}")


def print_ne(e: N.Ne):
    match e:
        case N.NVar(x):
            return x
        case N.NApp(f, a):
            return ["app", print_ne(f), print_nf(a)]
        case N.NFst(p):
            return ["fst", print_ne(p)]
        case N.NSnd(p):
            return ["snd", print_ne(p)]
        case N.NIf(x, motive, b, tt, ff):
            return ["if", [x, print_nftp(motive)], print_ne(b), print_nf(tt), print_nf(ff)]
        case N.NPApp(p, r):
            return ["papp", print_ne(p), print_iexpr(r)]
        case N.NUnglue(phi, g):
            return ["unglue", print_cof(phi), print_ne(g)]
        case N.NS1Elim(x, motive, t, b, lv, l):
            return ["s1-elim", [x, print_nftp(motive)], print_ne(t), print_nf(b),
                    [lv, print_nf(l)]]
        case N.NStar(phi):
            return ["star", print_cof(phi)]
    raise TypeError(f"not a neutral: {e!r}")


def print_nf(t: N.Nf):
    match t:
        case N.NTrue():
            return "true"
        case N.NFalse():
            return "false"
        case N.NBase():
            return "base"
        case N.NLam(x, body):
            return ["lam", x, print_nf(body)]
        case N.NPair(a, b):
            return ["pair", print_nf(a), print_nf(b)]
        case N.NCode(ty):
            return ["code", print_nftp(ty)]
        case N.NPLam(i, body):
            return ["plam", i, print_nf(body)]
        case N.NGlueIntro(phi, b, part):
            return ["glue", print_cof(phi), print_nf(b), print_split(part, print_nf)]
        case N.NLoop(r):
            return ["loop", print_iexpr(r)]
        case N.NHCompVal(kind, r, s, phi, i, tube):
            return ["hcomp-val", kind, print_iexpr(r), print_iexpr(s), print_cof(phi),
                    [i, print_split(tube, print_nf)]]
        case N.NHCompStuck(ty, r, s, phi, i, tube, backup):
            return ["hcomp-stuck", print_netp(ty), print_iexpr(r), print_iexpr(s),
                    print_cof(phi), [i, print_split(tube, print_nf)],
                    print_split(backup, print_nf)]
        case N.NCoeStuck(i, ty, r, s, tm, backup):
            return ["coe-stuck", [i, print_netp(ty)], print_iexpr(r), print_iexpr(s),
                    print_nf(tm), print_split(backup, print_nf)]
        case N.NUp(tag, ne, tpne, backup):
            tagx = print_netp(tpne) if tag == N.TAG_EL else tag
            return ["up", tagx, print_ne(ne), print_split(backup, print_nf)]
    raise TypeError(f"not a normal form: {t!r}")


def print_ctx(ctx: S.Ctx):
    out = ["ctx"]
    for e in ctx.entries:
        match e:
            case S.TmBind(x, ty):
                out.append(["tm", x, print_tp(ty)])
            case S.IBind(x):
                out.append(["dim", x])
            case S.CofAssume(phi):
                out.append(["cof", print_cof(phi)])
    return out


def print_checked_term(t):
    if isinstance(t, S.Split):
        return print_split(t, print_nf)
    return print_nf(t)


def print_decl(d: Decl):
    match d:
        case DefDecl(name, ctx, ty, tm):
            return ["def", name, print_ctx(ctx), print_tp(ty), print_tm(tm)]
        case NfDecl(name, ctx, ty, term):
            return ["nf", name, print_ctx(ctx), print_tp(ty), print_checked_term(term)]
        case AssertEqNf(ctx, ty, a, b):
            return ["assert-eq-nf", print_ctx(ctx), print_tp(ty),
                    print_checked_term(a), print_checked_term(b)]
        case AssertCof(hyps, goal):
            return ["assert-cof", ["hyps"] + [print_cof(h) for h in hyps], print_cof(goal)]
    raise TypeError(f"not a declaration: {d!r}")


def decl_to_text(d: Decl) -> str:
    return write(print_decl(d))
