"""Interval expressions, cofibrations, and the face-lattice decision procedures.

Cofibrations are positive formulas (equations, finite meets, finite joins)
over interval expressions.  Entailment and equality are decided by putting
formulas into a canonical disjunctive normal form whose branches carry the
congruence closure of their atoms.  There is no negation anywhere in the
constructor set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


# ---------------------------------------------------------------------------
# Interval expressions


@dataclass(frozen=True)
class IExpr:
    """An interval expression: exactly an endpoint or a variable."""

    def key(self) -> tuple[int, str]:
        raise NotImplementedError


@dataclass(frozen=True)
class I0(IExpr):
    def key(self) -> tuple[int, str]:
        return (0, "")

    def __repr__(self) -> str:
        return "I0"


@dataclass(frozen=True)
class I1(IExpr):
    def key(self) -> tuple[int, str]:
        return (1, "")

    def __repr__(self) -> str:
        return "I1"


@dataclass(frozen=True)
class IVar(IExpr):
    name: str

    def key(self) -> tuple[int, str]:
        return (2, self.name)

    def __repr__(self) -> str:
        return f"IVar({self.name!r})"


ZERO = I0()
ONE = I1()


def isubst(e: IExpr, i: str, r: IExpr) -> IExpr:
    """Substitute r for the interval variable i; endpoints are closed."""
    if isinstance(e, IVar) and e.name == i:
        return r
    return e


def isubst_par(e: IExpr, sub: dict[str, IExpr]) -> IExpr:
    """Simultaneous substitution on an interval expression."""
    if isinstance(e, IVar) and e.name in sub:
        return sub[e.name]
    return e


def ivars(e: IExpr) -> set[str]:
    return {e.name} if isinstance(e, IVar) else set()


# ---------------------------------------------------------------------------
# Cofibrations


@dataclass(frozen=True)
class Cof:
    pass


@dataclass(frozen=True)
class Eq(Cof):
    lhs: IExpr
    rhs: IExpr


@dataclass(frozen=True)
class Meet(Cof):
    parts: tuple[Cof, ...]


@dataclass(frozen=True)
class Join(Cof):
    parts: tuple[Cof, ...]


TOP = Meet(())
BOT = Join(())


def meet(parts: Iterable[Cof]) -> Meet:
    return Meet(tuple(parts))


def join(parts: Iterable[Cof]) -> Join:
    return Join(tuple(parts))


def csubst(phi: Cof, i: str, r: IExpr) -> Cof:
    """Homomorphic extension of isubst; Meet/Join structure is preserved."""
    return csubst_par(phi, {i: r})


def csubst_par(phi: Cof, sub: dict[str, IExpr]) -> Cof:
    match phi:
        case Eq(lhs, rhs):
            return Eq(isubst_par(lhs, sub), isubst_par(rhs, sub))
        case Meet(parts):
            return Meet(tuple(csubst_par(p, sub) for p in parts))
        case Join(parts):
            return Join(tuple(csubst_par(p, sub) for p in parts))
    raise TypeError(f"not a cofibration: {phi!r}")


def cvars(phi: Cof) -> set[str]:
    """Interval variables occurring in a cofibration."""
    match phi:
        case Eq(lhs, rhs):
            return ivars(lhs) | ivars(rhs)
        case Meet(parts) | Join(parts):
            out: set[str] = set()
            for p in parts:
                out |= cvars(p)
            return out
    raise TypeError(f"not a cofibration: {phi!r}")


# ---------------------------------------------------------------------------
# Branches: canonical conjunctive clauses with congruence closure

Atom = tuple[IExpr, IExpr]


class _UnionFind:
    """Union-find over interval elements, ordered so the canonical
    representative of a class is always its least element (0 < 1 < names)."""

    def __init__(self) -> None:
        self.parent: dict[IExpr, IExpr] = {}

    def find(self, x: IExpr) -> IExpr:
        p = self.parent
        if x not in p:
            p[x] = x
            return x
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: IExpr, b: IExpr) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if ra.key() > rb.key():
            ra, rb = rb, ra
        self.parent[rb] = ra


@dataclass(frozen=True)
class Branch:
    """One conjunctive clause of a canonical DNF.

    `atoms` pair each class representative with every other class member,
    sides ordered, reflexive atoms absent.  `classes` is the congruence
    closure (merged classes only, each sorted).  `consistent` is False
    exactly when 0 and 1 share a class.
    """

    atoms: tuple[Atom, ...]
    classes: tuple[tuple[IExpr, ...], ...]
    consistent: bool

    def holds(self, lhs: IExpr, rhs: IExpr) -> bool:
        """Does the equation lhs = rhs hold in this branch's closure?"""
        return self.rep(lhs) == self.rep(rhs)

    def rep(self, e: IExpr) -> IExpr:
        for cls in self.classes:
            if e in cls:
                return cls[0]
        return e

    def satisfies(self, other: Branch) -> bool:
        """Every atom of `other` holds in this branch's closure."""
        return all(self.holds(a, b) for a, b in other.atoms)

    def subst_map(self) -> dict[str, IExpr]:
        """The contraction substitution: each merged variable maps to its
        class representative."""
        out: dict[str, IExpr] = {}
        for cls in self.classes:
            rep = cls[0]
            for e in cls[1:]:
                assert isinstance(e, IVar)
                out[e.name] = rep
        return out

    def to_cof(self) -> Cof:
        if not self.consistent:
            return Eq(ZERO, ONE)
        if not self.atoms:
            return TOP
        if len(self.atoms) == 1:
            a, b = self.atoms[0]
            return Eq(a, b)
        return Meet(tuple(Eq(a, b) for a, b in self.atoms))

    def sort_key(self):
        return tuple((a.key(), b.key()) for a, b in self.atoms)


def branch_of_eqs(eqs: Iterable[Atom]) -> Branch:
    """Close a set of equations into a canonical branch."""
    uf = _UnionFind()
    touched: set[IExpr] = set()
    for a, b in eqs:
        uf.union(a, b)
        touched.add(a)
        touched.add(b)
    groups: dict[IExpr, list[IExpr]] = {}
    for e in touched:
        groups.setdefault(uf.find(e), []).append(e)
    classes = tuple(
        tuple(sorted(cls, key=lambda e: e.key()))
        for root, cls in sorted(groups.items(), key=lambda kv: kv[0].key())
        if len(cls) > 1
    )
    consistent = all(not (ZERO in cls and ONE in cls) for cls in classes)
    atoms: list[Atom] = []
    for cls in classes:
        rep = cls[0]
        for e in cls[1:]:
            atoms.append((rep, e))
    return Branch(tuple(atoms), classes, consistent)


TOP_BRANCH = branch_of_eqs([])


def _merge(b: Branch, c: Branch) -> Branch:
    return branch_of_eqs(b.atoms + c.atoms)


def _raw_dnf(phi: Cof) -> Iterator[Branch]:
    match phi:
        case Eq(lhs, rhs):
            yield branch_of_eqs([(lhs, rhs)])
        case Join(parts):
            for p in parts:
                yield from _raw_dnf(p)
        case Meet(parts):
            acc = [TOP_BRANCH]
            for p in parts:
                sub = list(_raw_dnf(p))
                acc = [_merge(b, c) for b in acc for c in sub]
            yield from acc
        case _:
            raise TypeError(f"not a cofibration: {phi!r}")


def dnf(phi: Cof) -> list[Branch]:
    """Canonical disjunctive normal form.

    Inconsistent branches are dropped, duplicates and absorbed branches
    (strict refinements of another branch) removed, output sorted.
    """
    branches = [b for b in _raw_dnf(phi) if b.consistent]
    branches = sorted(set(branches), key=Branch.sort_key)
    # a branch refining another (satisfying all its atoms) is absorbed;
    # distinct canonical branches cannot mutually satisfy each other
    return [b for b in branches if not any(c != b and b.satisfies(c) for c in branches)]


def entails(hyps: list[Cof], goal: Cof) -> bool:
    """Face-lattice entailment: every consistent branch of the hypotheses
    satisfies some branch of the goal."""
    hyp_branches = dnf(Meet(tuple(hyps)))
    goal_branches = dnf(goal)
    return all(any(b.satisfies(c) for c in goal_branches) for b in hyp_branches)


def cof_eq(hyps: list[Cof], phi: Cof, psi: Cof) -> bool:
    """Extensional equality of cofibrations under hypotheses."""
    return entails(hyps + [phi], psi) and entails(hyps + [psi], phi)


def is_true(hyps: list[Cof], phi: Cof) -> bool:
    return entails(hyps, phi)


def is_false(hyps: list[Cof], phi: Cof) -> bool:
    return entails(hyps + [phi], BOT)


def forall_elim(i: str, phi: Cof) -> Cof:
    """Eliminate universal quantification of the interval variable i.

    Structural: meets and joins map through; an equation not mentioning i
    drops the quantifier, i = i is top, and any other equation touching i
    is bottom (a single point cannot cover the interval).
    """
    match phi:
        case Eq(lhs, rhs):
            li = isinstance(lhs, IVar) and lhs.name == i
            ri = isinstance(rhs, IVar) and rhs.name == i
            if li and ri:
                return TOP
            if li or ri:
                return BOT
            return phi
        case Meet(parts):
            return Meet(tuple(forall_elim(i, p) for p in parts))
        case Join(parts):
            return Join(tuple(forall_elim(i, p) for p in parts))
    raise TypeError(f"not a cofibration: {phi!r}")
