"""Brute-force semantic oracle for cofibration entailment.

Kept deliberately independent of the solver in `cof`: truth of a formula
under a substitution is decided by direct recursion here, never through
`dnf` or `entails`.  Any interval substitution factors through one into the
same variable set up to renaming, so enumerating all maps into
{0, 1} ∪ variables is complete.
"""

from __future__ import annotations

import itertools

from .cof import BOT, Cof, Eq, IExpr, IVar, Join, Meet, ONE, ZERO, cvars

ORACLE_MAX_VARS = 4


def _apply(e: IExpr, sigma: dict[str, IExpr]) -> IExpr:
    if isinstance(e, IVar):
        return sigma.get(e.name, e)
    return e


def _literally_true(phi: Cof, sigma: dict[str, IExpr]) -> bool:
    match phi:
        case Eq(lhs, rhs):
            return _apply(lhs, sigma) == _apply(rhs, sigma)
        case Meet(parts):
            return all(_literally_true(p, sigma) for p in parts)
        case Join(parts):
            return any(_literally_true(p, sigma) for p in parts)
    raise TypeError(f"not a cofibration: {phi!r}")


def oracle_entails(hyps: list[Cof], goal: Cof, variables: list[str] | None = None) -> bool:
    """Entailment by exhaustive substitution enumeration.

    Refuses more than ORACLE_MAX_VARS variables; (n+2)^n substitutions are
    checked.  `variables` overrides the free-variable set, which matters
    when the goal quantifies over a variable absent from the hypotheses.
    """
    if variables is None:
        names: set[str] = cvars(goal)
        for h in hyps:
            names |= cvars(h)
        variables = sorted(names)
    if len(variables) > ORACLE_MAX_VARS:
        raise ValueError(f"oracle refuses {len(variables)} variables (max {ORACLE_MAX_VARS})")
    hyp = Meet(tuple(hyps))
    targets: list[IExpr] = [ZERO, ONE] + [IVar(v) for v in variables]
    for choice in itertools.product(targets, repeat=len(variables)):
        sigma = dict(zip(variables, choice))
        if _literally_true(hyp, sigma) and not _literally_true(goal, sigma):
            return False
    return True


def oracle_is_false(phi: Cof, variables: list[str] | None = None) -> bool:
    return oracle_entails([phi], BOT, variables)
