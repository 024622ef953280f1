"""Resolution and Factoring on selected literals, with redundancy deletion.

Resolution resolves a selected positive literal of one clause against a
selected negative literal of another (premises renamed apart); Factoring
merges a selected positive literal with a unifiable positive clause-mate.
A clause set is saturated when every inference conclusion is a tautology
or subsumed.  Subsumption uses multiset inclusion: C subsumes D iff some
substitution maps C onto a sub-multiset of D.

Both entry points work on the non-ground part of a problem only; ground
clauses take no part in these inferences.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .ordering import Comparison, OrderingSpec, compare_clauses
from .selection import (
    ValidationResult,
    extend_selection,
    validate_selection,
)
from .terms import (
    Clause,
    canonicalize,
    match_literal,
    rename_apart,
    unify,
    vars_of,
)


class SaturationOutcome(Enum):
    SATURATED = "saturated"
    DERIVED_BOTTOM = "bottom"
    BUDGET_EXCEEDED = "budget"
    NOT_SATURATED = "not-saturated"


@dataclass(frozen=True)
class Violation:
    kind: str  # "resolution" | "factoring"
    premises: tuple[int, ...]  # clause ids
    conclusion: Clause


@dataclass
class SaturationReport:
    outcome: SaturationOutcome
    clauses: list[Clause]
    selection: dict[int, frozenset[int]]
    counts: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)


@dataclass(frozen=True)
class InferenceBudget:
    max_clauses: int = 10_000
    timeout: float = 60.0


class InvalidSelectionError(Exception):
    def __init__(self, c: Clause, result: ValidationResult):
        self.clause = c
        self.result = result
        witness = sorted(result.witness or ())
        super().__init__(
            f"invalid selection for clause '{c}': {result.reason} "
            f"(witness positions {witness})")


def is_tautology(c: Clause) -> bool:
    pos = {l.atom for l in c.literals if l.positive}
    neg = {l.atom for l in c.literals if not l.positive}
    return bool(pos & neg)


def subsumes(c: Clause, d: Clause) -> bool:
    """True iff some substitution maps c onto a sub-multiset of d."""
    if len(c) > len(d):
        return False
    # Most constrained literals first keeps the backtracking shallow.
    order = sorted(range(len(c.literals)),
                   key=lambda i: -len(str(c.literals[i])))

    def assign(idx: int, used: frozenset[int], bindings) -> bool:
        if idx == len(order):
            return True
        lit = c.literals[order[idx]]
        for j, target in enumerate(d.literals):
            if j in used:
                continue
            nxt = match_literal(lit, target, bindings)
            if nxt is None:
                continue
            if assign(idx + 1, used | {j}, nxt):
                return True
        return False

    return assign(0, frozenset(), {})


def variant(c: Clause, d: Clause) -> bool:
    return len(c) == len(d) and subsumes(c, d) and subsumes(d, c)


def resolve(c1: Clause, pos1: int, c2: Clause, pos2: int,
            sel1: Optional[Iterable[int]] = None,
            sel2: Optional[Iterable[int]] = None) -> Optional[Clause]:
    """Resolvent of c1's positive literal at pos1 with c2's negative at pos2.

    Premises are renamed apart internally; when selections are supplied the
    positions must be selected.  Returns None when the atoms do not unify.
    """
    lit1 = c1.literals[pos1]
    if not lit1.positive:
        raise ValueError("resolution literal in the first premise must be positive")
    if sel1 is not None and pos1 not in set(sel1):
        raise ValueError("resolution literal in the first premise is not selected")
    lit2 = c2.literals[pos2]
    if lit2.positive:
        raise ValueError("resolution literal in the second premise must be negative")
    if sel2 is not None and pos2 not in set(sel2):
        raise ValueError("resolution literal in the second premise is not selected")
    c2r = rename_apart(c2, vars_of(c1))
    sigma = unify(lit1.atom, c2r.literals[pos2].atom)
    if sigma is None:
        return None
    rest = c1.without_position(pos1) + c2r.without_position(pos2)
    conclusion = Clause(tuple(sigma.apply_literal(l) for l in rest),
                        origin="resolvent")
    return canonicalize(conclusion)


def factor(c: Clause, pos: int,
           sel: Optional[Iterable[int]] = None) -> list[Clause]:
    """One factor per positive clause-mate unifiable with the literal at pos."""
    lit = c.literals[pos]
    if not lit.positive:
        raise ValueError("factoring literal must be positive")
    if sel is not None and pos not in set(sel):
        raise ValueError("factoring literal is not selected")
    out: list[Clause] = []
    for j, other in enumerate(c.literals):
        if j == pos or not other.positive:
            continue
        sigma = unify(lit.atom, other.atom)
        if sigma is None:
            continue
        kept = c.without_position(j)
        out.append(canonicalize(Clause(
            tuple(sigma.apply_literal(l) for l in kept), origin="factor")))
    return out


def _validate_all(clauses: Iterable[Clause],
                  selection: dict[int, frozenset[int]],
                  o: OrderingSpec) -> None:
    for c in clauses:
        if c.is_ground:
            raise ValueError(f"ground clause '{c}' in non-ground set")
        if c.cid not in selection:
            raise InvalidSelectionError(
                c, ValidationResult(False, None, "clause has no selection"))
        try:
            result = validate_selection(c, selection[c.cid], o)
        except ValueError as exc:  # oversized or malformed selection
            raise InvalidSelectionError(
                c, ValidationResult(False, None, str(exc))) from exc
        if not result:
            raise InvalidSelectionError(c, result)


def _inferences_between(given: Clause, given_sel: frozenset[int],
                        other: Clause, other_sel: frozenset[int]):
    """Resolution conclusions using the given clause and one partner."""
    for p1 in sorted(given_sel):
        if given.literals[p1].positive:
            for p2 in sorted(other_sel):
                if not other.literals[p2].positive:
                    r = resolve(given, p1, other, p2)
                    if r is not None:
                        yield ("resolution", (given.cid, other.cid), r)
    if other is given:
        return  # the loop above already covered both roles
    for p2 in sorted(given_sel):
        if not given.literals[p2].positive:
            for p1 in sorted(other_sel):
                if other.literals[p1].positive:
                    r = resolve(other, p1, given, p2)
                    if r is not None:
                        yield ("resolution", (other.cid, given.cid), r)


def _pick_given(passive: list[Clause], o: OrderingSpec) -> Clause:
    # Smallest clause first under the multiset ordering, cid as tie-break.
    best = passive[0]
    for c in passive[1:]:
        cmp = compare_clauses(o, c, best)
        if cmp is Comparison.LT:
            best = c
        elif cmp in (Comparison.INCOMPARABLE, Comparison.EQ) and c.cid < best.cid:
            best = c
    return best


def saturate(ng: Iterable[Clause], sel: dict[int, frozenset[int]],
             o: OrderingSpec, budget: InferenceBudget = InferenceBudget(),
             extend: str = "error") -> SaturationReport:
    """Given-clause saturation with tautology and subsumption deletion.

    Derived clauses get a selection via `extend` (see selection module);
    in `error` mode any retained conclusion aborts with SelectionError.
    """
    inputs = list(ng)
    selection = dict(sel)
    _validate_all(inputs, selection, o)
    counts = {"resolvents": 0, "factors": 0, "kept": 0, "tautologies": 0,
              "forward_subsumed": 0, "backward_subsumed": 0}
    started = time.monotonic()

    active: list[Clause] = []
    passive: list[Clause] = list(inputs)

    def retained_count() -> int:
        return len(active) + len(passive)

    def bottom_report() -> SaturationReport:
        bott = Clause((), origin="resolvent")
        return SaturationReport(SaturationOutcome.DERIVED_BOTTOM,
                                active + passive + [bott], selection, counts)

    while passive:
        if retained_count() > budget.max_clauses:
            return SaturationReport(SaturationOutcome.BUDGET_EXCEEDED,
                                    active + passive, selection, counts)
        if time.monotonic() - started > budget.timeout:
            return SaturationReport(SaturationOutcome.BUDGET_EXCEEDED,
                                    active + passive, selection, counts)
        given = _pick_given(passive, o)
        passive = [p for p in passive if p is not given]
        if is_tautology(given):
            counts["tautologies"] += 1
            continue
        if any(subsumes(a, given) for a in active):
            counts["forward_subsumed"] += 1
            continue
        removed = [a for a in active if subsumes(given, a)]
        counts["backward_subsumed"] += len(removed)
        active = [a for a in active if a not in removed]
        kept_passive = [p for p in passive if not subsumes(given, p)]
        counts["backward_subsumed"] += len(passive) - len(kept_passive)
        passive = kept_passive
        active.append(given)
        counts["kept"] += 1

        conclusions: list[Clause] = []
        if not given.is_ground:
            # Ground clauses are retained but generate no inferences.
            given_sel = selection[given.cid]
            for other in active:
                if other is not given and other.is_ground:
                    continue
                for _, _, r in _inferences_between(given, given_sel,
                                                   other, selection[other.cid]):
                    counts["resolvents"] += 1
                    conclusions.append(r)
            for p in sorted(given_sel):
                if given.literals[p].positive:
                    for f in factor(given, p):
                        counts["factors"] += 1
                        conclusions.append(f)

        for concl in conclusions:
            if concl.is_empty:
                return bottom_report()
            if is_tautology(concl):
                counts["tautologies"] += 1
                continue
            if any(subsumes(a, concl) for a in active + passive):
                counts["forward_subsumed"] += 1
                continue
            if not concl.is_ground:
                selection[concl.cid] = extend_selection(concl, o, extend)
            passive.append(concl)

    return SaturationReport(SaturationOutcome.SATURATED, list(active),
                            selection, counts)


def check_saturated(ng: Iterable[Clause], sel: dict[int, frozenset[int]],
                    o: OrderingSpec) -> SaturationReport:
    """Enumerate every inference among the given clauses and report each
    conclusion that is neither a tautology nor subsumed in the set."""
    clauses = list(ng)
    selection = dict(sel)
    _validate_all(clauses, selection, o)
    counts = {"inferences": 0}
    violations: list[Violation] = []

    def redundant(concl: Clause) -> bool:
        return is_tautology(concl) or any(subsumes(c, concl) for c in clauses)

    for c1 in clauses:
        for c2 in clauses:
            for p1 in sorted(selection[c1.cid]):
                if not c1.literals[p1].positive:
                    continue
                for p2 in sorted(selection[c2.cid]):
                    if c2.literals[p2].positive:
                        continue
                    r = resolve(c1, p1, c2, p2)
                    if r is None:
                        continue
                    counts["inferences"] += 1
                    if not redundant(r):
                        violations.append(
                            Violation("resolution", (c1.cid, c2.cid), r))
    for c in clauses:
        for p in sorted(selection[c.cid]):
            if not c.literals[p].positive:
                continue
            for f in factor(c, p):
                counts["inferences"] += 1
                if not redundant(f):
                    violations.append(Violation("factoring", (c.cid,), f))

    outcome = (SaturationOutcome.SATURATED if not violations
               else SaturationOutcome.NOT_SATURATED)
    return SaturationReport(outcome, clauses, selection, counts, violations)
