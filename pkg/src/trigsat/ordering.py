"""Stable, well-founded atom orderings with a four-valued comparison.

Two built-ins:

* ``weight``: compare total symbol count (per-symbol weights default to 1)
  with the usual variable-occurrence condition, tie-break by symbol
  precedence, then lexicographic recursion on arguments.  Total on ground
  atoms and isomorphic to the natural numbers (finitely many atoms below
  any atom).
* ``subterm``: within one predicate, p(s1,...,sn) <= p(t1,...,tn) iff each
  si is a subterm of ti; across equal-arity predicates the same pointwise
  rule applies with precedence breaking argument-equal ties; otherwise two
  ground atoms of equal weight compare by precedence.  Polynomial: the
  atoms strictly below an atom are bounded by the product of its subterm
  counts (times the number of predicates).

``precedence_dominant`` lifts predicate precedence above everything else,
so r(t1) > q(t2) whenever r > q, for all arguments.  That ordering is
total on ground atoms but not omega-isomorphic; the solver flags it so
termination claims are only made when they apply.

Comparisons are stable under substitution: s < t implies sθ < tθ.
INCOMPARABLE is an explicit verdict, and maximality below uses "no
strictly greater clause-mate" so partial orders need no totalization.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

from .terms import (
    Atom,
    Clause,
    Literal,
    Term,
    Var,
    is_subterm,
    var_counts,
)


class Comparison(Enum):
    LT = "lt"
    GT = "gt"
    EQ = "eq"
    INCOMPARABLE = "incomparable"


def flip(c: Comparison) -> Comparison:
    if c is Comparison.LT:
        return Comparison.GT
    if c is Comparison.GT:
        return Comparison.LT
    return c


@dataclass(frozen=True)
class OrderingSpec:
    kind: str = "weight"  # "weight" | "subterm"
    precedence: tuple[str, ...] = ()  # greatest symbol first
    weights: Mapping[str, int] = field(default_factory=dict)
    precedence_dominant: bool = False

    def __post_init__(self) -> None:
        if self.kind not in ("weight", "subterm"):
            raise ValueError(f"unknown ordering kind: {self.kind!r}")
        for name, w in dict(self.weights).items():
            if w < 1:
                raise ValueError(f"weight for {name!r} must be >= 1")

    def symbol_weight(self, name: str) -> int:
        return dict(self.weights).get(name, 1)

    def prec_key(self, name: str) -> tuple:
        # Listed symbols outrank unlisted ones; unlisted compare by name.
        if name in self.precedence:
            return (1, len(self.precedence) - self.precedence.index(name))
        return (0, name)

    def compare_symbols(self, a: str, b: str) -> Comparison:
        if a == b:
            return Comparison.EQ
        ka, kb = self.prec_key(a), self.prec_key(b)
        return Comparison.GT if ka > kb else Comparison.LT


def term_weight(o: OrderingSpec, t: Term) -> int:
    if isinstance(t, Var):
        return 1
    return o.symbol_weight(t.fn) + sum(term_weight(o, a) for a in t.args)


def atom_weight(o: OrderingSpec, a: Atom) -> int:
    return o.symbol_weight(a.pred) + sum(term_weight(o, t) for t in a.args)


def _covers(big: Counter, small: Counter) -> bool:
    return all(big[v] >= n for v, n in small.items())


def _kbo(o: OrderingSpec, s: Term, t: Term) -> Comparison:
    if s == t:
        return Comparison.EQ
    vs, vt = var_counts(s), var_counts(t)
    can_gt = _covers(vs, vt)
    can_lt = _covers(vt, vs)
    ws, wt = term_weight(o, s), term_weight(o, t)
    if ws > wt:
        return Comparison.GT if can_gt else Comparison.INCOMPARABLE
    if ws < wt:
        return Comparison.LT if can_lt else Comparison.INCOMPARABLE
    if isinstance(s, Var) or isinstance(t, Var):
        return Comparison.INCOMPARABLE
    if s.fn != t.fn:
        c = o.compare_symbols(s.fn, t.fn)
        if c is Comparison.GT:
            return Comparison.GT if can_gt else Comparison.INCOMPARABLE
        return Comparison.LT if can_lt else Comparison.INCOMPARABLE
    for sa, ta in zip(s.args, t.args):
        c = _kbo(o, sa, ta)
        if c is Comparison.EQ:
            continue
        if c is Comparison.GT:
            return Comparison.GT if can_gt else Comparison.INCOMPARABLE
        if c is Comparison.LT:
            return Comparison.LT if can_lt else Comparison.INCOMPARABLE
        return Comparison.INCOMPARABLE
    raise AssertionError("equal-argument atoms must compare EQ earlier")


def _kbo_atoms(o: OrderingSpec, a: Atom, b: Atom) -> Comparison:
    vs, vt = var_counts(a), var_counts(b)
    can_gt = _covers(vs, vt)
    can_lt = _covers(vt, vs)
    wa, wb = atom_weight(o, a), atom_weight(o, b)
    if wa > wb:
        return Comparison.GT if can_gt else Comparison.INCOMPARABLE
    if wa < wb:
        return Comparison.LT if can_lt else Comparison.INCOMPARABLE
    if a.pred != b.pred:
        c = o.compare_symbols(a.pred, b.pred)
        if c is Comparison.GT:
            return Comparison.GT if can_gt else Comparison.INCOMPARABLE
        return Comparison.LT if can_lt else Comparison.INCOMPARABLE
    for sa, ta in zip(a.args, b.args):
        c = _kbo(o, sa, ta)
        if c is Comparison.EQ:
            continue
        if c is Comparison.GT:
            return Comparison.GT if can_gt else Comparison.INCOMPARABLE
        if c is Comparison.LT:
            return Comparison.LT if can_lt else Comparison.INCOMPARABLE
        return Comparison.INCOMPARABLE
    raise AssertionError("distinct atoms with all-equal arguments")


def _pointwise_subterm(a: Atom, b: Atom) -> Optional[Comparison]:
    """Pointwise subterm product on equal-length argument tuples."""
    le_ab = all(is_subterm(sa, ta) for sa, ta in zip(a.args, b.args))
    le_ba = all(is_subterm(ta, sa) for sa, ta in zip(a.args, b.args))
    if le_ab and le_ba:
        return Comparison.EQ  # identical argument tuples
    if le_ab:
        return Comparison.LT
    if le_ba:
        return Comparison.GT
    return None


def _ground(a: Atom) -> bool:
    return not var_counts(a)


def compare_atoms(o: OrderingSpec, a: Atom, b: Atom) -> Comparison:
    if a == b:
        return Comparison.EQ
    if o.precedence_dominant and a.pred != b.pred:
        return o.compare_symbols(a.pred, b.pred)
    if o.kind == "weight":
        return _kbo_atoms(o, a, b)
    # subterm-product
    if a.pred == b.pred:
        c = _pointwise_subterm(a, b)
        if c is Comparison.EQ:
            raise AssertionError("distinct atoms with identical arguments")
        return c if c is not None else Comparison.INCOMPARABLE
    if a.arity == b.arity:
        c = _pointwise_subterm(a, b)
        if c is Comparison.EQ:
            return o.compare_symbols(a.pred, b.pred)
        if c is not None:
            return c
    if _ground(a) and _ground(b) and atom_weight(o, a) == atom_weight(o, b):
        return o.compare_symbols(a.pred, b.pred)
    return Comparison.INCOMPARABLE


def compare_literals(o: OrderingSpec, l1: Literal, l2: Literal) -> Comparison:
    """Atom comparison first; on equal atoms the negative literal is greater."""
    c = compare_atoms(o, l1.atom, l2.atom)
    if c is not Comparison.EQ:
        return c
    if l1.positive == l2.positive:
        return Comparison.EQ
    return Comparison.LT if l1.positive else Comparison.GT


def maximal_literals(o: OrderingSpec, c: Clause) -> list[Literal]:
    """Distinct literal values with no strictly greater clause-mate."""
    if c.is_empty:
        raise ValueError("empty clause has no maximal literals")
    values: dict[Literal, None] = {}
    for lit in c.literals:
        values.setdefault(lit)
    out = []
    for lit in values:
        if not any(compare_literals(o, other, lit) is Comparison.GT
                   for other in values if other != lit):
            out.append(lit)
    return out


def maximum_literal(o: OrderingSpec, c: Clause) -> Optional[Literal]:
    """The unique literal strictly greater than all others, if it exists."""
    if c.is_empty:
        raise ValueError("empty clause has no maximum literal")
    counts: Counter = Counter(c.literals)
    for lit in counts:
        if counts[lit] > 1:
            continue
        if all(compare_literals(o, lit, other) is Comparison.GT
               for other in counts if other != lit):
            return lit
    return None


def compare_clauses(o: OrderingSpec, c1: Clause, c2: Clause) -> Comparison:
    """Multiset extension of the literal ordering; INCOMPARABLE propagates."""
    m1, m2 = Counter(c1.literals), Counter(c2.literals)
    only1 = list((m1 - m2).elements())
    only2 = list((m2 - m1).elements())
    if not only1 and not only2:
        return Comparison.EQ
    gt = all(any(compare_literals(o, x, y) is Comparison.GT for x in only1)
             for y in only2)
    lt = all(any(compare_literals(o, y, x) is Comparison.GT for y in only2)
             for x in only1)
    if gt and not lt:
        return Comparison.GT
    if lt and not gt:
        return Comparison.LT
    if gt and lt:  # impossible for a strict partial order; defensive
        raise AssertionError("multiset comparison claims both directions")
    return Comparison.INCOMPARABLE
