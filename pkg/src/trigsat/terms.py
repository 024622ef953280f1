"""First-order syntax: terms, atoms, literals, clauses, substitutions.

Clauses are multisets of literals (duplicates are preserved); equality and
hashing go through a canonical multiset key, while the stored literal order
is kept for display.  All values are immutable after construction and safe
to share; every operation here is a pure function.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple["Term", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.fn
        return f"{self.fn}({', '.join(str(a) for a in self.args)})"


Term = Union[Var, App]


def const(name: str) -> App:
    return App(name, ())


def fn(name: str, *args: Term) -> App:
    return App(name, tuple(args))


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"~{self.atom}"


def term_key(t: Term) -> tuple:
    """Total structural key; used for deterministic tie-breaking only."""
    if isinstance(t, Var):
        return (0, t.name)
    return (1, t.fn, tuple(term_key(a) for a in t.args))


def atom_key(a: Atom) -> tuple:
    return (a.pred, tuple(term_key(t) for t in a.args))


def literal_key(lit: Literal) -> tuple:
    return (atom_key(lit.atom), 0 if lit.positive else 1)


_clause_ids = itertools.count()


@dataclass(frozen=True, eq=False)
class Clause:
    """A multiset of literals with a stable identifier and an origin tag.

    Origin is one of: input-ground, input-nonground, resolvent, factor,
    instance, learned.  Two clauses are equal iff their literal multisets
    are equal; `cid` and `origin` never participate in comparison.
    """

    literals: tuple[Literal, ...]
    origin: str = "input-ground"
    cid: int = field(default_factory=lambda: next(_clause_ids))

    @cached_property
    def key(self) -> tuple:
        return tuple(sorted(literal_key(l) for l in self.literals))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Clause) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @cached_property
    def is_ground(self) -> bool:
        return not vars_of(self)

    def atoms(self) -> list[Atom]:
        seen: dict[Atom, None] = {}
        for lit in self.literals:
            seen.setdefault(lit.atom)
        return list(seen)

    def without_position(self, pos: int) -> tuple[Literal, ...]:
        return self.literals[:pos] + self.literals[pos + 1:]

    def __str__(self) -> str:
        if not self.literals:
            return "⊥"
        return " | ".join(str(l) for l in self.literals)


def clause(literals: Iterable[Literal], origin: Optional[str] = None) -> Clause:
    lits = tuple(literals)
    if origin is None:
        origin = "input-ground" if all(
            not _term_tuple_vars(l.atom.args) for l in lits) else "input-nonground"
    return Clause(lits, origin)


def _term_tuple_vars(args: tuple[Term, ...]) -> set[Var]:
    out: set[Var] = set()
    stack = list(args)
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            out.add(t)
        else:
            stack.extend(t.args)
    return out


def vars_of(obj: Union[Term, Atom, Literal, Clause, Iterable]) -> set[Var]:
    """Variables occurring in a term, atom, literal, clause, or collection."""
    if isinstance(obj, Var):
        return {obj}
    if isinstance(obj, App):
        return _term_tuple_vars(obj.args)
    if isinstance(obj, Atom):
        return _term_tuple_vars(obj.args)
    if isinstance(obj, Literal):
        return _term_tuple_vars(obj.atom.args)
    if isinstance(obj, Clause):
        out: set[Var] = set()
        for lit in obj.literals:
            out |= _term_tuple_vars(lit.atom.args)
        return out
    out = set()
    for item in obj:
        out |= vars_of(item)
    return out


def var_counts(obj: Union[Term, Atom]) -> Counter:
    """Occurrence counts per variable (multiset of variable occurrences)."""
    counts: Counter = Counter()
    stack: list[Term] = list(obj.args) if isinstance(obj, (App, Atom)) else [obj]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            counts[t] += 1
        else:
            stack.extend(t.args)
    return counts


def term_depth(t: Term) -> int:
    """Depth of a variable or constant is 0; f(t...) is 1 + max child depth."""
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


def symbol_count(obj: Union[Term, Atom]) -> int:
    if isinstance(obj, Var):
        return 1
    n = 1
    for a in obj.args:
        n += symbol_count(a)
    return n


def is_subterm(s: Term, t: Term) -> bool:
    """True iff s occurs in t (every term is a subterm of itself)."""
    if s == t:
        return True
    if isinstance(t, Var):
        return False
    return any(is_subterm(s, a) for a in t.args)


class Substitution(Mapping[Var, Term]):
    """Finite map from variables to terms; X(σρ) = (Xσ)ρ for composition.

    Identity bindings are dropped on construction, so the domain never maps
    a variable to itself.
    """

    __slots__ = ("_map",)

    def __init__(self, mapping: Union[Mapping[Var, Term], Iterable[tuple[Var, Term]]] = ()):
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        self._map: dict[Var, Term] = {v: t for v, t in items if t != v}

    def __getitem__(self, v: Var) -> Term:
        return self._map[v]

    def __iter__(self) -> Iterator[Var]:
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}->{t}" for v, t in sorted(
            self._map.items(), key=lambda kv: kv[0].name))
        return "{" + inner + "}"

    def apply_term(self, t: Term) -> Term:
        if isinstance(t, Var):
            return self._map.get(t, t)
        if not t.args:
            return t
        return App(t.fn, tuple(self.apply_term(a) for a in t.args))

    def apply_atom(self, a: Atom) -> Atom:
        return Atom(a.pred, tuple(self.apply_term(t) for t in a.args))

    def apply_literal(self, lit: Literal) -> Literal:
        return Literal(self.apply_atom(lit.atom), lit.positive)

    def apply_clause(self, c: Clause, origin: Optional[str] = None) -> Clause:
        return Clause(tuple(self.apply_literal(l) for l in c.literals),
                      origin if origin is not None else c.origin)

    def __call__(self, obj):
        if isinstance(obj, (Var, App)):
            return self.apply_term(obj)
        if isinstance(obj, Atom):
            return self.apply_atom(obj)
        if isinstance(obj, Literal):
            return self.apply_literal(obj)
        if isinstance(obj, Clause):
            return self.apply_clause(obj)
        raise TypeError(f"cannot apply substitution to {type(obj).__name__}")

    def compose(self, other: "Substitution") -> "Substitution":
        out: dict[Var, Term] = {v: other.apply_term(t) for v, t in self._map.items()}
        for v, t in other._map.items():
            if v not in self._map:
                out[v] = t
        return Substitution(out)


def apply(s: Substitution, c: Clause) -> Clause:
    """Literal-wise application; multiset cardinality is preserved."""
    return s.apply_clause(c)


def _occurs(v: Var, t: Term) -> bool:
    if isinstance(t, Var):
        return v == t
    return any(_occurs(v, a) for a in t.args)


def unify_terms(pairs: Sequence[tuple[Term, Term]]) -> Optional[Substitution]:
    """Most general unifier of the given term pairs, with occurs-check.

    The result is idempotent and its domain is a subset of the variables of
    the input pairs.  Returns None when not unifiable.
    """
    subst: dict[Var, Term] = {}

    def _sub_all(t: Term) -> Term:
        if isinstance(t, Var):
            if t in subst:
                return _sub_all(subst[t])
            return t
        if not t.args:
            return t
        return App(t.fn, tuple(_sub_all(a) for a in t.args))

    stack: list[tuple[Term, Term]] = list(reversed(pairs))
    while stack:
        s, t = stack.pop()
        s, t = _sub_all(s), _sub_all(t)
        if s == t:
            continue
        if isinstance(s, Var):
            if _occurs(s, t):
                return None
            subst[s] = t
        elif isinstance(t, Var):
            if _occurs(t, s):
                return None
            subst[t] = s
        else:
            if s.fn != t.fn or len(s.args) != len(t.args):
                return None
            stack.extend(reversed(list(zip(s.args, t.args))))

    # Flatten the triangular form into an idempotent substitution.
    return Substitution({v: _sub_all(t) for v, t in subst.items()})


def unify(a: Atom, b: Atom) -> Optional[Substitution]:
    """Idempotent mgu of two atoms, or None when not unifiable."""
    if a.pred != b.pred or a.arity != b.arity:
        return None
    return unify_terms(list(zip(a.args, b.args)))


def match_terms(pairs: Sequence[tuple[Term, Term]],
                bindings: Optional[Mapping[Var, Term]] = None) -> Optional[dict[Var, Term]]:
    """One-sided matching: pattern variables bind, target stays rigid."""
    out: dict[Var, Term] = dict(bindings) if bindings else {}
    stack: list[tuple[Term, Term]] = list(reversed(pairs))
    while stack:
        p, t = stack.pop()
        if isinstance(p, Var):
            bound = out.get(p)
            if bound is None:
                out[p] = t
            elif bound != t:
                return None
        else:
            if isinstance(t, Var) or p.fn != t.fn or len(p.args) != len(t.args):
                return None
            stack.extend(reversed(list(zip(p.args, t.args))))
    return out


def match_atom(pattern: Atom, target: Atom,
               bindings: Optional[Mapping[Var, Term]] = None) -> Optional[dict[Var, Term]]:
    if pattern.pred != target.pred or pattern.arity != target.arity:
        return None
    return match_terms(list(zip(pattern.args, target.args)), bindings)


def match_literal(pattern: Literal, target: Literal,
                  bindings: Optional[Mapping[Var, Term]] = None) -> Optional[dict[Var, Term]]:
    if pattern.positive != target.positive:
        return None
    return match_atom(pattern.atom, target.atom, bindings)


def match_onto(pattern: Literal, target: Literal) -> Optional[Substitution]:
    """Substitution θ with pattern·θ = target; the target must be ground."""
    if vars_of(target):
        raise ValueError("target not ground")
    found = match_literal(pattern, target)
    return None if found is None else Substitution(found)


@dataclass
class Signature:
    """Function and predicate symbols with arities, harvested from a problem."""

    functions: dict[str, int] = field(default_factory=dict)
    predicates: dict[str, int] = field(default_factory=dict)
    injected_constant: Optional[str] = None

    @property
    def constants(self) -> list[str]:
        return sorted(name for name, ar in self.functions.items() if ar == 0)

    def _add_term(self, t: Term) -> None:
        if isinstance(t, Var):
            return
        seen = self.functions.setdefault(t.fn, len(t.args))
        if seen != len(t.args):
            raise ValueError(
                f"arity clash for function '{t.fn}': {seen} vs {len(t.args)}")
        for a in t.args:
            self._add_term(a)

    def add_clause(self, c: Clause) -> None:
        for lit in c.literals:
            seen = self.predicates.setdefault(lit.atom.pred, lit.atom.arity)
            if seen != lit.atom.arity:
                raise ValueError(
                    f"arity clash for predicate '{lit.atom.pred}': "
                    f"{seen} vs {lit.atom.arity}")
            for t in lit.atom.args:
                self._add_term(t)

    @classmethod
    def from_clauses(cls, clauses: Iterable[Clause],
                     ensure_constant: bool = True) -> "Signature":
        sig = cls()
        for c in clauses:
            sig.add_clause(c)
        if ensure_constant and not sig.constants:
            # Herbrand enumeration needs a nonempty universe.
            name = "c"
            k = 0
            while name in sig.functions or name in sig.predicates:
                name = f"c{k}"
                k += 1
            sig.functions[name] = 0
            sig.injected_constant = name
        return sig


def ground_terms(sig: Signature, depth: int) -> list[Term]:
    """All ground terms of depth <= depth, in a deterministic order."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if not sig.constants:
        raise ValueError("signature has no constant")
    by_depth: list[list[Term]] = [[const(c) for c in sig.constants]]
    fns = sorted((n, a) for n, a in sig.functions.items() if a > 0)
    for d in range(1, depth + 1):
        shallower = [t for level in by_depth for t in level]
        prev = by_depth[d - 1]
        level: list[Term] = []
        for name, arity in fns:
            for combo in itertools.product(shallower, repeat=arity):
                if any(c in prev for c in combo):
                    level.append(App(name, combo))
        # Drop duplicates while keeping first-seen order.
        uniq: dict[Term, None] = {}
        for t in level:
            uniq.setdefault(t)
        by_depth.append(sorted(uniq, key=term_key))
    out = [t for level in by_depth for t in level]
    return sorted(set(out), key=lambda t: (term_depth(t), term_key(t)))


def enumerate_ground_instances(c: Clause, sig: Signature, depth: int) -> list[Clause]:
    """All instances with each variable mapped to a ground term of depth <= depth."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    variables = sorted(vars_of(c), key=lambda v: v.name)
    if not variables:
        return [c]
    terms = ground_terms(sig, depth)
    out: list[Clause] = []
    for combo in itertools.product(terms, repeat=len(variables)):
        theta = Substitution(dict(zip(variables, combo)))
        out.append(theta.apply_clause(c, origin="instance"))
    return out


_CANONICAL_NAMES = ("X", "Y", "Z", "U", "V", "W")


def canonicalize(c: Clause, origin: Optional[str] = None) -> Clause:
    """Rename variables to a fixed alphabet in first-occurrence order."""
    order: list[Var] = []
    seen: set[Var] = set()

    def visit(t: Term) -> None:
        if isinstance(t, Var):
            if t not in seen:
                seen.add(t)
                order.append(t)
        else:
            for a in t.args:
                visit(a)

    for lit in c.literals:
        for t in lit.atom.args:
            visit(t)
    names = list(_CANONICAL_NAMES) + [f"V{i}" for i in range(1, len(order) + 1)]
    ren = Substitution({v: Var(names[i]) for i, v in enumerate(order)})
    return ren.apply_clause(c, origin=origin if origin is not None else c.origin)


def rename_apart(c: Clause, taken: set[Var]) -> Clause:
    """Rename c's variables away from `taken` (primes appended as needed)."""
    mine = vars_of(c)
    if not (mine & taken):
        return c
    used = set(taken) | mine
    mapping: dict[Var, Term] = {}
    for v in sorted(mine, key=lambda v: v.name):
        if v not in taken:
            continue
        fresh = Var(v.name + "'")
        while fresh in used:
            fresh = Var(fresh.name + "'")
        used.add(fresh)
        mapping[v] = fresh
    return Substitution(mapping).apply_clause(c)
