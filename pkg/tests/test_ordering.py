"""Ordering: stability, ground totality, finiteness, polynomial bound."""

import itertools

import pytest
from hypothesis import given

from trigsat.ordering import (
    Comparison,
    OrderingSpec,
    atom_weight,
    compare_atoms,
    compare_clauses,
    compare_literals,
    maximal_literals,
    maximum_literal,
)
from trigsat.terms import App, Atom, Clause, Literal, Var, clause, const, fn

from strategies import atoms, ground_atoms, ground_substitutions

X, Y = Var("X"), Var("Y")
a, b, c = const("a"), const("b"), const("c")

WEIGHT = OrderingSpec(kind="weight")
SUBTERM = OrderingSpec(kind="subterm")
COUNTERSEL = OrderingSpec(kind="weight", precedence=("r", "q", "p"),
                          precedence_dominant=True)


def lit(atom, positive=True):
    return Literal(atom, positive)


class TestCompareAtoms:
    def test_subterm_product_pairwise(self):
        small = Atom("p", (a, b))
        big = Atom("p", (fn("f", a), fn("f", b)))
        assert compare_atoms(SUBTERM, small, big) is Comparison.LT
        assert compare_atoms(SUBTERM, big, small) is Comparison.GT

    def test_precedence_dominant_ignores_size(self):
        r_atom = Atom("r", (Y,))
        q_atom = Atom("q", (fn("f", fn("f", X)),))
        assert compare_atoms(COUNTERSEL, r_atom, q_atom) is Comparison.GT

    def test_reflexive_equality(self):
        atom = Atom("p", (fn("f", X), Y))
        assert compare_atoms(WEIGHT, atom, atom) is Comparison.EQ
        assert compare_atoms(SUBTERM, atom, atom) is Comparison.EQ

    def test_weight_var_condition(self):
        # Same weight, mismatched variables: stability forbids a verdict.
        assert compare_atoms(
            WEIGHT, Atom("p", (X, a)), Atom("p", (Y, a))) \
            is Comparison.INCOMPARABLE
        assert compare_atoms(
            WEIGHT, Atom("p", (X, a)), Atom("p", (a, a))) \
            is Comparison.INCOMPARABLE

    def test_subterm_incomparable_swapped_args(self):
        assert compare_atoms(
            SUBTERM, Atom("p", (a, b)), Atom("p", (b, a))) \
            is Comparison.INCOMPARABLE

    def test_subterm_cross_predicate_pointwise(self):
        # Arguments grow pointwise across equal-arity predicates.
        p_atom = Atom("p", (X, Y))
        q_atom = Atom("q", (fn("f", X), Y))
        assert compare_atoms(SUBTERM, p_atom, q_atom) is Comparison.LT


class TestCompareLiterals:
    def test_negative_above_positive(self):
        atom = Atom("p", (a,))
        assert compare_literals(WEIGHT, lit(atom, False), lit(atom)) \
            is Comparison.GT

    def test_atom_comparison_dominates(self):
        order = OrderingSpec(kind="weight", precedence=("q", "p"))
        assert compare_literals(order, lit(Atom("q", (a,))),
                                lit(Atom("p", (a,)), False)) is Comparison.GT

    def test_subterm_weight_growth(self):
        assert compare_literals(WEIGHT, lit(Atom("p", (X, a))),
                                lit(Atom("p", (fn("f", X), a)))) \
            is Comparison.LT

    def test_atom_ordering_condition(self):
        # L > M with distinct atoms implies L > complement(M).
        order = COUNTERSEL
        l = lit(Atom("r", (Y,)), False)
        m = lit(Atom("q", (X,)))
        assert compare_literals(order, l, m) is Comparison.GT
        assert compare_literals(order, l, m.complement()) is Comparison.GT


class TestMaximalMaximum:
    def test_countersel_split_clause(self):
        c4 = clause([lit(Atom("p", (Var("X4"),))),
                     lit(Atom("q", (Var("X4"),))),
                     lit(Atom("r", (Var("Y4"),)), False)])
        assert maximal_literals(COUNTERSEL, c4) == \
            [lit(Atom("r", (Var("Y4"),)), False)]
        assert maximum_literal(COUNTERSEL, c4) == \
            lit(Atom("r", (Var("Y4"),)), False)

    def test_incomparable_pair_has_no_maximum(self):
        c = clause([lit(Atom("p", (X, a))), lit(Atom("p", (Y, a)))])
        assert set(maximal_literals(SUBTERM, c)) == set(c.literals)
        assert maximum_literal(SUBTERM, c) is None

    def test_unit_clause(self):
        c = clause([lit(Atom("p", (a, a)))])
        assert maximal_literals(WEIGHT, c) == [c.literals[0]]
        assert maximum_literal(WEIGHT, c) == c.literals[0]

    def test_duplicate_literal_never_maximum(self):
        c = clause([lit(Atom("p", (a, a))), lit(Atom("p", (a, a)))])
        assert maximum_literal(WEIGHT, c) is None

    def test_empty_clause_rejected(self):
        with pytest.raises(ValueError):
            maximal_literals(WEIGHT, Clause((), origin="input-ground"))


class TestCompareClauses:
    def test_proper_submultiset_is_smaller(self):
        small = clause([lit(Atom("p", (a, a)))])
        big = clause([lit(Atom("p", (a, a))), lit(Atom("q", (a,)))])
        assert compare_clauses(WEIGHT, small, big) is Comparison.LT

    def test_dominated_difference(self):
        # Every extra literal on the left is below the negative r-literal.
        order = COUNTERSEL
        left = clause([lit(Atom("q", (a,))), lit(Atom("p", (b, b)))])
        right = clause([lit(Atom("r", (a,)), False), lit(Atom("p", (b, b)))])
        assert compare_clauses(order, left, right) is Comparison.LT

    def test_empty_clause_is_least(self):
        bottom = Clause((), origin="input-ground")
        c = clause([lit(Atom("p", (a, a)))])
        assert compare_clauses(WEIGHT, bottom, c) is Comparison.LT
        assert compare_clauses(WEIGHT, c, bottom) is Comparison.GT

    def test_multiset_not_set_comparison(self):
        one = clause([lit(Atom("p", (a, a)))])
        two = clause([lit(Atom("p", (a, a))), lit(Atom("p", (a, a)))])
        assert compare_clauses(WEIGHT, one, two) is Comparison.LT


class TestStability:
    @given(atoms(max_depth=2), atoms(max_depth=2), ground_substitutions())
    def test_weight_comparisons_stable(self, a1, a2, theta):
        verdict = compare_atoms(WEIGHT, a1, a2)
        if verdict in (Comparison.LT, Comparison.GT):
            assert compare_atoms(WEIGHT, theta(a1), theta(a2)) is verdict

    @given(atoms(max_depth=2), atoms(max_depth=2), ground_substitutions())
    def test_subterm_comparisons_stable(self, a1, a2, theta):
        verdict = compare_atoms(SUBTERM, a1, a2)
        if verdict in (Comparison.LT, Comparison.GT):
            assert compare_atoms(SUBTERM, theta(a1), theta(a2)) is verdict

    @given(atoms(max_depth=2), atoms(max_depth=2), ground_substitutions())
    def test_dominant_comparisons_stable(self, a1, a2, theta):
        verdict = compare_atoms(COUNTERSEL, a1, a2)
        if verdict in (Comparison.LT, Comparison.GT):
            assert compare_atoms(COUNTERSEL, theta(a1), theta(a2)) is verdict


class TestGroundTotality:
    @given(ground_atoms(max_depth=2), ground_atoms(max_depth=2))
    def test_weight_total_on_ground(self, a1, a2):
        assert compare_atoms(WEIGHT, a1, a2) is not Comparison.INCOMPARABLE


def _enumerate_ground_atoms(functions, predicates, max_weight):
    """All ground atoms up to a symbol-count budget (small signatures)."""
    from trigsat.terms import symbol_count

    terms = [App(n) for n, ar in functions.items() if ar == 0]
    grown = True
    while grown:
        grown = False
        for name, arity in functions.items():
            if arity == 0:
                continue
            for combo in itertools.product(list(terms), repeat=arity):
                t = App(name, combo)
                if t not in terms and symbol_count(t) <= max_weight:
                    terms.append(t)
                    grown = True
    out = []
    for pred, arity in predicates.items():
        for combo in itertools.product(terms, repeat=arity):
            atom = Atom(pred, combo)
            if 1 + sum(symbol_count(t) for t in combo) <= max_weight:
                out.append(atom)
    return out


class TestFinitenessBounds:
    def test_omega_isomorphism_weight(self):
        # Every atom below p(g(a), a) sits in the finite weight-bounded pool.
        functions = {"a": 0, "g": 1}
        predicates = {"p": 2, "q": 2}
        top = Atom("p", (fn("g", a), a))
        w = atom_weight(WEIGHT, top)
        pool = _enumerate_ground_atoms(functions, predicates, w)
        below = [at for at in pool
                 if compare_atoms(WEIGHT, at, top) is Comparison.LT]
        assert 0 < len(below) < len(pool) + 1
        # Anything heavier can never be below.
        heavy = Atom("q", (fn("g", fn("g", fn("g", a))), fn("g", a)))
        assert compare_atoms(WEIGHT, heavy, top) is not Comparison.LT

    def test_polynomial_bound_subterm(self):
        # Count of strictly smaller ground atoms <= n^2 for binary atoms.
        functions = {"a": 0, "g": 1}
        predicates = {"p": 2, "q": 2}
        order = SUBTERM
        for d1 in range(0, 4):
            for d2 in range(0, 4):
                t1 = a
                for _ in range(d1):
                    t1 = fn("g", t1)
                t2 = a
                for _ in range(d2):
                    t2 = fn("g", t2)
                top = Atom("p", (t1, t2))
                n = atom_weight(WEIGHT, top)
                pool = _enumerate_ground_atoms(functions, predicates, n + 2)
                below = [at for at in pool
                         if compare_atoms(order, at, top) is Comparison.LT]
                assert len(below) <= n * n
