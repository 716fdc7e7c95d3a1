"""Core arithmetic: weight systems, the degree inequality, numerical semigroups.

The semigroup routines are checked against deliberately naive oracles (a
table-filling membership test and an exhaustive lexicographic search) so that
the bit-mask implementation is never trusted on its own word.
"""

import itertools
import random
from fractions import Fraction
from math import lcm

import pytest

from wfano import (
    StarCase,
    WeightSystem,
    check_lemma_ineq,
    minimal_triple_gap,
    semigroup_decomposition,
    semigroup_representable,
    star_case,
    threshold_c,
    triple_gap,
    validate,
)


def naive_representable(target: int, generators) -> bool:
    """Textbook coin-problem table, independent of the bit-mask code path."""
    if target < 0:
        return False
    gens = [g for g in set(generators) if 0 < g <= target]
    table = [False] * (target + 1)
    table[0] = True
    for value in range(1, target + 1):
        table[value] = any(table[value - g] for g in gens if g <= value)
    return table[target]


def naive_decomposition(target: int, generators):
    """Exhaustive lexicographically minimal coefficient search."""
    best = None
    ranges = [range(target // g + 1) for g in generators]
    for combo in itertools.product(*ranges):
        if sum(c * g for c, g in zip(combo, generators)) == target:
            if best is None or combo < best:
                best = combo
    return best


class TestWeightSystem:
    def test_canonical_order(self):
        ws = WeightSystem.of((3, 1, 2), 6)
        assert ws.weights == (1, 2, 3)
        assert ws.degree == 6

    def test_constructor_rejects_unsorted(self):
        with pytest.raises(ValueError, match="ascending"):
            WeightSystem((2, 1, 3), 6)

    def test_constructor_rejects_nonpositive(self):
        with pytest.raises(ValueError, match="positive"):
            WeightSystem((0, 1, 2), 3)
        with pytest.raises(ValueError, match="positive"):
            WeightSystem((1, 1, 2), 0)

    def test_basic_properties(self):
        ws = WeightSystem((1, 1, 2, 3, 6), 12)
        assert ws.index == 1
        assert ws.dim == 3
        assert ws.n == 4
        assert ws.divisible
        assert ws.quotients == (12, 12, 6, 4, 2)
        assert ws.well_formed
        assert not ws.is_linear_cone
        assert ws.render() == "1,1,2,3,6:12"

    def test_linear_cone(self):
        assert WeightSystem((1, 1, 2, 6), 6).is_linear_cone
        assert not WeightSystem((1, 1, 2, 6), 12).is_linear_cone

    def test_divisibility_flag(self):
        assert not WeightSystem((1, 2, 4), 6).divisible

    def test_well_formedness(self):
        # gcd of all weights but one must be 1 for every omitted coordinate
        assert not WeightSystem((2, 2, 3), 6).well_formed
        assert not WeightSystem((1, 2, 2), 4).well_formed
        assert WeightSystem((1, 1, 2), 4).well_formed
        assert WeightSystem((1, 1, 2, 3, 6), 12).well_formed

    def test_validate_flags(self):
        report = validate(WeightSystem((1, 1, 2, 3, 6), 12), 1)
        assert report.ok
        assert report.well_formed and report.divisibility and report.index_matches
        assert not report.linear_cone

        bad = validate(WeightSystem((2, 2, 3), 6), 1)
        assert not bad.ok
        assert not bad.well_formed
        assert bad.index_matches

        wrong_index = validate(WeightSystem((1, 1, 2, 3, 6), 12), 2)
        assert not wrong_index.index_matches
        assert not wrong_index.ok

    def test_validate_rejects_nonpositive_index(self):
        with pytest.raises(ValueError, match="index must be positive"):
            validate(WeightSystem((1, 1, 2), 3), 0)


class TestStarCase:
    def test_positive(self):
        sc = star_case(WeightSystem((1, 1, 2, 3, 6), 12))
        assert isinstance(sc, StarCase)
        assert sc.holds
        assert sc.a == 6

    def test_requires_even_degree(self):
        assert not star_case(WeightSystem((1, 1, 1, 1), 3)).holds

    def test_requires_both_weights(self):
        # d = 8, a = 4: the weights must contain both 2 and 4
        assert star_case(WeightSystem((1, 1, 2, 4), 8)).holds
        assert star_case(WeightSystem((1, 2, 2, 4), 8)).holds
        assert not star_case(WeightSystem((1, 1, 4, 4), 8)).holds
        assert not star_case(WeightSystem((1, 2, 2, 2), 8)).holds

    def test_half_degree_must_be_at_least_three(self):
        # d = 4 gives a = 2 < 3, excluded regardless of the weights
        assert not star_case(WeightSystem((1, 1, 2, 2), 4)).holds


class TestThreshold:
    def test_star_value(self):
        assert threshold_c(WeightSystem((1, 1, 2, 3), 6)) == Fraction(4, 6)

    def test_generic_value(self):
        assert threshold_c(WeightSystem((1, 1, 1, 1), 3)) == Fraction(2, 3)
        assert threshold_c(WeightSystem((3, 3, 5, 5), 15)) == Fraction(14, 15)


class TestLemmaInequality:
    def test_passes_on_smooth_cubic(self):
        report = check_lemma_ineq(WeightSystem((1, 1, 1, 1), 3))
        assert report.passed
        assert report.precondition_errors == ()
        assert report.checks
        assert all(c.ok for c in report.checks)
        assert report.failures == ()

    def test_rule_kinds_and_star_equality(self):
        report = check_lemma_ineq(WeightSystem((1, 1, 2, 2, 5), 10))
        kinds = {c.rule for c in report.checks}
        assert kinds == {"unit_weight", "star_pair", "general_pair"}
        # the star pair (2, a) always meets its inequality with equality
        star_checks = [c for c in report.checks if c.rule == "star_pair"]
        assert star_checks
        assert all(c.equality for c in star_checks)
        assert report.c_value == Fraction(4, 5)
        assert report.c_lower_bound == Fraction(3, 4)
        assert report.passed

    def test_every_ordered_pair_checked(self):
        ws = WeightSystem((1, 1, 2, 3, 6), 12)
        report = check_lemma_ineq(ws)
        pairs = {(c.i, c.j) for c in report.checks}
        expected = {(i, j) for i in range(5) for j in range(5) if i != j}
        assert pairs == expected

    def test_equality_shape_accepted(self):
        # boundary systems meet c == (n-1)/n exactly and still pass
        report = check_lemma_ineq(WeightSystem((1, 1, 2, 3), 6))
        assert report.c_value == Fraction(2, 3)
        assert report.c_value == report.c_lower_bound
        assert report.c_equality_shape_ok
        assert report.passed

    def test_preconditions_block_checks(self):
        report = check_lemma_ineq(WeightSystem((2, 3, 3, 3, 3, 3), 6))
        assert not report.passed
        assert report.precondition_errors
        assert any("well" in e for e in report.precondition_errors)
        assert any("index" in e for e in report.precondition_errors)
        assert report.checks == ()


class TestSemigroupMembership:
    def test_matches_naive_oracle(self):
        rng = random.Random(8141)
        for _ in range(300):
            k = rng.randint(1, 4)
            gens = tuple(rng.randint(2, 40) for _ in range(k))
            target = rng.randint(0, 200)
            expected = naive_representable(target, gens)
            assert semigroup_representable(target, gens) == expected, (target, gens)

    def test_zero_is_always_representable(self):
        assert semigroup_representable(0, ())
        assert semigroup_representable(0, (7, 11))

    def test_empty_generators(self):
        assert not semigroup_representable(5, ())

    def test_unit_generator(self):
        assert semigroup_representable(123, (1,))

    def test_negative_target(self):
        assert not semigroup_representable(-3, (2, 5))

    def test_rejects_nonpositive_generators(self):
        with pytest.raises(ValueError, match="positive"):
            semigroup_representable(4, (0, 2))
        with pytest.raises(ValueError, match="positive"):
            semigroup_representable(4, (-1, 3))


class TestSemigroupDecomposition:
    def test_matches_exhaustive_search(self):
        rng = random.Random(8142)
        for _ in range(100):
            k = rng.randint(1, 3)
            gens = tuple(rng.randint(2, 12) for _ in range(k))
            target = rng.randint(0, 60)
            expected = naive_decomposition(target, gens)
            assert semigroup_decomposition(target, gens) == expected, (target, gens)

    def test_pinned_value(self):
        assert semigroup_decomposition(48, (4, 5)) == (2, 8)

    def test_reconstruction(self):
        gens = (3, 7, 11)
        coeffs = semigroup_decomposition(41, gens)
        assert coeffs is not None
        assert sum(c * g for c, g in zip(coeffs, gens)) == 41

    def test_unrepresentable_returns_none(self):
        assert semigroup_decomposition(5, (3, 4)) is None

    def test_duplicate_generators(self):
        gens = (3, 3, 4)
        assert semigroup_decomposition(10, gens) == naive_decomposition(10, gens)


class TestTripleGap:
    def test_formula(self):
        assert triple_gap(3, 4, 5) == 3 * 4 * 5 - 3 - 4 - 5

    def test_minimal_search_matches_bruteforce(self):
        bound = 12
        best = None
        for a0, a1, a2 in itertools.combinations(range(2, bound + 1), 3):
            if any(
                lcm(x, y) != x * y
                for x, y in itertools.combinations((a0, a1, a2), 2)
            ):
                continue
            if any(
                naive_representable(a, (b, c))
                for a, b, c in ((a0, a1, a2), (a1, a0, a2), (a2, a0, a1))
            ):
                continue
            candidate = (triple_gap(a0, a1, a2), (a0, a1, a2))
            if best is None or candidate < best:
                best = candidate
        assert minimal_triple_gap(bound) == best

    def test_pinned_minimum(self):
        assert minimal_triple_gap(30) == (48, (3, 4, 5))

    def test_rejects_small_bound(self):
        with pytest.raises(ValueError, match="bound"):
            minimal_triple_gap(4)


def test_lcm_identity_on_small_catalogs(surface_catalog, threefold_catalog):
    # index-1 divisible systems satisfy d == lcm(d / a_i)
    for result in (surface_catalog, threefold_catalog):
        for ws in result.systems:
            assert ws.degree == lcm(*ws.quotients)
