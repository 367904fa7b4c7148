import itertools
import random
from fractions import Fraction as F

import pytest
from conftest import random_class_f

from spectradiag.core.exceptions import BoundsViolatedError, NotInClassFError, OutOfRangeError, SchemaError
from spectradiag.core.numerics import DIVERGENT, INFINITE
from spectradiag.core.sequences import (
    DiagonalSequence,
    GeometricTail,
    cut_stats,
    f_grid,
    f_value,
    in_class_F,
    require_within,
)


class TestGeometricTail:
    def test_terms(self):
        tail = GeometricTail(0, 1, F(1, 4))
        assert list(itertools.islice(tail.terms(), 3)) == [F(1, 4), F(1, 16), F(1, 64)]
        assert tail.term(2) == F(1, 16)
        assert tail.is_decreasing

    def test_rejects_bad_ratio(self):
        with pytest.raises(OutOfRangeError):
            GeometricTail(0, 1, 1)
        with pytest.raises(OutOfRangeError):
            GeometricTail(0, 0, F(1, 2))

    def test_split_below_decreasing(self):
        tail = GeometricTail(0, 1, F(1, 2))
        count, total = tail.split_below(F(1, 3))
        # члены 1/4, 1/8, ...
        assert count is INFINITE
        assert total == F(1, 2)

    def test_split_at_least_increasing(self):
        tail = GeometricTail(1, -1, F(1, 2))
        count, deficit = tail.split_at_least(F(2, 3), F(1))
        # члены 3/4, 7/8, ..., дефекты 1/4 + 1/8 + ...
        assert count is INFINITE
        assert deficit == F(1, 2)

    def test_divergent_when_limit_inside(self):
        tail = GeometricTail(F(1, 4), F(1, 8), F(1, 2))
        assert tail.split_below(F(1, 2))[1] is DIVERGENT

    def test_count_between(self):
        tail = GeometricTail(0, 1, F(1, 2))
        assert tail.count_between(F(1, 8), F(1, 2)) == 2
        assert tail.count_between(0, F(1, 2)) is INFINITE

    def test_advanced_drops_head(self):
        tail = GeometricTail(1, -1, F(1, 3))
        assert tail.advanced(2).term(1) == tail.term(3)

    def test_descending_below_increasing(self):
        tail = GeometricTail(1, -1, F(1, 2))
        assert list(tail.descending_below(F(9, 10))) == [F(7, 8), F(3, 4), F(1, 2)]

    def test_json(self):
        tail = GeometricTail(1, F(-1, 2), F(1, 3))
        assert GeometricTail.from_dict(tail.to_dict()) == tail
        with pytest.raises(SchemaError):
            GeometricTail.from_dict({'limit': '0', 'ratio': '1/2'})


class TestDiagonalSequence:
    def test_bounds_default_to_hull(self):
        seq = DiagonalSequence.from_values([F(1, 3), F(2, 3)])
        assert seq.bounds == (F(1, 3), F(2, 3))
        assert DiagonalSequence().bounds == (0, 1)

    def test_bounds_violation(self):
        with pytest.raises(BoundsViolatedError):
            DiagonalSequence.from_values([F(3, 2)], bounds=(0, 1))

    def test_infinite_atom_absorbs_finite(self):
        seq = DiagonalSequence(atoms=[(F(1, 2), 3)], infinite_atoms=[F(1, 2)])
        assert seq.atoms == ()
        assert seq.cardinality() is INFINITE

    def test_atom_values_nonincreasing(self):
        seq = DiagonalSequence(atoms=[(F(1, 4), 2), (F(3, 4), 1)])
        assert seq.atom_values() == [F(3, 4), F(1, 4), F(1, 4)]

    def test_sums(self, beta_quarter):
        assert beta_quarter.sum_below(F(1, 2)) == F(1, 3)
        assert beta_quarter.total_sum() is DIVERGENT
        assert DiagonalSequence.from_values([1, 2]).total_sum() == 3

    def test_excess(self):
        seq = DiagonalSequence.from_values([F(1, 4), F(3, 4)])
        assert seq.excess_below(F(1, 2)) == F(1, 4)
        assert seq.excess_above(F(1, 2)) == F(1, 4)

    def test_reflection_swaps_tails(self, beta_quarter):
        assert set(beta_quarter.reflected().tails) == set(beta_quarter.tails)

    def test_expand_tail(self, beta_quarter):
        expanded = beta_quarter.expand_tail(0, 2)
        assert (F(1, 4), 1) in expanded.atoms and (F(1, 16), 1) in expanded.atoms
        assert cut_stats(expanded, F(1, 2)).C == cut_stats(beta_quarter, F(1, 2)).C

    def test_replace_atoms_requires_presence(self):
        seq = DiagonalSequence.from_values([F(1, 2)])
        with pytest.raises(SchemaError):
            seq.replace_atoms([F(1, 3)], [F(1, 4)])

    def test_iter_descending_below(self, beta_quarter):
        values = list(itertools.islice(beta_quarter.iter_descending_below(F(1, 2)), 3))
        assert values == [F(1, 4), F(1, 16), F(1, 64)]

    def test_iter_descending_merges_atoms(self):
        seq = DiagonalSequence(atoms=[(F(1, 5), 1)], tails=[GeometricTail(0, 1, F(1, 2))], bounds=(0, 1))
        values = list(itertools.islice(seq.iter_descending_below(F(1, 2)), 3))
        assert values == [F(1, 4), F(1, 5), F(1, 8)]

    def test_json(self, beta_quarter):
        assert DiagonalSequence.from_dict(beta_quarter.to_dict()) == beta_quarter
        with pytest.raises(SchemaError):
            DiagonalSequence.from_dict({'atoms': [{'count': 1}]})
        with pytest.raises(SchemaError):
            DiagonalSequence.from_dict({'atoms': [{'value': '1/2', 'count': 0}]})


class TestCutStatistics:
    def test_beta_quarter(self, beta_quarter):
        stats = cut_stats(beta_quarter, F(1, 2))
        assert stats.C == F(1, 3)
        assert stats.D == F(1, 3)
        assert stats.difference() == 0
        assert stats.count_below is INFINITE and stats.count_at_least is INFINITE

    def test_alpha_out_of_range(self, beta_quarter):
        with pytest.raises(OutOfRangeError):
            cut_stats(beta_quarter, F(1))

    def test_divergent_difference(self):
        seq = DiagonalSequence(infinite_atoms=[F(1, 3)], bounds=(0, 1))
        stats = cut_stats(seq, F(1, 2))
        assert stats.C is DIVERGENT
        with pytest.raises(NotInClassFError):
            stats.difference()

    def test_general_B(self):
        seq = DiagonalSequence.from_values([F(1, 2), F(3, 2)], bounds=(0, 2))
        stats = cut_stats(seq, F(1), F(2))
        assert (stats.C, stats.D) == (F(1, 2), F(1, 2))


class TestClassF:
    def test_membership(self, beta_quarter):
        assert in_class_F(beta_quarter)
        assert not in_class_F(DiagonalSequence(infinite_atoms=[F(1, 2)], bounds=(0, 1)))
        assert not in_class_F(DiagonalSequence(tails=[GeometricTail(F(1, 2), F(1, 4), F(1, 2))], bounds=(0, 1)))

    def test_require_within(self):
        with pytest.raises(BoundsViolatedError):
            require_within(DiagonalSequence.from_values([F(2)]), 0, 1)


class TestTraceGapFunction:
    def test_beta_quarter_at_half(self, beta_quarter):
        assert f_value(beta_quarter, F(1, 2)) == F(1, 3)

    def test_finite_sequence(self):
        seq = DiagonalSequence.from_values([F(1, 2)], bounds=(0, 1))
        # f(α) = α(1 − 1/2) при α ≤ 1/2
        assert f_value(seq, F(1, 4)) == F(1, 8)

    def test_grid(self, beta_quarter):
        points = f_grid(beta_quarter, 3)
        assert [alpha for alpha, _ in points] == [F(1, 4), F(1, 2), F(3, 4)]
        with pytest.raises(OutOfRangeError):
            f_grid(beta_quarter, 0)

    def test_not_in_class_f(self):
        with pytest.raises(NotInClassFError):
            f_value(DiagonalSequence(infinite_atoms=[F(1, 2)], bounds=(0, 1)), F(1, 3))

    def test_concavity_on_grid(self):
        """Вогнутость f по средней точке на сетке из 99 точек."""
        rng = random.Random(11)
        for _ in range(20):
            seq = random_class_f(rng)
            values = [f_value(seq, F(i, 100)) for i in range(1, 100)]
            for left, middle, right in zip(values, values[1:], values[2:]):
                assert 2 * middle >= left + right
