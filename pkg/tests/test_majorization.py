import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectradiag.core.exceptions import HypothesisViolatedError, InfeasibleInputError, LengthMismatchError
from spectradiag.core.majorization import (
    Orientation,
    construct_matrix,
    decreasing_rearrangement,
    finite_rank_check,
    majorizes,
    prefix_slacks,
    schur_horn_check,
    validate_witness,
)
from spectradiag.core.numerics import WITNESS_TOLERANCE
from spectradiag.core.sequences import GeometricTail

fractions_vec = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=12), min_size=1, max_size=7)


def random_permutohedron_point(rng: random.Random, lam):
    """Точка многогранника перестановок λ: цепочка T-преобразований с рациональными весами."""
    d = list(lam)
    for _ in range(rng.randint(0, 3 * len(d))):
        i, j = rng.sample(range(len(d)), 2) if len(d) > 1 else (0, 0)
        t = F(rng.randint(0, 8), 8)
        d[i], d[j] = t * d[i] + (1 - t) * d[j], (1 - t) * d[i] + t * d[j]
    rng.shuffle(d)
    return d


class TestMajorizes:
    def test_examples(self):
        assert majorizes([F(1, 2), F(1, 2)], [1, 0])
        assert not majorizes([1, 0], [F(1, 2), F(1, 2)])
        assert majorizes([3, 3, 1, 1], [4, 2, 2, 0])

    def test_requires_equal_sums(self):
        assert not majorizes([1, 1], [2, 1])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            majorizes([1], [1, 0])

    @given(fractions_vec)
    def test_reflexive(self, v):
        assert majorizes(v, v)
        assert majorizes(v, list(reversed(v)))

    @given(fractions_vec)
    def test_mean_vector_is_minimal(self, v):
        mean = sum(v, F(0)) / len(v)
        assert majorizes([mean] * len(v), v)

    def test_rearrangement(self):
        assert decreasing_rearrangement([1, 3, 2]) == (3, 2, 1)

    def test_prefix_slacks(self):
        assert prefix_slacks([4, 2, 2, 0], [3, 3, 1, 1]) == [(1, 1), (2, 0), (3, 1), (4, 0)]


class TestFiniteRank:
    def test_nonincreasing_with_tail(self):
        tail = GeometricTail(0, F(1, 4), F(1, 2))
        # хвост 1/8, 1/16, ... с суммой 1/4
        assert finite_rank_check([F(1), F(1, 2)], [F(3, 4), F(1, 2)], [tail])
        assert not finite_rank_check([F(1), F(1, 2)], [F(1), F(1, 2)], [tail])

    def test_nondecreasing(self):
        assert finite_rank_check([F(1, 2), F(1)], [F(1, 2), F(1)], [], Orientation.NONDECREASING)

    def test_tail_not_summable(self):
        tail = GeometricTail(F(1, 8), F(1, 8), F(1, 2))
        assert not finite_rank_check([F(1)], [F(1, 2)], [tail])

    def test_rejects_nonpositive_spectrum(self):
        with pytest.raises(HypothesisViolatedError):
            finite_rank_check([F(0)], [F(0)], [])


class TestConstructMatrix:
    def test_adjacent_bracket_chain(self):
        witness = construct_matrix([4, 2, 2, 0], [3, 3, 1, 1])
        assert witness.diagonal == (3, 3, 1, 1)
        assert witness.max_deviation() < WITNESS_TOLERANCE
        assert np.allclose(witness.entries, witness.entries.T)

    def test_rejects_infeasible(self):
        with pytest.raises(InfeasibleInputError):
            construct_matrix([1, 0], [F(3, 2), F(-1, 2)])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            construct_matrix([1, 0], [1])

    def test_csv_has_one_row_per_dimension(self):
        witness = construct_matrix([1, 1, 0], [F(2, 3)] * 3)
        rows = witness.to_csv().strip().splitlines()
        assert len(rows) == 3
        assert all(len(row.split(",")) == 3 for row in rows)

    def test_random_feasible_pairs(self):
        """Диагональ точно d, спектр в пределах 1e-8 для 100 случайных пар."""
        rng = random.Random(7)
        for _ in range(100):
            n = rng.randint(1, 10)
            lam = [F(rng.randint(-20, 20), rng.choice([1, 2, 3, 4, 5])) for _ in range(n)]
            d = random_permutohedron_point(rng, lam)
            assert schur_horn_check(lam, d)
            witness = construct_matrix(lam, d)
            assert list(witness.diagonal) == d
            assert np.array_equal(np.diag(witness.entries), np.array([float(x) for x in d]))
            assert validate_witness(witness, lam) < WITNESS_TOLERANCE

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=10), min_size=2, max_size=6),
           st.randoms(use_true_random=False))
    def test_hypothesis_witnesses(self, lam, rnd):
        d = random_permutohedron_point(rnd, lam)
        witness = construct_matrix(lam, d)
        assert witness.max_deviation() < WITNESS_TOLERANCE
