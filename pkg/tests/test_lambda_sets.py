import random
from fractions import Fraction as F
from functools import lru_cache

import pytest

from spectradiag.core.exceptions import HypothesisViolatedError, NotInClassFError, OutOfRangeError, PreconditionViolatedError
from spectradiag.core.lambda_sets import (
    MinimalCase,
    beta_sequence,
    eta_of,
    lambda_membership,
    membership_report,
    minimal_element,
    minimal_set,
    select_epsilon,
)
from spectradiag.core.majorization import majorizes
from spectradiag.core.sequences import DiagonalSequence, beta_tails

BETAS = [F(1, 5), F(1, 4), F(2, 5), F(9, 20), F(1, 2), F(11, 20), F(3, 5), F(7, 10), F(4, 5)]

GOLDEN = 0.381966
N3_SPLIT = 0.434259
N5_MU1_SPLIT = 0.560286
N5_MU2_SPLIT = 0.579796


def closed_form(beta: F, N: int, k: int) -> list:
    """Минимальные элементы Λ_N для последовательности β^i ∪ 1 − β^i в явном виде."""
    b = float(beta)
    if N == 2:
        if b < 1 / 3:
            return [1 - beta / (1 - beta), beta / (1 - beta)]
        return [F(1, 2)] * 2
    if N == 3:
        if k == 2:
            return [1 - x for x in closed_form(beta, 3, 1)]
        if b < GOLDEN:
            return [1 - beta / (1 - beta), beta, beta ** 2 / (1 - beta)]
        if b < N3_SPLIT:
            return [F(1, 2) - beta ** 2 / (2 * (1 - beta))] * 2 + [beta ** 2 / (1 - beta)]
        return [F(1, 3)] * 3
    if k >= 3:
        return [1 - x for x in closed_form(beta, 5, 5 - k)]
    if k == 1:
        if b < GOLDEN:
            return [1 - beta / (1 - beta), beta, beta ** 2, beta ** 3, beta ** 4 / (1 - beta)]
        if b < 0.5:
            return [F(1, 2) - beta ** 2 / (2 * (1 - beta))] * 2 + [beta ** 2, beta ** 3, beta ** 4 / (1 - beta)]
        if b < N5_MU1_SPLIT:
            return [F(1, 3) - beta ** 3 / (3 * (1 - beta))] * 3 + [beta ** 3 / (2 * (1 - beta))] * 2
        return [F(1, 5)] * 5
    if b < 0.5:
        return [1 - beta ** 2 / (1 - beta), 1 - beta, beta, beta ** 2, beta ** 3 / (1 - beta)]
    if b < N5_MU2_SPLIT:
        return [F(2, 3) - beta ** 2 / (3 * (1 - beta))] * 3 + [beta ** 2 / (2 * (1 - beta))] * 2
    return [F(2, 5)] * 5


@lru_cache(maxsize=None)
def grid_points(N: int, total: int) -> tuple:
    """Невозрастающие λ ∈ (0, 1)^N в сотых долях с суммой total и их префиксные суммы."""
    points = []

    def extend(prefix, remaining, cap):
        slots = N - len(prefix)
        if slots == 0:
            if remaining == 0:
                running, sums = 0, []
                for x in prefix:
                    running += x
                    sums.append(running)
                points.append((tuple(prefix), tuple(sums)))
            return
        for x in range(min(cap, remaining - (slots - 1)), 0, -1):
            if x * slots < remaining:
                break
            extend(prefix + [x], remaining - x, x)

    extend([], total, 99)
    return tuple(points)


def padded_prefixes(ones: int, lam_sums: tuple, M: int) -> list:
    """Префиксные суммы (1^ones, λ, 0, ...) длины M в сотых долях."""
    sums = [100 * j for j in range(1, ones + 1)]
    sums += [100 * ones + s for s in lam_sums]
    sums += [sums[-1] if sums else 0] * (M - len(sums))
    return sums


class TestEta:
    def test_beta_sequences_have_zero_eta(self):
        for beta in BETAS:
            assert eta_of(beta_sequence(beta)) == 0

    def test_shifted_by_atom(self):
        seq = DiagonalSequence(atoms=[(F(1, 3), 1)], tails=beta_tails(F(1, 4)), bounds=(F(0), F(1)))
        assert eta_of(seq) == F(1, 3)

    def test_not_in_class_f(self):
        with pytest.raises(NotInClassFError):
            eta_of(DiagonalSequence(infinite_atoms=[F(1, 3)], bounds=(F(0), F(1))))

    def test_beta_range(self):
        with pytest.raises(OutOfRangeError):
            beta_sequence(F(1))


class TestMinimalElement:
    def test_case3(self):
        element = minimal_element([F(9, 10), F(7, 10), F(3, 10), F(1, 10)], 2, 0, 2, 1)
        assert element.case is MinimalCase.CASE3
        assert (element.a, element.b, element.Na, element.Nb) == (F(3, 5), F(2, 5), 1, 1)
        assert element.mu == (F(3, 5), F(2, 5))

    def test_case1(self):
        element = minimal_element([F(1, 2)] * 4, 2, 0, 2, 1)
        assert element.case is MinimalCase.CASE1
        assert element.mu == (F(1, 2), F(1, 2))
        assert 'a' not in element.to_dict()

    @pytest.mark.parametrize("d, K, eta, N, k", [
        ([F(1, 4), F(3, 4)], 1, 0, 1, 1),
        ([F(1, 2), F(1, 2)], 1, F(1, 2), 1, 1),
        ([F(1, 2), F(1, 2), F(1, 2)], 1, F(1, 2), 3, 1),
        ([F(1, 2), F(1, 2), F(1, 2)], 1, F(1, 2), 1, 2),
        ([F(1), F(1), 0, 0], 2, 0, 1, 1),
        ([F(1), 0, 0], 1, 0, 1, 0),
        ([F(3, 2), F(1, 2)], 2, 0, 1, 1),
    ])
    def test_preconditions(self, d, K, eta, N, k):
        with pytest.raises(PreconditionViolatedError):
            minimal_element(d, K, eta, N, k)

    def test_grid_oracle(self):
        """μ ≺ λ тогда и только тогда, когда d ≺ (1^{K−k}, λ, 0, ...) на сетке с шагом 1/100."""
        rng = random.Random(3)
        for _ in range(100):
            M = rng.randint(2, 8)
            d100 = sorted((5 * rng.randint(1, 19) for _ in range(M)), reverse=True)
            d = [F(x, 100) for x in d100]
            total = sum(d, F(0))
            K = int(total)
            eta = total - K
            d_sums, running = [], 0
            for x in d100:
                running += x
                d_sums.append(running)
            for N in range(1, min(3, M - 1) + 1):
                for k in range(0, K + 1):
                    target = (k + eta) / N
                    if not (k + eta > 0 and K - k <= M - N and 0 < target < 1):
                        continue
                    element = minimal_element(d, K, eta, N, k)
                    mu = sorted(element.mu, reverse=True)
                    mu_sums, acc = [], F(0)
                    for x in mu:
                        acc += 100 * x
                        mu_sums.append(acc)
                    for lam, lam_sums in grid_points(N, int(100 * (k + eta))):
                        above_mu = all(s >= m for s, m in zip(lam_sums, mu_sums))
                        padded = padded_prefixes(K - k, lam_sums, M)
                        admissible = all(p >= q for p, q in zip(padded, d_sums))
                        assert above_mu == admissible, (d, N, k, lam)

    def test_oracle_agrees_with_majorizes(self):
        element = minimal_element([F(9, 10), F(7, 10), F(3, 10), F(1, 10)], 2, 0, 2, 1)
        assert majorizes(element.mu, [F(7, 10), F(3, 10)])
        assert not majorizes(element.mu, [F(11, 20), F(9, 20)])


class TestMinimalSet:
    def test_beta_quarter_pair(self, beta_quarter):
        report = minimal_set(beta_quarter, 2)
        assert report.eta == 0
        assert report.epsilon == F(1, 32)
        assert report.interior == (F(47, 48), F(15, 16), F(3, 4), F(1, 4), F(1, 16), F(1, 48))
        assert report.mu(1) == (F(2, 3), F(1, 3))
        assert [entry.k for entry in report.entries] == [1]

    def test_beta_quarter_triple(self, beta_quarter):
        report = minimal_set(beta_quarter, 3)
        assert report.epsilon == F(1, 128)
        assert sorted(report.mu(1)) == sorted([F(2, 3), F(1, 4), F(1, 12)])
        assert sorted(report.mu(2)) == sorted([F(11, 12), F(3, 4), F(1, 3)])

    @pytest.mark.parametrize("beta", BETAS)
    @pytest.mark.parametrize("N", [2, 3, 5])
    def test_closed_forms(self, beta, N):
        report = minimal_set(beta_sequence(beta), N)
        for k in range(1, N):
            assert sorted(report.mu(k)) == sorted(closed_form(beta, N, k)), (beta, N, k)

    def test_symmetry(self):
        report = minimal_set(beta_sequence(F(1, 5)), 4)
        for k in range(1, 4):
            assert sorted(report.mu(4 - k)) == sorted(1 - x for x in report.mu(k))

    def test_traces(self):
        seq = DiagonalSequence(atoms=[(F(1, 3), 1)], tails=beta_tails(F(1, 4)), bounds=(F(0), F(1)))
        report = minimal_set(seq, 2)
        assert [entry.k for entry in report.entries] == [0, 1]
        for entry in report.entries:
            assert sum(entry.mu, F(0)) == entry.k + F(1, 3)

    def test_select_epsilon(self, beta_quarter):
        assert select_epsilon(beta_quarter, 2, F(0)) == F(1, 32)

    def test_explicit_epsilon(self, beta_quarter):
        assert minimal_set(beta_quarter, 2, epsilon=F(1, 64)).mu(1) == (F(2, 3), F(1, 3))
        with pytest.raises(OutOfRangeError):
            minimal_set(beta_quarter, 2, epsilon=F(1, 2))

    def test_requires_accumulation(self):
        with pytest.raises(HypothesisViolatedError):
            minimal_set(DiagonalSequence.from_values([F(1, 4), F(3, 4)], bounds=(F(0), F(1))), 2)

    def test_requires_positive_N(self, beta_quarter):
        with pytest.raises(OutOfRangeError):
            minimal_set(beta_quarter, 0)

    def test_to_dict(self, beta_quarter):
        data = minimal_set(beta_quarter, 2).to_dict()
        assert data['eta'] == "0"
        assert data['epsilon'] == "1/32"
        assert data['entries'][0]['mu'] == ["2/3", "1/3"]


class TestMembership:
    def test_member(self, beta_quarter):
        report = membership_report(beta_quarter, [F(2, 3), F(1, 3)])
        assert report.member
        assert report.failed_condition is None
        assert [alpha for alpha, _, _ in report.f_values] == [F(1, 3), F(2, 3)]

    def test_f_failure(self, beta_quarter):
        report = membership_report(beta_quarter, [F(3, 5), F(2, 5)])
        assert not report.member
        assert report.failed_condition == "f:alpha=2/5"
        assert report.f_values[0] == (F(2, 5), F(1, 3), F(2, 5))

    def test_trace_failure(self, beta_quarter):
        report = membership_report(beta_quarter, [F(1, 2), F(1, 3)])
        assert report.failed_condition == "trace_mod_1"
        assert not lambda_membership(beta_quarter, [F(1, 2), F(1, 3)])

    def test_minimal_elements_are_members(self):
        for beta in [F(1, 4), F(2, 5), F(3, 5)]:
            seq = beta_sequence(beta)
            report = minimal_set(seq, 3)
            for entry in report.entries:
                assert lambda_membership(seq, entry.mu)

    def test_lambda_range(self, beta_quarter):
        with pytest.raises(OutOfRangeError):
            membership_report(beta_quarter, [F(1), F(0)])

    def test_to_dict(self, beta_quarter):
        data = membership_report(beta_quarter, [F(3, 5), F(2, 5)]).to_dict()
        assert data['member'] is False
        assert data['failed_condition'] == "f:alpha=2/5"
        assert data['f_values'][0] == {'alpha': "2/5", 'f_d': "1/3", 'f_lambda': "2/5"}
