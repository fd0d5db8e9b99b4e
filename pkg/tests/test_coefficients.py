"""Ergodicity coefficient tests"""

import math

import numpy as np
import pytest

from hots.coefficients import (
    birkhoff_delta,
    compute,
    compute_many,
    delta_bruteforce,
    delta_bruteforce_report,
    delta_closed_form,
    gamma,
    hilbert_distance,
    is_rank_one,
    kappa,
    sigma_vectors,
    tau,
    tau1_matrix,
    tau_lipschitz_check,
    tauH,
    tauL,
    tauR,
    theta,
)
from hots.core.errors import InvalidInputError, InvariantViolation
from hots.tensors import DenseTensor3, make_identity, random_stochastic

AGREE = 1e-13
SLACK = 1e-12


def random_tensors(count, n_min=2, n_max=8, seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_stochastic(int(rng.integers(n_min, n_max + 1)), rng)


def test_example_tensor_values(example_tensor):
    assert tau(example_tensor).value == pytest.approx(0.5, abs=1e-12)
    assert tauH(example_tensor) == 2.0


def test_p1_is_not_contractive(p1):
    assert p1.stochastic_checked
    assert tau(p1).value > 1.0


def test_tau1_formulas_agree(rng):
    for _ in range(100):
        n = int(rng.integers(2, 9))
        M = rng.random((n, n))
        M /= M.sum(axis=0)
        assert abs(tau1_matrix(M) - tau1_matrix(M, "overlap")) <= AGREE


def test_tau1_extremes():
    assert tau1_matrix(np.eye(3)) == 1.0
    assert tau1_matrix(np.tile([[0.2], [0.8]], (1, 2))) == 0.0
    with pytest.raises(InvalidInputError):
        tau1_matrix(np.ones((2, 3)))


def test_tau_left_formulas_agree():
    for P in random_tensors(200, seed=1):
        assert abs(tauL(P).value - tauL(P, "overlap").value) <= AGREE


def test_delta_formulas_agree():
    for P in random_tensors(200, n_max=7, seed=2):
        assert abs(delta_closed_form(P) - delta_bruteforce(P)) <= AGREE


@pytest.mark.slow
def test_formula_pairs_full_ensemble():
    for P in random_tensors(1000, seed=3):
        assert abs(tauL(P).value - tauL(P, "overlap").value) <= AGREE
        assert abs(delta_closed_form(P) - delta_bruteforce(P)) <= AGREE


def check_inequalities(P):
    t, tl, tr = tau(P).value, tauL(P).value, tauR(P).value
    d = delta_closed_form(P)
    assert t <= tl + tr + SLACK
    assert tl + tr <= 2.0 + SLACK
    assert t <= 2.0 - 2.0 * d + SLACK
    assert gamma(P) >= 2.0 * d - SLACK
    for s in sigma_vectors(P):
        assert theta(P, s) >= t - SLACK


def test_inequality_suite():
    for P in random_tensors(300, n_max=10, seed=4):
        check_inequalities(P)


@pytest.mark.slow
def test_inequality_suite_full_ensemble():
    for P in random_tensors(10000, n_max=10, seed=5):
        check_inequalities(P)


def test_s_symmetric_gamma_bound():
    for P in random_tensors(100, seed=6):
        Q = P.symmetrize()
        assert 2.0 - gamma(Q) <= tau(Q).value + SLACK


def test_witnesses_attain_values():
    P = random_stochastic(5, 8)
    arr = P.entries

    left = tauL(P)
    j, k1, k2 = left.argmax_witness
    assert 0.5 * np.abs(arr[:, j, k1] - arr[:, j, k2]).sum() == pytest.approx(left.value, abs=1e-15)

    right = tauR(P)
    j1, j2, k = right.argmax_witness
    assert 0.5 * np.abs(arr[:, j1, k] - arr[:, j2, k]).sum() == pytest.approx(right.value, abs=1e-15)

    delta, (i1, j1, k1, i2, j2, k2) = birkhoff_delta(P)
    ratio = arr[i1, j1, k1] * arr[i2, j2, k2] / (arr[i1, j2, k1] * arr[i2, j1, k2])
    assert ratio == pytest.approx(delta, rel=1e-12)

    report = delta_bruteforce_report(P)
    members = list(report.argmax_witness)
    outside = [i for i in range(5) if i not in members]
    value = arr[outside].sum(axis=0).min() + arr[members].sum(axis=0).min()
    assert value == pytest.approx(report.value, abs=1e-13)


def test_witnesses_are_one_based_in_output(example_tensor):
    data = compute("T", example_tensor).to_dict()
    assert data["name"] == "T"
    assert len(data["argmax_witness"]) == 3
    assert all(1 <= i <= 3 for i in data["argmax_witness"])


def test_rank_one_tensor_coefficients():
    P = DenseTensor3.rank_one([0.2, 0.3, 0.5])
    assert is_rank_one(P)
    assert tau(P).value == 0.0
    assert delta_closed_form(P) == 1.0
    assert kappa(P) == 0.0
    assert tauH(P) == 0.0


def test_identity_mixture_has_unit_tau():
    for left_weight in (0.0, 0.3, 0.5):
        E = make_identity(4, left_weight).to_dense()
        assert tau(E).value == pytest.approx(1.0, abs=1e-15)


def test_birkhoff_conventions():
    assert kappa(DenseTensor3.uniform(3)) == 0.0
    assert 0.0 < kappa(random_stochastic(4, 0)) < 1.0
    # zero entries that are not rank one give an infinite ratio
    delta, _ = birkhoff_delta(np.eye(2)[:, :, None].repeat(2, axis=2))
    assert math.isinf(delta)


def test_hilbert_distance():
    assert hilbert_distance([0.5, 0.5], [0.25, 0.75]) == pytest.approx(math.log(3.0))
    assert hilbert_distance([1, 2], [2, 4]) == pytest.approx(0.0)
    with pytest.raises(InvalidInputError):
        hilbert_distance([1, 0], [0.5, 0.5])


def test_lipschitz_chain():
    P, Q = random_stochastic(4, 1), random_stochastic(4, 2)
    report = tau_lipschitz_check(P, Q)
    assert set(report.rows) == {"TL", "TR", "T"}
    gap, of_diff, bound = report.rows["T"]
    assert gap <= of_diff + AGREE <= bound + 2 * AGREE


def test_subset_coefficients_guard_size():
    with pytest.raises(InvalidInputError, match="subset enumeration"):
        delta_bruteforce(random_stochastic(4, 0), limit=3)
    with pytest.raises(InvalidInputError, match="n >= 2"):
        gamma(DenseTensor3(np.ones((1, 1, 1))))
    with pytest.raises(InvalidInputError, match="stochastic"):
        delta_closed_form(2.0 * DenseTensor3.uniform(2))


def test_subset_enumeration_beyond_low_bits():
    P = random_stochastic(12, 3)
    assert delta_bruteforce(P) == pytest.approx(delta_closed_form(P), abs=AGREE)


def test_registry_dispatch(p1):
    reports = compute_many(["TL", "TR", "T", "TH", "kappa", "delta", "delta-bf", "gamma", "theta"], p1)
    names = [r.name for r in reports]
    assert names == ["TL", "TR", "T", "TH", "kappa", "delta", "delta", "gamma", "theta"]
    assert reports[5].value == pytest.approx(reports[6].value, abs=AGREE)
    assert compute("theta", p1, "max").value == pytest.approx(theta(p1, sigma_vectors(p1)[0]))
    with pytest.raises(InvalidInputError, match="matrix"):
        compute("tau1", p1)
    with pytest.raises(InvalidInputError, match="unknown coefficient"):
        compute("rho", p1)
    with pytest.raises(InvalidInputError, match="sigma"):
        compute("theta", p1, "median")


def test_right_coefficient_is_left_of_s_transpose():
    for P in random_tensors(100, seed=7):
        assert tauR(P).value == tauL(P.s_transpose()).value


def test_tau_is_twice_left_of_symmetrization():
    for P in random_tensors(100, seed=8):
        assert abs(tau(P).value - 2.0 * tauL(P.symmetrize()).value) <= 1e-14


def test_tau_check_catches_symmetrization_mismatch(monkeypatch):
    P = random_stochastic(4, 9)
    tau(P)
    real = tauL

    def shifted(arr, formula="difference"):
        report = real(arr, formula)
        report.value += 1e-6
        return report

    monkeypatch.setattr("hots.coefficients.ergodic.tauL", shifted)
    with pytest.raises(InvariantViolation, match="2 TL"):
        tau(P)
    assert tau(P, check=False).value >= 0.0


def test_positive_entry_bounds():
    rng = np.random.default_rng(10)
    for _ in range(100):
        n = int(rng.integers(2, 8))
        w = float(rng.uniform(0.0, 1.0))
        P = DenseTensor3(w * random_stochastic(n, rng).entries + (1.0 - w) / n)
        a = float(P.entries.min())
        assert tauL(P).value <= 1.0 - n * a + SLACK
        assert tauR(P).value <= 1.0 - n * a + SLACK
        assert tau(P).value <= 2.0 * (1.0 - n * a) + SLACK


def test_hilbert_contraction_on_positive_tensors():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        P = random_stochastic(n, rng)
        assert P.entries.min() > 0.0
        x, y = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
        d = hilbert_distance(x, y)
        moved = hilbert_distance(P.apply(x, x), P.apply(y, y))
        assert moved <= tauH(P) * d * (1.0 + 1e-12) + SLACK
