import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pcerod.basis import build_basis
from pcerod.errors import ConditioningError, DomainError, UnderdeterminedError, UndersampledWarning
from pcerod.fit import ChaosExpansion, assemble_design, fit_expansion, moments, solve_coefficients
from pcerod.sampling import unit_samples

from conftest import make_expansion


def uniform_xi(m, n, seed, method="latin_hypercube"):
    return 2.0 * unit_samples(method, m, n, seed) - 1.0


def target(xi):
    return 2.0 + xi[:, 0] + 0.5 * xi[:, 0] * xi[:, 1]


def test_design_shape_and_first_column(legendre):
    basis = build_basis(legendre, 4, 3)
    d = assemble_design(basis, uniform_xi(100, 4, 1))
    assert d.shape == (100, 35)
    assert np.all(d.values[:, 0] == 1.0)


def test_design_entries_match_basis_terms(legendre):
    basis = build_basis(legendre, 3, 3)
    xi = uniform_xi(12, 3, 2)
    with pytest.warns(UndersampledWarning):
        d = assemble_design(basis, xi)
    for j in (0, 5, 11):
        for i in (0, 3, 7, 19):
            assert d.values[j, i] == pytest.approx(basis.term(i, xi[j]), abs=1e-14)


def test_design_row_at_origin(legendre):
    basis = build_basis(legendre, 2, 3)
    with pytest.warns(UndersampledWarning):
        row = assemble_design(basis, np.zeros((1, 2))).values[0]
    p0 = {0: 1.0, 1: 0.0, 2: -0.5, 3: 0.0}
    expected = [p0[a] * p0[b] for a, b in basis.indices]
    np.testing.assert_allclose(row, expected, atol=1e-15)


def test_single_sample_constant_basis(legendre):
    basis = build_basis(legendre, 1, 0)
    with pytest.warns(UndersampledWarning):
        d = assemble_design(basis, [[0.3]])
    assert d.values.tolist() == [[1.0]]


def test_dimension_mismatch(legendre):
    with pytest.raises(DomainError):
        assemble_design(build_basis(legendre, 3, 2), uniform_xi(30, 2, 1))


def test_exact_recovery_in_span(legendre):
    basis = build_basis(legendre, 2, 2)
    xi = uniform_xi(20, 2, 4)
    u = solve_coefficients(assemble_design(basis, xi), target(xi))
    expected = np.zeros(len(basis))
    expected[basis.position((0, 0))] = 2.0
    expected[basis.position((1, 0))] = 1.0
    expected[basis.position((1, 1))] = 0.5
    np.testing.assert_allclose(u, expected, atol=1e-10)


def test_constant_responses(legendre):
    basis = build_basis(legendre, 3, 3)
    xi = uniform_xi(40, 3, 5)
    u = solve_coefficients(assemble_design(basis, xi), np.full(40, 7.25))
    assert u[0] == pytest.approx(7.25, abs=1e-12)
    np.testing.assert_allclose(u[1:], 0.0, atol=1e-12)


def test_residual_of_orthogonal_noise(legendre):
    basis = build_basis(legendre, 2, 2)
    xi = uniform_xi(30, 2, 6)
    d = assemble_design(basis, xi)
    a = d.values
    rng = np.random.default_rng(0)
    r = rng.normal(size=30)
    # brute-force projection onto the orthogonal complement of range(A)
    proj = a @ np.linalg.pinv(a)
    eps = r - proj @ r
    b = target(xi) + eps
    u = solve_coefficients(d, b)
    assert np.linalg.norm(a @ u - b) == pytest.approx(np.linalg.norm(eps), rel=1e-10)


def test_qr_agrees_with_normal_equations(legendre):
    basis = build_basis(legendre, 4, 3)
    xi = uniform_xi(100, 4, 7, "monte_carlo")
    a = assemble_design(basis, xi)
    b = np.sin(xi).sum(axis=1) + xi[:, 0] ** 4
    u_qr = solve_coefficients(a, b)
    u_ne = np.linalg.inv(a.values.T @ a.values) @ a.values.T @ b
    np.testing.assert_allclose(u_qr, u_ne, atol=1e-9)


def test_underdetermined(legendre):
    basis = build_basis(legendre, 2, 2)
    with pytest.warns(UndersampledWarning):
        d = assemble_design(basis, uniform_xi(6, 2, 1))
    with pytest.raises(UnderdeterminedError):
        solve_coefficients(d, np.ones(6))


def test_rank_deficient(legendre):
    basis = build_basis(legendre, 2, 2)
    xi = np.repeat(uniform_xi(3, 2, 1), 10, axis=0)
    with pytest.raises(ConditioningError) as err:
        solve_coefficients(assemble_design(basis, xi), np.ones(30))
    assert err.value.condition > 1e12


def test_moments_example():
    e = make_expansion(2, 2, {(0, 0): 2.0, (1, 0): 1.0, (1, 1): 0.5})
    mean, var = moments(e, "u", 0)
    assert mean == 2.0
    assert var == pytest.approx(1 / 3 + 0.25 / 9, rel=1e-14)
    assert var == pytest.approx(0.361111, abs=1e-6)


def test_moments_constant():
    assert moments(make_expansion(3, 2, {(0, 0, 0): 4.0}), 0, 0) == (4.0, 0.0)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_exact_recovery_any_polynomial(seed, legendre):
    basis = build_basis(legendre, 3, 3)
    rng = np.random.default_rng(seed)
    true = rng.normal(size=len(basis))
    xi = uniform_xi(2 * len(basis), 3, seed)
    u = solve_coefficients(assemble_design(basis, xi), basis.evaluate(xi) @ true)
    assert np.max(np.abs(u - true)) < 1e-8


def test_moment_consistency_against_surrogate_sampling(legendre):
    basis = build_basis(legendre, 3, 3)
    xi = uniform_xi(60, 3, 9)
    y = np.exp(0.3 * xi[:, 0]) + xi[:, 1] * xi[:, 2] ** 2
    e = fit_expansion(basis, xi, y[:, None, None], ["y"], [0.0])
    mean, var = moments(e, "y", 0)
    draws = 2.0 * np.random.default_rng(1).random((100_000, 3)) - 1.0
    vals = e.predict(draws, "y", 0)
    se = vals.std(ddof=1) / np.sqrt(len(vals))
    assert abs(vals.mean() - mean) < 3 * se
    # standard error of a sample variance ~ sqrt((mu4 - var^2) / N)
    mu4 = np.mean((vals - vals.mean()) ** 4)
    se_var = np.sqrt((mu4 - vals.var() ** 2) / len(vals))
    assert abs(vals.var(ddof=1) - var) < 3 * se_var


@settings(max_examples=25, deadline=None)
@given(c=st.floats(-1e3, 1e3).filter(lambda v: abs(v) > 1e-3))
def test_scaling_equivariance(c):
    from pcerod.basis import PolynomialFamily
    basis = build_basis(PolynomialFamily.legendre(), 2, 3)
    xi = uniform_xi(30, 2, 10)
    y = np.cos(xi[:, 0]) + xi[:, 1] ** 3
    e1 = fit_expansion(basis, xi, y[:, None, None], ["y"], [0.0])
    e2 = fit_expansion(basis, xi, (c * y)[:, None, None], ["y"], [0.0])
    np.testing.assert_allclose(e2.coefficients, c * e1.coefficients, rtol=1e-9, atol=1e-9 * abs(c))
    m1, v1 = moments(e1, 0, 0)
    m2, v2 = moments(e2, 0, 0)
    assert m2 == pytest.approx(c * m1, rel=1e-9, abs=1e-9)
    assert v2 == pytest.approx(c * c * v1, rel=1e-8, abs=1e-12)


def test_noise_perturbation_bounded_by_condition(legendre):
    basis = build_basis(legendre, 4, 3)
    xi = uniform_xi(70, 4, 11)
    d = assemble_design(basis, xi)
    y = np.tanh(xi).sum(axis=1)
    u = solve_coefficients(d, y)
    cond = np.linalg.cond(d.values)
    smin = np.linalg.svd(d.values, compute_uv=False)[-1]
    for delta in (1e-6, 1e-3):
        noise = delta * np.random.default_rng(2).normal(size=70)
        du = solve_coefficients(d, y + noise) - u
        # ||du|| <= ||noise|| / sigma_min
        assert np.linalg.norm(du) <= np.linalg.norm(noise) / smin * (1 + 1e-9)
        assert np.linalg.norm(du) <= delta * np.sqrt(70) * cond * 10


def test_multi_output_multi_time_matches_single_solves(legendre):
    basis = build_basis(legendre, 2, 2)
    xi = uniform_xi(20, 2, 12)
    t = np.arange(3.0)
    resp = np.stack([xi[:, :1] + t, 2.0 * xi[:, 1:] * t], axis=1)  # (m, outputs, times)
    e = fit_expansion(basis, xi, resp, ["a", "b"], [1.0, 2.0, 3.0])
    d = assemble_design(basis, xi)
    for o in range(2):
        for t in range(3):
            np.testing.assert_allclose(e.coefficients[o, t], solve_coefficients(d, resp[:, o, t]), atol=1e-12)


def test_json_and_csv_round_trip(tmp_path, legendre):
    basis = build_basis(legendre, 2, 2)
    xi = uniform_xi(20, 2, 13)
    resp = np.stack([np.exp(xi[:, 0]), xi[:, 1] ** 2], axis=1)[:, :, None] * np.array([1.0, 2.0])
    e = fit_expansion(basis, xi, resp, ["a", "b"], [10.0, 100.0], metadata={"inputs": ["x", "y"]})
    again = ChaosExpansion.from_json(e.to_json(tmp_path / "pce.json"))
    assert again.coefficients.tobytes() == e.coefficients.tobytes()
    assert again.basis == e.basis and again.outputs == e.outputs
    paths = e.export_moments(tmp_path)
    rows = [line.split(",") for line in paths[1].read_text().splitlines()]
    assert rows[0] == ["time_s", "mean", "std", "mean_minus_std", "mean_plus_std"]
    assert float(rows[2][1]) == e.mean()[1, 1]
    assert float(rows[2][2]) == e.std()[1, 1]
