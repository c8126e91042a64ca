import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, optimize

from diskops import moebius as mb
from diskops import operators as op
from diskops.circle import EVEN, ODD, TrigPoly, eval_at
from diskops.errors import NotSelfAdjoint, SymbolAliasWarning


def idx(N, m):
    return m + N


def test_composition_at_zero_is_parity():
    C = op.build_composition(0, 16)
    np.testing.assert_allclose(C.entries, np.diag((-1.0) ** np.arange(-16, 17)), atol=1e-15)
    assert C.label == "Ca"


def test_composition_constants_fixed():
    C = op.build_composition(0.4 - 0.3j, 32)
    col = np.zeros(65)
    col[32] = 1
    np.testing.assert_allclose(C.entries[:, 32], col, atol=1e-14)


def test_composition_column_one_geometric():
    # (0.5 - z)/(1 - 0.5 z) = 0.5 + sum_{m>=1} 0.5^(m-1) (0.25 - 1) z^m
    N = 32
    C = op.build_composition(0.5, N).entries
    col = C[:, idx(N, 1)]
    assert col[idx(N, 0)] == pytest.approx(0.5, abs=1e-12)
    m = np.arange(1, N + 1)
    np.testing.assert_allclose(col[idx(N, 1):], 0.5 ** (m - 1) * (0.25 - 1), atol=1e-12)
    np.testing.assert_allclose(col[:idx(N, 0)], 0, atol=1e-12)


def test_multiplication_examples():
    N = 16
    np.testing.assert_allclose(op.build_multiplication(lambda z: np.ones_like(z), N).entries,
                               np.eye(2 * N + 1), atol=1e-15)
    S = op.build_multiplication(lambda z: z, N).entries
    np.testing.assert_allclose(S, np.eye(2 * N + 1, k=-1), atol=1e-15)
    M = op.build_multiplication(lambda z: mb.ando_symbol(0.6, z), 64)
    ev = op.self_adjoint_spectrum(M)
    assert ev.min() > 0.2 and ev.max() < 0.8


def test_multiplication_alias_warning():
    with pytest.warns(SymbolAliasWarning):
        op.build_multiplication(lambda z: np.sign(z.real), 16)


def test_adjoint_composition():
    np.testing.assert_allclose(op.build_adjoint_composition(0, 16).entries,
                               op.build_C0(16).entries, atol=1e-15)
    N = 64
    Cs = op.build_adjoint_composition(0.6, N).entries
    assert Cs[idx(N, 0), idx(N, 0)] == pytest.approx(1, abs=1e-10)
    # <C_a z^-1, 1> = mean of 1/phi_a, by adaptive quadrature
    C = op.build_composition(0.5, N).entries
    quad = integrate.quad(lambda t: (1 / mb.eval_phi(0.5, np.exp(1j * t))).real, 0, 2 * np.pi)[0]
    assert C[idx(N, 0), idx(N, -1)] == pytest.approx(quad / (2 * np.pi), abs=1e-10)
    assert C[idx(N, 0), idx(N, -1)] == pytest.approx(0.5, abs=1e-10)


def test_adjoint_matches_conjugate_transpose_on_band():
    N = 128
    a = 0.5j
    Cs = op.build_adjoint_composition(a, N)
    C = op.build_composition(a, N)
    assert op.band_residual(Cs, C.H, op.trusted_halfwidth(N, a)) < 1e-10


def test_modulus():
    np.testing.assert_allclose(op.build_modulus(0, 16).entries, np.eye(33), atol=1e-15)
    A = op.build_modulus(0.5, 128)
    e = A.entries
    assert np.max(np.abs(e - e.conj().T)) < 1e-13
    CsC = op.build_adjoint_composition(0.5, 128) @ op.build_composition(0.5, 128)
    assert op.band_residual(A @ A, CsC, op.trusted_halfwidth(128, 0.5)) < 1e-8


def test_R_W_at_zero():
    for f in (op.build_R, op.build_W):
        np.testing.assert_allclose(f(0, 16).entries, op.build_C0(16).entries, atol=1e-15)


def test_W_preserves_hardy_space():
    N = 64
    W = op.build_W(0.5, N).entries
    assert np.max(np.abs(W[:N, N:])) < 1e-10


def test_R_self_adjoint_on_band():
    R = op.build_R(0.5, 128)
    assert op.band_residual(R, R.H, op.trusted_halfwidth(128, 0.5)) < 1e-8


def test_unitaries():
    N = 32
    V = op.build_V(N)
    np.testing.assert_array_equal((V @ V).entries, np.eye(2 * N + 1))
    U = op.build_rotation(np.pi / 2, N)
    lhs = U @ op.build_composition(0.5, N) @ U.H
    np.testing.assert_allclose(lhs.entries, op.build_composition(0.5j, N).entries, atol=1e-10)
    PE, PO = op.build_parity_projection(EVEN, N), op.build_parity_projection(ODD, N)
    np.testing.assert_array_equal(op.build_C0(N).entries, (PE - PO).entries)


def test_norms_and_spectra():
    assert op.op_norm(op.identity(8)) == pytest.approx(1)
    n = op.op_norm(op.build_composition(0.6, 128))
    assert 1 <= n <= 2
    g = lambda z: 1 + 0.3 * z.real + 0.1 * (z ** 2).imag
    ev = op.self_adjoint_spectrum(op.build_multiplication(g, 32))
    t = np.linspace(0, 2 * np.pi, 20001)
    vals = g(np.exp(1j * t))
    assert ev.min() >= vals.min() - 1e-12 and ev.max() <= vals.max() + 1e-12
    with pytest.raises(NotSelfAdjoint):
        op.self_adjoint_spectrum(op.build_composition(0.5, 16))


def _gamma_oracle(a, b):
    f = lambda t: -abs(mb.modulus_symbol(a, np.exp(1j * t)) - mb.modulus_symbol(b, np.exp(1j * t)))
    ts = np.linspace(-np.pi, np.pi, 20001)
    t0 = ts[np.argmin(f(ts))]
    res = optimize.minimize_scalar(f, bounds=(t0 - 1e-3, t0 + 1e-3), method="bounded",
                                   options={"xatol": 1e-13})
    return -res.fun


def test_gamma_examples():
    assert op.gamma_ab(0.3j, 0.3j) == 0
    assert op.gamma_ab(0, 0.6) == pytest.approx(1, abs=1e-12)
    a, b = 0.2 + 0.3j, -0.4 + 0.1j
    assert op.gamma_ab(a, b) == pytest.approx(op.gamma_ab(b, a), abs=1e-12)
    assert op.gamma_ab(a, b) == pytest.approx(_gamma_oracle(a, b), abs=1e-9)
    with pytest.raises(ValueError):
        op.gamma_ab(a, b, grid_size=512)


def test_gamma_matches_operator_norm():
    a, b = 0.3, 0.35 + 0.1j
    N = 256
    d = op.op_norm(op.build_modulus(a, N) - op.build_modulus(b, N))
    assert abs(d - op.gamma_ab(a, b)) < 1e-3


def _test_vector(rng, N):
    c = np.zeros(2 * N + 1, complex)
    k = N // 4
    c[N - k: N + k + 1] = rng.normal(size=2 * k + 1) + 1j * rng.normal(size=2 * k + 1)
    return c / np.linalg.norm(c)


@pytest.mark.parametrize("a", [0.3, 0.5j, 0.6 * np.exp(1j * np.pi / 4)])
def test_reflection_on_function_level(a):
    # applied without truncating the operator, C_a C_a f = f
    rng = np.random.default_rng(1)
    N = 128
    f = TrigPoly(_test_vector(rng, N))
    g = op.apply_weighted_composition(op.apply_weighted_composition(f, a, order=4 * N), a, order=N)
    assert np.linalg.norm((g - f).coeffs) < 1e-8


@pytest.mark.parametrize("a", [0.3, 0.5j])
def test_polar_identity_on_vectors(a):
    rng = np.random.default_rng(2)
    N = 128
    f = TrigPoly(_test_vector(rng, N))
    Cf = op.apply_weighted_composition(f, a, order=4 * N)
    absf = TrigPoly.from_function(lambda z: mb.modulus_symbol(a, z) * eval_at(f, z), 4 * N)
    Rabs = op.apply_weighted_composition(absf, a, lambda z: mb.modulus_symbol(a, z), order=4 * N)
    assert np.linalg.norm((Cf - Rabs).coeffs) < 1e-8


def test_dot_law_matrices():
    N = 128
    d, b = 0.2 - 0.1j, 0.3j
    lhs = op.build_composition(d, N) @ op.build_composition(b, N) @ op.build_composition(d, N)
    rhs = op.build_composition(mb.dot_compose(d, b), N)
    assert op.band_residual(lhs, rhs, op.trusted_halfwidth(N, d, b, d)) < 1e-6


def test_berkson_probe():
    rng = np.random.default_rng(3)
    for _ in range(5):
        a, b = 0.6 * np.sqrt(rng.uniform(size=2)) * np.exp(2j * np.pi * rng.uniform(size=2))
        assert op.op_norm(op.build_composition(a, 128) - op.build_composition(b, 128)) >= 0.70


def test_lemma_hminus_structure():
    N, a = 64, 0.4 + 0.3j
    C = op.build_composition(a, N).entries
    for n in range(-N, 0):
        assert np.max(np.abs(C[N + 1:, idx(N, n)])) < 1e-10
        assert C[idx(N, 0), idx(N, n)] == pytest.approx(np.conj(a) ** (-n), abs=1e-10)


def test_operator_matrix_contract():
    with pytest.raises(ValueError):
        op.OperatorMatrix(np.eye(4))
    with pytest.raises(ValueError):
        op.OperatorMatrix(np.eye(3), label="Nope")
    T = op.build_C0(4)
    with pytest.raises(ValueError):
        T.entries[0, 0] = 3


@settings(max_examples=20, deadline=None)
@given(st.floats(0, 0.6), st.floats(0, 2 * np.pi))
def test_rotation_covariance(r, theta):
    N = 32
    U = op.build_rotation(theta, N)
    lhs = U @ op.build_composition(r, N) @ U.H
    rhs = op.build_composition(r * np.exp(1j * theta), N)
    assert np.max(np.abs((lhs - rhs).entries)) < 1e-10


@settings(max_examples=20, deadline=None)
@given(st.floats(0, 0.6), st.floats(0, 2 * np.pi))
def test_V_covariance(r, theta):
    N = 32
    a = r * np.exp(1j * theta)
    V = op.build_V(N)
    lhs = V @ op.build_composition(a, N)
    rhs = op.build_composition(np.conj(a), N) @ V
    assert np.max(np.abs((lhs - rhs).entries)) < 1e-10
