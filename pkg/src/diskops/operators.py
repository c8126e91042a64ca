"""Truncated Fourier matrices of composition, multiplication and related operators.

An :class:`OperatorMatrix` of order N holds the compression of an operator T
to span{z^n : |n| <= N}, entry[m, n] = <T z^n, z^m>.  Weighted composition
operators g * (f o phi_a) are compressed column by column: the samples of
g * phi_a**n on an oversampled grid are transformed and folded to [-N, N].
R_a, W_a and C_a* are built this way from their closed-form symbols, so
the product is formed before truncation.

phi_a stretches frequencies by up to ``stretch(a)``, so a product of
compressions only reproduces the compression of the product on the band
``trusted_halfwidth(N, ...)``; identities between matrices are checked there.
"""
import functools
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import moebius as mb
from .circle import EVEN, ODD, OVERSAMPLE, SampleGrid, TrigPoly, analyze_coeffs
from .errors import NotSelfAdjoint, SymbolAliasWarning

LABELS = frozenset(
    {"Ca", "CaStar", "AbsCa", "Ra", "Wa", "C0", "V", "Utheta", "Mult", "Eps", "Composite"}
)
ALIAS_TOL = 1e-10
SELF_ADJOINT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    label: str = "Composite"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.ndim != 2 or e.shape[0] != e.shape[1] or e.shape[0] % 2 == 0:
            raise ValueError(f"expected a (2N+1)x(2N+1) matrix, got shape {e.shape}")
        if not np.all(np.isfinite(e)):
            raise ValueError("operator matrix has non-finite entries")
        if self.label not in LABELS:
            raise ValueError(f"unknown label {self.label!r}")
        if e is self.entries and e.flags.writeable:
            e = e.copy()
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    @property
    def order(self):
        return (self.entries.shape[0] - 1) // 2

    @property
    def dim(self):
        return self.entries.shape[0]

    @property
    def H(self):
        return OperatorMatrix(self.entries.conj().T, "Composite", {"adjoint_of": self.label})

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries @ other.entries, "Composite",
                                  {"factors": [self.label, other.label]})
        if isinstance(other, TrigPoly):
            return TrigPoly(self.entries @ other.padded(self.order).coeffs)
        return self.entries @ other

    def __add__(self, other):
        return OperatorMatrix(self.entries + _entries(other), "Composite")

    def __sub__(self, other):
        return OperatorMatrix(self.entries - _entries(other), "Composite")

    def __mul__(self, scalar):
        return OperatorMatrix(self.entries * scalar, "Composite")

    __rmul__ = __mul__

    def band(self, halfwidth):
        """Central block with row and column indices in [-halfwidth, halfwidth]."""
        n = self.order
        h = min(int(halfwidth), n)
        return self.entries[n - h: n + h + 1, n - h: n + h + 1]


def _entries(x):
    return x.entries if isinstance(x, OperatorMatrix) else np.asarray(x)


def identity(order):
    return OperatorMatrix(np.eye(2 * order + 1, dtype=complex), "Composite", {"N": order})


def trusted_halfwidth(order, *params, minimum=2):
    """Half-width of the band on which products of compressions are reliable.

    Each composition factor C_p can push a mode of frequency n out to
    ``stretch(p) * n``; the band is kept inside N / (2 prod stretch).  With
    every parameter at 0 this is the central half-band [-N/2, N/2].
    """
    s = float(np.prod([mb.stretch(p) for p in params])) if params else 1.0
    return max(minimum, min(order, int(order / (2.0 * s))))


def band_resolved(order, *params):
    """True when at least one mode fits inside order / (2 prod stretch)."""
    s = float(np.prod([mb.stretch(p) for p in params])) if params else 1.0
    return order / (2.0 * s) >= 1.0


def band_residual(lhs, rhs, halfwidth):
    """Spectral norm of lhs - rhs restricted to the central band."""
    n = (_entries(lhs).shape[0] - 1) // 2
    h = min(int(halfwidth), n)
    sl = slice(n - h, n + h + 1)
    d = _entries(lhs)[sl, sl] - _entries(rhs)[sl, sl]
    return float(np.linalg.norm(d, 2))


def _check_alias(spectrum, what):
    m = spectrum.shape[-1]
    guard = np.abs(spectrum[..., m // 2 - m // 8: m // 2 + m // 8])
    if guard.size and guard.max() > ALIAS_TOL:
        warnings.warn(f"{what}: Fourier tail {guard.max():.1e} near the Nyquist band",
                      SymbolAliasWarning, stacklevel=3)


def weighted_composition_entries(a, weight, order, oversample=OVERSAMPLE, block=128):
    """Matrix of f -> weight * (f o phi_a) on the band [-order, order].

    ``weight`` is a callable on circle points or None for the unweighted case.
    """
    a = mb.check_disk(a)
    grid = SampleGrid.for_order(order, oversample)
    z = grid.nodes
    phi = mb.eval_phi(a, z)
    w = None if weight is None else np.asarray(weight(z), dtype=complex)
    ns = np.arange(-order, order + 1)
    out = np.empty((ns.size, ns.size), dtype=complex)
    m = grid.size
    keep = ns % m
    for start in range(0, ns.size, block):
        chunk = ns[start: start + block]
        cols = phi[None, :] ** chunk[:, None]
        if w is not None:
            cols = cols * w[None, :]
        spec = np.fft.fft(cols, axis=-1) / m
        if start == 0 or start + block >= ns.size:
            _check_alias(spec, f"composition columns (a={a})")
        out[:, start: start + chunk.size] = spec[:, keep].T
    return out


def toeplitz_entries(symbol_coeffs, order):
    """Toeplitz matrix entry[m, n] = g_hat(m - n) from coefficients at order 2*order."""
    c = np.asarray(symbol_coeffs, dtype=complex)
    ns = np.arange(-order, order + 1)
    return c[(ns[:, None] - ns[None, :]) + 2 * order]


def symbol_coefficients(g, order, oversample=OVERSAMPLE):
    """Coefficients of g on [-2 order, 2 order] from an oversampled grid."""
    grid = SampleGrid.for_order(2 * order, oversample)
    samples = np.asarray(g(grid.nodes), dtype=complex)
    if samples.shape != (grid.size,):
        samples = np.broadcast_to(samples, (grid.size,))
    spec = np.fft.fft(samples) / grid.size
    _check_alias(spec, "multiplication symbol")
    return analyze_coeffs(samples, 2 * order)


@functools.lru_cache(maxsize=64)
def _cached(kind, a, order, oversample):
    weights = {
        "Ca": None,
        "CaStar": lambda z: mb.adjoint_weight(a, z),
        "Ra": lambda z: mb.modulus_symbol(a, z),
        "Wa": lambda z: mb.normalized_kernel(a, z),
    }
    e = weighted_composition_entries(a, weights[kind], order, oversample)
    e.flags.writeable = False
    return e


def build_composition(a, order, oversample=OVERSAMPLE):
    """C_a f = f o phi_a."""
    a = mb.check_disk(a)
    return OperatorMatrix(_cached("Ca", a, order, oversample), "Ca", {"a": a, "N": order})


def build_adjoint_composition(a, order, oversample=OVERSAMPLE):
    """C_a* = (1 - |a|^2) M_{1/|1 - conj(a) z|^2} C_a."""
    a = mb.check_disk(a)
    return OperatorMatrix(_cached("CaStar", a, order, oversample), "CaStar", {"a": a, "N": order})


def build_R(a, order, oversample=OVERSAMPLE):
    """Unitary part of the polar decomposition of C_a; a symmetry."""
    a = mb.check_disk(a)
    return OperatorMatrix(_cached("Ra", a, order, oversample), "Ra", {"a": a, "N": order})


def build_W(a, order, oversample=OVERSAMPLE):
    """The weighted composition symmetry f -> k_a / ||k_a|| * (f o phi_a)."""
    a = mb.check_disk(a)
    return OperatorMatrix(_cached("Wa", a, order, oversample), "Wa", {"a": a, "N": order})


def build_weighted_composition(a, weight, order, oversample=OVERSAMPLE):
    a = mb.check_disk(a)
    return OperatorMatrix(weighted_composition_entries(a, weight, order, oversample),
                          "Composite", {"a": a, "N": order})


def build_multiplication(g, order, oversample=OVERSAMPLE, label="Mult"):
    """Toeplitz compression of the multiplication operator by the symbol g."""
    c = symbol_coefficients(g, order, oversample)
    return OperatorMatrix(toeplitz_entries(c, order), label, {"N": order})


def build_modulus(a, order, oversample=OVERSAMPLE):
    """|C_a| from its closed-form symbol, not from a matrix square root."""
    a = mb.check_disk(a)
    m = build_multiplication(lambda z: mb.modulus_symbol(a, z), order, oversample)
    return OperatorMatrix(m.entries, "AbsCa", {"a": a, "N": order})


def build_C0(order):
    ns = np.arange(-order, order + 1)
    return OperatorMatrix(np.diag((-1.0) ** ns).astype(complex), "C0", {"a": 0j, "N": order})


def build_V(order):
    """Vf(z) = f(conj z): reverses the coefficient index."""
    return OperatorMatrix(np.eye(2 * order + 1, dtype=complex)[::-1], "V", {"N": order})


def build_rotation(theta, order):
    """U_theta f(z) = f(exp(-i theta) z)."""
    ns = np.arange(-order, order + 1)
    return OperatorMatrix(np.diag(np.exp(-1j * ns * theta)), "Utheta",
                          {"theta": float(theta), "N": order})


def build_parity_projection(parity, order):
    ns = np.arange(-order, order + 1)
    if parity == EVEN:
        d = (ns % 2 == 0)
    elif parity == ODD:
        d = (ns % 2 == 1)
    else:
        raise ValueError(f"parity must be {EVEN!r} or {ODD!r}")
    return OperatorMatrix(np.diag(d.astype(complex)), "Mult", {"parity": parity, "N": order})


def op_norm(T):
    return float(np.linalg.norm(_entries(T), 2))


def self_adjoint_spectrum(T, tol=SELF_ADJOINT_TOL):
    """Ascending eigenvalues of a numerically self-adjoint matrix."""
    e = _entries(T)
    defect = np.linalg.norm(e - e.conj().T, 2)
    if defect > tol:
        raise NotSelfAdjoint(f"||T - T*|| = {defect:.2e} exceeds {tol:.0e}")
    return np.linalg.eigvalsh(0.5 * (e + e.conj().T))


def gamma_ab(a, b, grid_size=4096, refine=True):
    """sup over the circle of the difference of the |C_a| and |C_b| symbols.

    Equals || |C_a| - |C_b| || since both are multiplication operators.  The
    grid maximum is polished with a bounded scalar search between the
    neighbouring nodes unless ``refine`` is False.
    """
    if grid_size < 1024:
        raise ValueError("gamma_ab needs at least 1024 grid points")

    def diff(t):
        z = np.exp(1j * np.asarray(t))
        return np.abs(mb.modulus_symbol(a, z) - mb.modulus_symbol(b, z))

    t = 2 * np.pi * np.arange(grid_size) / grid_size
    vals = diff(t)
    j = int(np.argmax(vals))
    best = float(vals[j])
    if refine and best > 0:
        h = 2 * np.pi / grid_size
        res = optimize.minimize_scalar(lambda s: -diff(s), bounds=(t[j] - h, t[j] + h),
                                       method="bounded", options={"xatol": 1e-12})
        best = max(best, float(-res.fun))
    return best


def apply_weighted_composition(f, a, weight=None, order=None, oversample=OVERSAMPLE):
    """Apply f -> weight * (f o phi_a) to coefficient data without matrix truncation.

    ``f`` is a TrigPoly or a coefficient array whose first axis runs over
    n = -N..N (columns are separate functions).  The result is sampled on an
    oversampled grid and returned at ``order`` (default: the input order).
    """
    a = mb.check_disk(a)
    if isinstance(f, TrigPoly):
        out = apply_weighted_composition(f.coeffs[:, None], a, weight, order, oversample)
        return TrigPoly(out[:, 0])
    coeffs = np.asarray(f, dtype=complex)
    n_in = (coeffs.shape[0] - 1) // 2
    order = n_in if order is None else order
    grid = SampleGrid.for_order(max(order, n_in), oversample)
    z = grid.nodes
    samples = vandermonde_eval(coeffs, mb.eval_phi(a, z))
    if weight is not None:
        samples = samples * np.asarray(weight(z), dtype=complex)[:, None]
    return analyze_coeffs(samples.T, order).T


def vandermonde_eval(coeffs, points, block=1024):
    """Values of the columns of ``coeffs`` (indexed n = -N..N) at circle points."""
    coeffs = np.asarray(coeffs, dtype=complex)
    n = (coeffs.shape[0] - 1) // 2
    ns = np.arange(-n, n + 1)
    out = np.empty((points.size, coeffs.shape[1]), dtype=complex)
    for start in range(0, points.size, block):
        p = points[start: start + block]
        out[start: start + p.size] = (p[:, None] ** ns[None, :]) @ coeffs
    return out
