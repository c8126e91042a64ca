"""Discrete model of L^2 of the unit circle.

Functions are stored as two-sided Fourier coefficient vectors indexed
``n = -N..N``; position ``k`` of the array holds the coefficient of ``z**(k - N)``.
The inner product is the one for normalised arc length, so the monomials are
orthonormal and Parseval holds without constants.
"""
from dataclasses import dataclass

import numpy as np

from .errors import GridTooSmall

EVEN, ODD = "even", "odd"

#: oversampling factor applied to 2N+1 for every nonlinear sampling operation
OVERSAMPLE = 8


def _pow2_at_least(m):
    return 1 << max(1, int(np.ceil(np.log2(m))))


@dataclass(frozen=True)
class SampleGrid:
    """Equispaced nodes exp(2 pi i j / M) on the circle, M a power of two."""

    size: int

    def __post_init__(self):
        if self.size < 2 or self.size & (self.size - 1):
            raise ValueError(f"grid size must be a power of two, got {self.size}")

    @property
    def nodes(self):
        return np.exp(2j * np.pi * np.arange(self.size) / self.size)

    @classmethod
    def for_order(cls, order, oversample=OVERSAMPLE):
        """Smallest power-of-two grid with at least ``oversample * (2 order + 1)`` nodes."""
        return cls(_pow2_at_least(oversample * (2 * order + 1)))


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """Trigonometric polynomial sum_{|n| <= order} coeffs[n + order] z^n."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0 or c.size < 3:
            raise ValueError("coefficient vector must have odd length 2N+1 with N >= 1")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self):
        return (self.coeffs.size - 1) // 2

    @property
    def indices(self):
        return np.arange(-self.order, self.order + 1)

    def __getitem__(self, n):
        """Coefficient of z**n (zero outside the stored band)."""
        if abs(n) > self.order:
            return 0j
        return self.coeffs[n + self.order]

    def __add__(self, other):
        n = max(self.order, other.order)
        return TrigPoly(self.padded(n).coeffs + other.padded(n).coeffs)

    def __sub__(self, other):
        n = max(self.order, other.order)
        return TrigPoly(self.padded(n).coeffs - other.padded(n).coeffs)

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return pointwise_mul(self, other)
        return TrigPoly(self.coeffs * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        n = max(self.order, other.order)
        return np.array_equal(self.padded(n).coeffs, other.padded(n).coeffs)

    def padded(self, order):
        """Same function stored at a larger order (or truncated to a smaller one)."""
        if order == self.order:
            return self
        return TrigPoly(resize(self.coeffs, order))

    @classmethod
    def monomial(cls, n, order):
        c = np.zeros(2 * order + 1, dtype=complex)
        c[n + order] = 1.0
        return cls(c)

    @classmethod
    def from_function(cls, func, order, grid=None):
        """Fourier coefficients of a function on the circle, sampled on an oversampled grid."""
        grid = grid or SampleGrid.for_order(order)
        return analyze(func(grid.nodes), order)


def resize(coeffs, order):
    """Zero-pad or truncate coefficient arrays (last axis) to the band [-order, order]."""
    coeffs = np.asarray(coeffs, dtype=complex)
    old = (coeffs.shape[-1] - 1) // 2
    if order >= old:
        pad = [(0, 0)] * (coeffs.ndim - 1) + [(order - old, order - old)]
        return np.pad(coeffs, pad)
    return coeffs[..., old - order: old + order + 1]


def synthesize(f, grid):
    """Samples of ``f`` at the grid nodes; exact for trigonometric polynomials."""
    if grid.size < 2 * f.order + 1:
        raise GridTooSmall(f"grid of {grid.size} points cannot carry order {f.order}")
    buf = np.zeros(grid.size, dtype=complex)
    buf[f.indices % grid.size] = f.coeffs
    return np.fft.ifft(buf) * grid.size


def analyze_coeffs(samples, order):
    """Folded discrete Fourier coefficients along the last axis, as a raw array."""
    samples = np.asarray(samples, dtype=complex)
    m = samples.shape[-1]
    if m < 2 * order + 1:
        raise GridTooSmall(f"{m} samples cannot resolve order {order}")
    c = np.fft.fft(samples, axis=-1) / m
    return c[..., np.arange(-order, order + 1) % m]


def analyze(samples, order):
    return TrigPoly(analyze_coeffs(samples, order))


def eval_at(f, z):
    """Evaluate at points of the circle by Horner's rule in z and in conj(z)."""
    z = np.asarray(z, dtype=complex)
    c = f.coeffs
    n = f.order
    pos = np.polyval(c[n:][::-1], z)
    w = np.conj(z)
    neg = w * np.polyval(c[:n], w)
    out = pos + neg
    return out if out.ndim else complex(out)


def vandermonde(points, order):
    """Matrix of points**n, n = -order..order, for points on the circle."""
    points = np.asarray(points, dtype=complex)
    n = np.arange(-order, order + 1)
    return points[:, None] ** n[None, :]


def pointwise_mul(f, h):
    """Coefficients of the product f*h, computed on an alias-free grid."""
    order = f.order + h.order
    grid = SampleGrid.for_order(order, oversample=1)
    return analyze(synthesize(f, grid) * synthesize(h, grid), order)


def parity_project(f, parity):
    if parity not in (EVEN, ODD):
        raise ValueError(f"parity must be {EVEN!r} or {ODD!r}")
    keep = (f.indices % 2 == 0) if parity == EVEN else (f.indices % 2 == 1)
    return TrigPoly(np.where(keep, f.coeffs, 0))


def hardy_split(f):
    """(f_plus, f_minus): the parts with indices n >= 0 and n < 0."""
    plus = np.where(f.indices >= 0, f.coeffs, 0)
    return TrigPoly(plus), TrigPoly(f.coeffs - plus)


def inner_product(f, h):
    n = max(f.order, h.order)
    return complex(np.vdot(h.padded(n).coeffs, f.padded(n).coeffs))


def norm2(f):
    return float(np.linalg.norm(f.coeffs))
