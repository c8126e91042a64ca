"""Eigenspaces N(T -+ I) of the reflections C_a and the symmetries R_a, W_a.

Two finite models live here.

* Ando projections: the compression of the closed form
  P_{N(C_a -+ I)} = (I +- C_a) M_psi, with idempotency and self-adjointness
  residuals stored on the returned :class:`ProjectionMatrix`.
* Exact sections: every eigenspace in play is the image U(E) or U(O) of the
  even or odd functions under an explicit map U (C_omega, a weighted
  C_omega, R_a, W_a, ...), and so is its orthogonal complement.  Images of
  the monomials z^k, k in [-K, K-1], span finite subspaces that lie inside the
  infinite-dimensional eigenspace up to round-off.  The pair geometry in
  :mod:`diskops.grassmann` is computed from these.
"""
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import linalg

from . import moebius as mb
from .circle import (
    EVEN, ODD, OVERSAMPLE, SampleGrid, TrigPoly, analyze_coeffs, eval_at, hardy_split, parity_project,
)
from .errors import NotASymmetry, RankDeficient, ResidualTooLarge
from .operators import (
    OperatorMatrix,
    apply_weighted_composition,
    band_resolved,
    band_residual,
    build_multiplication,
    build_weighted_composition,
    identity,
    trusted_halfwidth,
)

CERTIFICATE_TOL = 1e-6
FAIL_TOL = 1e-4
GRAM_TOL = 1e-10
TAIL_TOL = 1e-13


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal columns (coefficient vectors at order N) spanning a subspace."""

    columns: np.ndarray
    source: str = ""
    rank_tol: float = 1e-8
    params: dict = field(default_factory=dict)

    @property
    def order(self):
        return (self.columns.shape[0] - 1) // 2

    @property
    def rank(self):
        return self.columns.shape[1]

    def gram_defect(self):
        g = self.columns.conj().T @ self.columns
        return float(np.max(np.abs(g - np.eye(self.rank)), initial=0.0))

    def column(self, j):
        return TrigPoly(self.columns[:, j])


@dataclass(frozen=True, eq=False)
class ProjectionMatrix:
    """An orthogonal projection matrix with its residual certificates.

    ``range_basis``/``complement_basis`` are present for projections built
    from exact sections; ``spec`` lets pair computations rebuild the
    projection at another truncation order or section degree.
    """

    base: OperatorMatrix
    idempotency_residual: float
    selfadjoint_residual: float
    trace_estimate: float
    band: int = 0
    range_basis: SubspaceBasis = None
    complement_basis: SubspaceBasis = None
    spec: "SubspaceSpec" = None

    @property
    def order(self):
        return self.base.order

    @property
    def label(self):
        return self.spec.label if self.spec is not None else self.base.params.get("source", "P")

    def is_certified(self, tol=CERTIFICATE_TOL):
        return self.idempotency_residual <= tol and self.selfadjoint_residual <= tol


def certify(matrix, band, label="Composite", params=None, fail_tol=FAIL_TOL, **extra):
    """Wrap a candidate projection with residuals measured on ``band``."""
    e = matrix.entries if isinstance(matrix, OperatorMatrix) else np.asarray(matrix)
    idem = band_residual(e @ e, e, band)
    sa = band_residual(e, e.conj().T, band)
    if max(idem, sa) > fail_tol:
        raise ResidualTooLarge(
            f"projection certificates ||P^2-P||={idem:.1e}, ||P-P*||={sa:.1e} exceed {fail_tol:.0e}")
    base = OperatorMatrix(e, label, dict(params or {}))
    return ProjectionMatrix(base, idem, sa, float(np.trace(e).real), band, **extra)


# --- Ando projections -------------------------------------------------------

def _sign(sign):
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return sign


def projection_C(a, sign, order, oversample=OVERSAMPLE):
    """Orthogonal projection onto N(C_a - sign I) from (I + sign C_a) M_psi.

    C_a M_psi = M_{psi o phi_a} C_a, so the compression is assembled from a
    Toeplitz matrix and one weighted composition, both exact compressions.
    """
    a = mb.check_disk(a)
    _sign(sign)
    if not band_resolved(order, a, a):
        raise ResidualTooLarge(f"order {order} resolves no band for a={a}; certificates unavailable")
    toe = build_multiplication(lambda z: mb.ando_symbol(a, z), order, oversample)
    comp = build_weighted_composition(
        a, lambda z: mb.ando_symbol(a, mb.eval_phi(a, z)), order, oversample)
    e = toe.entries + sign * comp.entries
    band = trusted_halfwidth(order, a, a)
    return certify(e, band, "Composite",
                   {"a": a, "sign": sign, "N": order, "source": f"Ando C sign={sign:+d}"})


def projection_symmetry(S, sign, params=None):
    """(I + sign S) / 2 for a symmetry S, after checking S^2 = I and S = S*."""
    _sign(sign)
    e = S.entries
    ps = params if params is not None else [p for p in (S.params.get("a"),) if p is not None]
    if not band_resolved(S.order, *ps, *ps):
        raise NotASymmetry(f"order {S.order} resolves no band for parameters {ps}")
    band = trusted_halfwidth(S.order, *ps, *ps)
    refl = band_residual(e @ e, np.eye(S.dim), band)
    sa = band_residual(e, e.conj().T, band)
    if max(refl, sa) > CERTIFICATE_TOL:
        raise NotASymmetry(f"||S^2-I||={refl:.1e}, ||S-S*||={sa:.1e} on band {band}")
    p = 0.5 * (np.eye(S.dim) + sign * e)
    return certify(p, band, "Composite",
                   {**S.params, "sign": sign, "source": f"symmetry {S.label} sign={sign:+d}"})


def ando_projection(Q, band):
    """P_R(Q) = Q (Q + Q* - I)^{-1} for a (truncated) idempotent Q.

    Compressions of Q + Q* - I can be numerically singular in the outer
    modes, so the inverse is a pseudo-inverse cut at 1e-10.
    """
    e = Q.entries if isinstance(Q, OperatorMatrix) else np.asarray(Q)
    m = e + e.conj().T - np.eye(e.shape[0])
    p = e @ linalg.pinv(m, rtol=1e-10)
    return certify(p, band, "Composite", {"source": "Ando"})


# --- exact sections ---------------------------------------------------------

def _orthonormalize(cols, source, rank_tol=1e-8):
    """Orthonormal basis of the column span; raises if a column is dependent."""
    if cols.shape[1] == 0:
        return np.zeros_like(cols)
    norms = np.linalg.norm(cols, axis=0)
    q, r = np.linalg.qr(cols / norms)
    q2, r2 = np.linalg.qr(q)
    d = np.abs(np.diag(r))
    if np.any(d < rank_tol):
        raise RankDeficient(f"{source}: column {int(np.argmin(d))} is numerically dependent")
    return q2 * np.sign(np.diag(r2)).conj()


def _chain_stretch(maps, nodes):
    """max over the circle of |(phi_{p_k} o ... o phi_{p_1})'|."""
    z = nodes.copy()
    deriv = np.ones(z.shape)
    for p in maps:
        deriv = deriv * (1 - abs(p) ** 2) / np.abs(1 - np.conj(p) * z) ** 2
        z = mb.eval_phi(p, z)
    return float(deriv.max())


def _chain(maps, z):
    for p in maps:
        z = mb.eval_phi(p, z)
    return z


def image_columns(weight, maps, ks, order, oversample=OVERSAMPLE):
    """Coefficients of weight(z) * (phi_{p_k} o ... o phi_{p_1}(z))**k for k in ks."""
    grid = SampleGrid.for_order(order, oversample)
    z = grid.nodes
    inner = _chain(maps, z)
    w = np.ones(z.shape, complex) if weight is None else np.asarray(weight(z), complex)
    ks = np.asarray(ks)
    out = np.empty((2 * order + 1, ks.size), dtype=complex)
    for start in range(0, ks.size, 128):
        k = ks[start: start + 128]
        samples = w[None, :] * inner[None, :] ** k[:, None]
        out[:, start: start + k.size] = analyze_coeffs(samples, order).T
    return out


def _tail_fraction(weight, maps, ks, order):
    wide = image_columns(weight, maps, ks, 2 * order)
    inside = np.zeros(wide.shape[0], bool)
    inside[order: 3 * order + 1] = True
    tot = np.linalg.norm(wide, axis=0)
    return float(np.max(np.linalg.norm(wide[~inside], axis=0) / tot))


def max_section_degree(weight, maps, order, headroom=1.0):
    """Largest K such that the images of z^k, k in [-K, K-1], fit in [-order, order]."""
    grid = SampleGrid.for_order(order)
    s = _chain_stretch(maps, grid.nodes) * headroom
    k = max(1, int(order / (1.25 * s)))
    while k > 1 and _tail_fraction(weight, maps, [-k, k - 1], order) > TAIL_TOL:
        k = int(0.85 * k)
    return k


def _parity_ks(parity, degree):
    ks = np.arange(-degree, degree)
    return ks[ks % 2 == (0 if parity == EVEN else 1)]


@dataclass(frozen=True)
class Generator:
    """weight * (f o phi_{p_k} o ... o phi_{p_1}) applied to E or O."""

    weight: object
    maps: tuple
    parity: str

    def columns(self, order, degree):
        return image_columns(self.weight, self.maps, _parity_ks(self.parity, degree), order)

    def max_degree(self, order, headroom=1.0):
        return max_section_degree(self.weight, self.maps, order, headroom)


def _flip(parity):
    return ODD if parity == EVEN else EVEN


KINDS = ("C", "R", "W", "KC", "RP", "WP")


@dataclass(frozen=True)
class SubspaceSpec:
    """Names one of the eigenspaces (or pushed eigenspaces) studied here.

    kind  subspace for sign=+1 (sign=-1 swaps E and O)      representation
    C     N(C_a - I)                                        C_omega E
    R     N(R_a - I)                                        |1 - conj(a) z|^(-1/2) C_omega E
    W     N(W_a - I)                                        (1 - conj(a) z)^(-1/2) C_omega E
    KC    M_{1/(1 - conj(a) z)} N(C_a - I)                  (1 - conj(a) z)^(-1) C_omega E
    RP    N(R_{Omega_a} - I)                                R_a E
    WP    N(W_{Omega_a} - I)                                W_a E
    """

    kind: str
    a: complex
    sign: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown subspace kind {self.kind!r}")
        object.__setattr__(self, "a", mb.check_disk(self.a))
        _sign(self.sign)

    @property
    def label(self):
        s = "-" if self.sign == 1 else "+"
        a = f"{self.a:.4g}"
        return {
            "C": f"N(C_{a}{s}I)",
            "R": f"N(R_{a}{s}I)",
            "W": f"N(W_{a}{s}I)",
            "KC": f"M_k N(C_{a}{s}I)",
            "RP": f"N(R_Omega({a}){s}I)",
            "WP": f"N(W_Omega({a}){s}I)",
        }[self.kind]

    def generators(self):
        """(generator of the subspace, generator of its orthogonal complement)."""
        a = self.a
        w = mb.fixed_point_omega(a)
        par = EVEN if self.sign == 1 else ODD
        ca = np.conj(a)
        r = np.sqrt(1 - abs(a) ** 2)
        if self.kind == "C":
            # N(C_a - I)^perp = N(C_a* + I) = R_a N(C_a + I)
            return (Generator(None, (w,), par),
                    Generator(lambda z: r / np.abs(1 - ca * z), (a, w), _flip(par)))
        if self.kind == "R":
            f = lambda z: np.abs(1 - ca * z) ** -0.5
            return Generator(f, (w,), par), Generator(f, (w,), _flip(par))
        if self.kind == "W":
            f = lambda z: 1 / mb.half_power_symbol(a, z)
            return Generator(f, (w,), par), Generator(f, (w,), _flip(par))
        if self.kind == "KC":
            # (W_a X)^perp = W_a X^perp and W_a R_a = M_{|1 - conj(a) z| / (1 - conj(a) z)}
            return (Generator(lambda z: 1 / (1 - ca * z), (w,), par),
                    Generator(lambda z: np.abs(1 - ca * z) / (1 - ca * z), (w,), _flip(par)))
        if self.kind == "RP":
            f = lambda z: r / np.abs(1 - ca * z)
            return Generator(f, (a,), par), Generator(f, (a,), _flip(par))
        f = lambda z: r / (1 - ca * z)
        return Generator(f, (a,), par), Generator(f, (a,), _flip(par))

    def max_degree(self, order, headroom=1.0):
        g, c = self.generators()
        return min(g.max_degree(order, headroom), c.max_degree(order, headroom))

    def sections(self, order, degree):
        """(columns spanning the section, columns spanning the complement section)."""
        g, c = self.generators()
        return g.columns(order, degree), c.columns(order, degree)


UNITARY_KINDS = ("V", "U", "R", "W")


def apply_unitary(kind, param, cols):
    """Apply V, U_theta, R_b or W_b to coefficient columns without truncating the operator."""
    cols = np.asarray(cols, dtype=complex)
    if kind == "V":
        return cols[::-1].copy()
    if kind == "U":
        n = (cols.shape[0] - 1) // 2
        return np.exp(-1j * np.arange(-n, n + 1) * float(param))[:, None] * cols
    b = mb.check_disk(param)
    weight = (lambda z: mb.modulus_symbol(b, z)) if kind == "R" else (lambda z: mb.normalized_kernel(b, z))
    if kind not in ("R", "W"):
        raise ValueError(f"unknown unitary {kind!r}; expected one of {UNITARY_KINDS}")
    return apply_weighted_composition(cols, b, weight)


@dataclass(frozen=True)
class TransformedSpec:
    """The image U S of a named subspace under one of the unitaries V, U_theta, R_b, W_b.

    The section degree is lowered by the stretch of U so that the images of
    the section columns still fit in the coefficient window.
    """

    base: object
    kind: str
    param: object = None

    def __post_init__(self):
        if self.kind not in UNITARY_KINDS:
            raise ValueError(f"unknown unitary {self.kind!r}; expected one of {UNITARY_KINDS}")

    @property
    def label(self):
        p = "" if self.param is None else f"[{self.param:.4g}]" if self.kind in ("R", "W") \
            else f"[{float(self.param):.4g}]"
        return f"{self.kind}{p} {self.base.label}"

    def headroom(self):
        return mb.stretch(self.param) if self.kind in ("R", "W") else 1.0

    def max_degree(self, order, headroom=1.0):
        return self.base.max_degree(order, headroom * self.headroom())

    def sections(self, order, degree):
        s, c = self.base.sections(order, degree)
        return apply_unitary(self.kind, self.param, s), apply_unitary(self.kind, self.param, c)


def eigenprojection(spec, order, degree=None, headroom=1.0):
    """Orthogonal projection onto the degree-K exact section of ``spec``."""
    degree = degree or spec.max_degree(order, headroom)
    cols, comp = spec.sections(order, degree)
    params = {"label": spec.label, "N": order, "degree": degree}
    rb = SubspaceBasis(_orthonormalize(cols, spec.label), spec.label, params=params)
    cb = SubspaceBasis(_orthonormalize(comp, spec.label + "^perp"), spec.label + "^perp", params=params)
    return projection_from_basis(rb, cb, spec=spec, label=spec.label)


def transform(P, kind, param=None, degree=None):
    """Projection onto U S for a section-built projection P onto S."""
    if P.spec is None:
        raise ValueError("transform needs a projection built from a subspace spec")
    return eigenprojection(TransformedSpec(P.spec, kind, param), P.order, degree)


def projection_from_basis(range_basis, complement_basis=None, spec=None, label="P"):
    b = range_basis.columns
    p = b @ b.conj().T
    n = range_basis.order
    return certify(p, n, "Composite", {"source": label, "N": n},
                   range_basis=range_basis, complement_basis=complement_basis, spec=spec)


def subspace_from_vectors(columns, source="custom", complement=None):
    """ProjectionMatrix onto the span of arbitrary coefficient columns."""
    cols = np.asarray(columns, dtype=complex)
    rb = SubspaceBasis(_orthonormalize(cols, source), source)
    cb = None
    if complement is not None:
        cb = SubspaceBasis(_orthonormalize(np.asarray(complement, complex), source + "^perp"),
                           source + "^perp")
    return projection_from_basis(rb, cb, label=source)


# --- spanning bases from the eigenspace characterisations --------------------

def _monomial_images(a, sign, m_max, order):
    w = mb.fixed_point_omega(a)
    ks = np.arange(-m_max, m_max + 1)
    ks = ks[ks % 2 == (0 if sign == 1 else 1)]
    # lowest frequencies first, so the z^0 (or z^1) image leads the orthonormalisation
    ks = ks[np.lexsort((ks < 0, np.abs(ks)))]
    return image_columns(None, (w,), ks, order), ks


def _check_m_max(m_max, order):
    if m_max > order // 4:
        raise ValueError(f"m_max={m_max} exceeds order/4={order // 4}")


def basis_N_C(a, sign, m_max, order):
    """Orthonormalised C_omega images of the even (sign=+1) or odd monomials z^k, |k| <= m_max."""
    a = mb.check_disk(a)
    _sign(sign)
    _check_m_max(m_max, order)
    cols, ks = _monomial_images(a, sign, m_max, order)
    src = f"C_omega {'even' if sign == 1 else 'odd'} monomials"
    return SubspaceBasis(_orthonormalize(cols, src), src,
                         params={"a": a, "sign": sign, "ks": ks.tolist()})


def _weighted_basis(a, sign, m_max, order, weight, name):
    a = mb.check_disk(a)
    _sign(sign)
    _check_m_max(m_max, order)
    cols, ks = _monomial_images(a, sign, m_max, order)
    grid = SampleGrid.for_order(order)
    z = grid.nodes
    samples = np.fft.ifft(_fold(cols, grid.size), axis=0) * grid.size
    cols = analyze_coeffs((samples * weight(z)[:, None]).T, order).T
    src = f"{name} weighted C_omega {'even' if sign == 1 else 'odd'} monomials"
    return SubspaceBasis(_orthonormalize(cols, src), src,
                         params={"a": a, "sign": sign, "ks": ks.tolist()})


def _fold(cols, m):
    n = (cols.shape[0] - 1) // 2
    buf = np.zeros((m, cols.shape[1]), complex)
    buf[np.arange(-n, n + 1) % m] = cols
    return buf


def basis_N_R(a, sign, m_max, order):
    """Spanning family of N(R_a - sign I): |1 - conj(a) z|^(-1/2) times basis_N_C."""
    a = mb.check_disk(a)
    return _weighted_basis(a, sign, m_max, order,
                           lambda z: np.abs(1 - np.conj(a) * z) ** -0.5, "R")


def basis_N_W(a, sign, m_max, order):
    """Spanning family of N(W_a - sign I): (1 - conj(a) z)^(-1/2) times basis_N_C.

    The reciprocal power is the one that commutes with W_a: with
    u = (1 - conj(a) z)^(-1/2) one has W_a u = u exactly.
    """
    a = mb.check_disk(a)
    return _weighted_basis(a, sign, m_max, order,
                           lambda z: 1 / mb.half_power_symbol(a, z), "W")


def eigen_residual(basis, kind, a, sign, order=None):
    """max_j ||T v_j - sign v_j|| with T in {C, R, W} applied without truncation."""
    a = mb.check_disk(a)
    weights = {
        "C": None,
        "R": lambda z: mb.modulus_symbol(a, z),
        "W": lambda z: mb.normalized_kernel(a, z),
    }
    cols = basis.columns
    n = basis.order
    out_order = order or 4 * n
    img = apply_weighted_composition(cols, a, weights[kind], out_order)
    pad = np.zeros_like(img)
    pad[out_order - n: out_order + n + 1] = cols
    return float(np.max(np.linalg.norm(img - sign * pad, axis=0), initial=0.0))


def check_characterization_R(a, f, order=None):
    """Defect of f from N(R_a - I) in the form of the fixed-point criterion.

    Returns the norm of the odd part of
    (|1 + conj(w) z| / |1 - conj(w) z|)^(1/2) * f(phi_w(z)), w = omega_a.
    """
    a = mb.check_disk(a)
    w = mb.fixed_point_omega(a)
    order = order or 4 * f.order
    weight = lambda z: np.sqrt(np.abs(1 + np.conj(w) * z) / np.abs(1 - np.conj(w) * z))
    g = apply_weighted_composition(f, w, weight, order)
    return float(np.linalg.norm(parity_project(g, ODD).coeffs))


def hminus_constant_coefficient(a, g, grid_size=None):
    """<C_a g, 1> for g with only negative Fourier modes, by quadrature."""
    a = mb.check_disk(a)
    if np.any(np.abs(g.coeffs[g.indices >= 0]) > 0):
        raise ValueError("g must have no coefficients with index >= 0")
    grid = SampleGrid(grid_size) if grid_size else SampleGrid.for_order(4 * g.order)
    vals = eval_at(g, mb.eval_phi(a, grid.nodes))
    return complex(np.mean(vals))


def hardy_parts_residual(basis, a, sign=1):
    """max over columns of ||C_a f_pm - sign f_pm|| for the H+/H- parts separately."""
    worst = 0.0
    for j in range(basis.rank):
        f = basis.column(j)
        for part in hardy_split(f):
            img = apply_weighted_composition(part, a, None, 4 * f.order)
            worst = max(worst, np.linalg.norm((img - sign * part.padded(4 * f.order)).coeffs))
    return float(worst)


def complementarity_defect(a, order, family="C"):
    """Central-band norm of P_+ + P_- - target: 2 M_psi for C_a, I for R_a and W_a."""
    a = mb.check_disk(a)
    if family == "C":
        pp, pm = projection_C(a, 1, order), projection_C(a, -1, order)
        target = 2 * build_multiplication(lambda z: mb.ando_symbol(a, z), order).entries
    else:
        from .operators import build_R, build_W
        S = (build_R if family == "R" else build_W)(a, order)
        pp, pm = projection_symmetry(S, 1), projection_symmetry(S, -1)
        target = identity(order).entries
    return band_residual(pp.base.entries + pm.base.entries, target, pp.band)
