"""Relative position of two subspaces given by their orthogonal projections.

Principal angles, the four intersections S∩T, S∩T⊥, S⊥∩T, S⊥∩T⊥, the
spectrum of P_S - P_T, product norms, and the geodesic of the Grassmann
manifold joining S and T when it exists.

Projections built from exact sections (see :mod:`diskops.eigenspaces`) carry
orthonormal bases of S and of S⊥ and can be rebuilt at a common section
degree or at a doubled truncation order; the intersection counts use that to
separate finite intersections from infinite ones.
"""
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .eigenspaces import (
    CERTIFICATE_TOL,
    ProjectionMatrix,
    SubspaceBasis,
    SubspaceSpec,
    certify,
    eigenprojection,
)
from .errors import CertificateInvalid, LogBranchFailure, UnstableRank
from .operators import OperatorMatrix

INTERSECTION_TOL = 1e-6
BRANCH_RADIUS = 1e-6
INF = math.inf


@dataclass(frozen=True, eq=False)
class PairReport:
    labels: tuple
    principal_cosines: np.ndarray
    dim_meet: float
    dim_meet_perp: float
    dim_perp_meet: float
    diff_spectrum: np.ndarray
    triple_norm: float
    product_norm: float
    dim_perp_perp: float = 0
    order: int = 0
    degree: int = 0
    params: dict = field(default_factory=dict)

    @property
    def dims(self):
        return (self.dim_meet, self.dim_meet_perp, self.dim_perp_meet, self.dim_perp_perp)


@dataclass(frozen=True, eq=False)
class GeodesicSegment:
    generator: OperatorMatrix
    start: ProjectionMatrix
    skew_residual: float
    codiag_residual: float
    norm_bound: float
    target: ProjectionMatrix = None

    @property
    def normalized(self):
        return self.norm_bound <= np.pi / 2 + 1e-8

    def endpoint_residual(self):
        if self.target is None:
            return float("nan")
        g = geodesic_point(self, 1.0)
        return float(np.linalg.norm(g.base.entries - self.target.base.entries, 2))


# --- bases ------------------------------------------------------------------

def _require(P):
    if not P.is_certified(CERTIFICATE_TOL):
        raise CertificateInvalid(
            f"{P.label}: certificates {P.idempotency_residual:.1e}, {P.selfadjoint_residual:.1e}")


def range_basis(P):
    """Orthonormal basis of the range, from the stored section or by thresholding at 1/2."""
    if P.range_basis is not None:
        return P.range_basis.columns
    e = P.base.entries
    w, v = np.linalg.eigh(0.5 * (e + e.conj().T))
    return v[:, w > 0.5]


def complement_basis(P):
    if P.complement_basis is not None:
        return P.complement_basis.columns
    e = P.base.entries
    w, v = np.linalg.eigh(0.5 * (e + e.conj().T))
    return v[:, w <= 0.5]


def _cosines(A, B):
    if A.shape[1] == 0 or B.shape[1] == 0:
        return np.zeros(0)
    s = np.linalg.svd(A.conj().T @ B, compute_uv=False)
    return np.minimum(s, 1.0)


def align(P, Q, order=None, degree=None):
    """Rebuild two section projections at a common truncation order and degree.

    Projections without a spec are returned unchanged (and must already share
    their order).
    """
    order = order or P.order
    if P.spec is None or Q.spec is None:
        if P.order != Q.order or order != P.order:
            raise ValueError("projections without a subspace spec cannot be rebuilt")
        return P, Q, 0
    if degree is None:
        degree = min(P.spec.max_degree(order), Q.spec.max_degree(order))
    return eigenprojection(P.spec, order, degree), eigenprojection(Q.spec, order, degree), degree


def principal_cosines(P, Q):
    """Cosines of the principal angles between the ranges, descending."""
    _require(P)
    _require(Q)
    return _cosines(range_basis(P), range_basis(Q))


def _counts(P, Q, tol):
    bp, cp = range_basis(P), complement_basis(P)
    bq, cq = range_basis(Q), complement_basis(Q)
    return tuple(int(np.sum(_cosines(x, y) >= 1 - tol))
                 for x, y in ((bp, bq), (bp, cq), (cp, bq), (cp, cq)))


def _classify(c1, c2, what):
    if c1 == c2:
        return c1
    if c1 >= 3 and c2 >= 1.6 * c1:
        return INF
    raise UnstableRank(f"{what}: intersection count {c1} at N changes to {c2} at 2N")


def intersection_dims(P, Q, tol=INTERSECTION_TOL, stability=True):
    """(dim S∩T, dim S∩T⊥, dim S⊥∩T, dim S⊥∩T⊥) by counting cosines >= 1 - tol.

    Section projections are compared at N and at 2N with proportionally
    larger sections.  A count that stays put is a finite dimension; a count
    that grows with the section (roughly doubling) is reported as ``inf``;
    anything else raises UnstableRank.
    """
    if not 1e-8 <= tol <= 1e-2:
        raise ValueError("tol must lie in [1e-8, 1e-2]")
    _require(P)
    _require(Q)
    if not stability or P.spec is None or Q.spec is None:
        return _counts(P, Q, tol)
    p1, q1, _ = align(P, Q)
    p2, q2, _ = align(P, Q, order=2 * P.order)
    names = ("S∩T", "S∩T⊥", "S⊥∩T", "S⊥∩T⊥")
    return tuple(_classify(c1, c2, f"{P.label}, {Q.label}: {n}")
                 for c1, c2, n in zip(_counts(p1, q1, tol), _counts(p2, q2, tol), names))


def _joint_span(P, Q):
    return linalg.orth(np.hstack([range_basis(P), range_basis(Q)]), rcond=1e-10)


def difference_spectrum(P, Q):
    """Ascending eigenvalues of P - Q on the span of the two ranges.

    Off that span P - Q vanishes identically, so the compression drops only
    the trivial zeros contributed by S⊥∩T⊥.
    """
    _require(P)
    _require(Q)
    V = _joint_span(P, Q)
    d = P.base.entries - Q.base.entries
    m = V.conj().T @ d @ V
    return np.linalg.eigvalsh(0.5 * (m + m.conj().T))


def product_norm(P, Q):
    """||P Q||, the largest principal cosine."""
    c = principal_cosines(P, Q)
    return float(c[0]) if c.size else 0.0


def triple_norm(P, Q):
    """||P Q P||."""
    _require(P)
    _require(Q)
    B, C = range_basis(P), range_basis(Q)
    if B.shape[1] == 0 or C.shape[1] == 0:
        return 0.0
    m = B.conj().T @ C
    return float(np.linalg.norm(m @ m.conj().T, 2))


def pair_report(P, Q, tol=INTERSECTION_TOL, stability=True, align_sections=True):
    """All pair quantities, computed on aligned sections when available."""
    degree = 0
    if align_sections and P.spec is not None and Q.spec is not None:
        P, Q, degree = align(P, Q)
    cos = principal_cosines(P, Q)
    dims = intersection_dims(P, Q, tol, stability)
    return PairReport(
        labels=(P.label, Q.label),
        principal_cosines=cos,
        dim_meet=dims[0],
        dim_meet_perp=dims[1],
        dim_perp_meet=dims[2],
        dim_perp_perp=dims[3],
        diff_spectrum=difference_spectrum(P, Q),
        triple_norm=triple_norm(P, Q),
        product_norm=float(cos[0]) if cos.size else 0.0,
        order=P.order,
        degree=degree,
    )


# --- geodesics --------------------------------------------------------------

def geodesic_exists(P, Q, tol=INTERSECTION_TOL):
    """'yes_unique', 'yes_many' or 'no' from dim S∩T⊥ and dim S⊥∩T."""
    _, meet_perp, perp_meet, _ = intersection_dims(P, Q, tol)
    if meet_perp == 0 and perp_meet == 0:
        return "yes_unique"
    if meet_perp == perp_meet:
        return "yes_many"
    return "no"


def geodesic_generator(P, Q):
    """Z = log(eps_T eps_S) / 2 with eps = 2P - I, on the span of the two ranges.

    The unitary eps_T eps_S is diagonalised through its complex Schur form and
    its eigenphases are taken in (-pi, pi].  Off the joint span both symmetries
    are -I, so Z is extended by zero.
    """
    _require(P)
    _require(Q)
    V = _joint_span(P, Q)
    k = V.shape[1]
    n = P.base.dim
    if k == 0:
        Z = np.zeros((n, n), complex)
    else:
        p = V.conj().T @ P.base.entries @ V
        q = V.conj().T @ Q.base.entries @ V
        es = 2 * p - np.eye(k)
        et = 2 * q - np.eye(k)
        T, U = linalg.schur(et @ es, output="complex")
        lam = np.diag(T)
        near = np.abs(lam + 1)
        if near.size and near.min() <= BRANCH_RADIUS:
            raise LogBranchFailure(
                f"eps_T eps_S has an eigenvalue within {near.min():.1e} of -1")
        zv = 0.5 * (U * (1j * np.angle(lam))) @ U.conj().T
        Z = V @ zv @ V.conj().T
    eps = 2 * P.base.entries - np.eye(n)
    skew = float(np.linalg.norm(Z + Z.conj().T, 2))
    codiag = float(np.linalg.norm(Z @ eps + eps @ Z, 2))
    norm = float(np.linalg.norm(Z, 2))
    if max(skew, codiag) > CERTIFICATE_TOL:
        raise CertificateInvalid(f"generator residuals skew={skew:.1e}, codiagonal={codiag:.1e}")
    gen = OperatorMatrix(Z, "Composite", {"source": "geodesic generator"})
    return GeodesicSegment(gen, P, skew, codiag, norm, target=Q)


def geodesic_point(seg, t):
    """The projection exp(tZ) P exp(-tZ)."""
    if t == 0:
        return seg.start
    Z = seg.generator.entries
    # Z is skew, so exp(-tZ) is the adjoint of exp(tZ)
    u = linalg.expm(t * Z)
    e = u @ seg.start.base.entries @ u.conj().T
    return certify(e, seg.start.order, "Composite", {"source": f"geodesic t={t:g}"})


# --- planar toy and exploratory sweep -----------------------------------------

def planar_toy(alpha):
    """Projections onto span(1, 0) and span(cos alpha, sin alpha), embedded in C^3."""
    def line(v):
        v = np.asarray(v, complex)[:, None]
        b = SubspaceBasis(v / np.linalg.norm(v), "line")
        return certify(v @ v.conj().T / np.vdot(v, v), 1, "Composite",
                       {"source": "planar line"}, range_basis=b)

    return line([1, 0, 0]), line([np.cos(alpha), np.sin(alpha), 0])


def remark_sweep(pairs, order=64, top=3):
    """Top cosines between N(C_a - I) and N(C_b - I)⊥ for each (a, b); exploratory only."""
    rows = []
    for a, b in pairs:
        S = SubspaceSpec("C", a, 1)
        T = SubspaceSpec("C", b, 1)
        degree = min(S.max_degree(order), T.max_degree(order))
        ps = eigenprojection(S, order, degree)
        pt = eigenprojection(T, order, degree)
        cos = _cosines(range_basis(ps), complement_basis(pt))
        rows.append({"a": complex(a), "b": complex(b), "degree": degree,
                     "top_cosines": [float(c) for c in cos[:top]]})
    return rows


def subspace(kind, a=0.0, sign=1, order=128, degree=None):
    """Shortcut: section projection for a named eigenspace.

    ``kind`` is one of the SubspaceSpec kinds or "E"/"O" for the even and odd
    functions (the eigenspaces of C_0).
    """
    if kind in ("E", "O"):
        return eigenprojection(SubspaceSpec("C", 0.0, 1 if kind == "E" else -1), order, degree)
    return eigenprojection(SubspaceSpec(kind, a, sign), order, degree)
