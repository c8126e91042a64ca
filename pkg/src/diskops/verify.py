"""Residual suites for the identities the package relies on.

Each suite returns a list of :class:`Check` records; the CLI ``verify``
command and the acceptance tests both read them.  Matrix identities are
measured on the band returned by :func:`operators.trusted_halfwidth` for the
parameters of all the composition factors involved.
"""
from dataclasses import asdict, dataclass

import numpy as np

from . import moebius as mb
from . import operators as op
from .circle import EVEN, ODD, SampleGrid
from .eigenspaces import (
    basis_N_C,
    basis_N_R,
    basis_N_W,
    check_characterization_R,
    complementarity_defect,
    eigen_residual,
    projection_C,
)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self):
        return bool(self.residual <= self.tol)

    def as_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


def moebius_suite(a, samples=1000, seed=0, tol=1e-12):
    """Pointwise scalar identities at ``a`` and at random disk points."""
    a = mb.check_disk(a)
    rng = np.random.default_rng(seed)
    r = 0.95 * np.sqrt(rng.uniform(size=samples))
    pts = r * np.exp(2j * np.pi * rng.uniform(size=samples))
    zs = np.exp(2j * np.pi * rng.uniform(size=samples))
    inv = max(abs(mb.eval_phi(p, mb.eval_phi(p, z)) - z) for p, z in zip(pts, zs))
    grid = SampleGrid(256).nodes
    w = mb.fixed_point_omega(a)
    big = mb.omega_inverse(a)
    phis1 = np.max(np.abs(mb.eval_phi(w, mb.eval_phi(a, grid)) + mb.eval_phi(w, grid)))
    phis2 = np.max(np.abs(mb.eval_phi(a, mb.eval_phi(w, grid)) + mb.eval_phi(-w, grid)))
    lhs = np.abs(1 - np.conj(a) * mb.eval_phi(w, grid))
    rhs = np.sqrt(1 - abs(a) ** 2) * np.abs(1 + np.conj(w) * grid) / np.abs(1 - np.conj(w) * grid)
    fixed = max(abs(mb.eval_phi(a, w) - w), abs(mb.fixed_point_omega(big) - a))
    om = abs(1 - abs(big) ** 2 - (1 - abs(a) ** 2) ** 2 / (1 + abs(a) ** 2) ** 2)
    return [
        Check("involution phi_p(phi_p(z)) = z", float(inv), tol),
        Check("phi_w(phi_a(z)) = -phi_w(z)", float(phis1), tol),
        Check("phi_a(phi_w(z)) = -phi_{-w}(z)", float(phis2), tol),
        Check("|1 - conj(a) phi_w| formula", float(np.max(np.abs(lhs - rhs))), tol),
        Check("fixed point equations", float(fixed), tol),
        Check("1 - |Omega|^2 identity", float(om), tol),
    ]


def _M(g, order):
    return op.build_multiplication(g, order).entries


def operator_suite(a, order, tol=1e-6):
    """Reflection, symmetry and conjugation residuals on the trusted band."""
    a = mb.check_disk(a)
    ca = np.conj(a)
    w = mb.fixed_point_omega(a)
    big = mb.omega_inverse(a)
    n = order
    I = np.eye(2 * n + 1)
    C = op.build_composition(a, n).entries
    Cs = op.build_adjoint_composition(a, n).entries
    R = op.build_R(a, n).entries
    W = op.build_W(a, n).entries
    C0 = op.build_C0(n).entries
    Cw = op.build_composition(w, n).entries
    Rw = op.build_R(w, n).entries
    V = op.build_V(n).entries
    A = op.build_modulus(a, n).entries
    cases = [
        ("C_a^2 = I", C @ C, I, (a, a)),
        ("R_a^2 = I", R @ R, I, (a, a)),
        ("W_a^2 = I", W @ W, I, (a, a)),
        ("R_a = R_a*", R, R.conj().T, (a,)),
        ("W_a = W_a*", W, W.conj().T, (a,)),
        ("R_a C_a R_a = C_a*", R @ C @ R, Cs, (a, a, a)),
        ("C_a = C_w C_0 C_w", Cw @ C0 @ Cw, C, (w, w)),
        ("W_a C_a W_a = M C_a", W @ C @ W, _M(lambda z: (1 - abs(a) ** 2) / (1 - ca * z) ** 2, n) @ C,
         (a, a, a)),
        ("R_a C_0 R_a = R_Omega", R @ C0 @ R, op.build_R(big, n).entries, (a, a)),
        ("W_a C_0 W_a = W_Omega", W @ C0 @ W, op.build_W(big, n).entries, (a, a)),
        ("R_w C_a R_w = M C_0", Rw @ C @ Rw,
         _M(lambda z: np.abs(1 + np.conj(w) * z) / np.abs(1 - np.conj(w) * z), n) @ C0, (w, a, w)),
        ("V C_a = C_conj(a) V", V @ C, op.build_composition(ca, n).entries @ V, (a,)),
        ("W_a R_a = M", W @ R, _M(lambda z: np.abs(1 - ca * z) / (1 - ca * z), n), (a, a)),
        ("R_a W_a = M", R @ W, _M(lambda z: (1 - ca * z) / np.abs(1 - ca * z), n), (a, a)),
        ("C_w C_a C_w = C_(w.a)", Cw @ C @ Cw,
         op.build_composition(mb.dot_compose(w, a), n).entries, (w, a, w)),
        ("C_a = R_a |C_a|", C, R @ A, (a,)),
        ("|C_a|^2 = C_a* C_a", A @ A, Cs @ C, (a,)),
    ]
    return [Check(name, op.band_residual(lhs, rhs, op.trusted_halfwidth(n, *ps)), tol)
            for name, lhs, rhs, ps in cases]


def eigenspace_suite(a, order, tol=1e-6, m_max=None):
    """Ando certificates, complementarity and eigenvector residuals."""
    a = mb.check_disk(a)
    m_max = m_max or max(1, order // 8)
    out = []
    for sign in (1, -1):
        P = projection_C(a, sign, order)
        out.append(Check(f"Ando P{'+' if sign > 0 else '-'} idempotent", P.idempotency_residual, tol))
        out.append(Check(f"Ando P{'+' if sign > 0 else '-'} self-adjoint", P.selfadjoint_residual, tol))
    out.append(Check("P+ + P- = 2 M_psi", complementarity_defect(a, order, "C"), tol))
    out.append(Check("R family P+ + P- = I", complementarity_defect(a, order, "R"), tol))
    out.append(Check("W family P+ + P- = I", complementarity_defect(a, order, "W"), tol))
    for sign in (1, -1):
        s = "+" if sign > 0 else "-"
        bc = basis_N_C(a, sign, m_max, order)
        out.append(Check(f"C_a v = {s}v on C_w {EVEN if sign > 0 else ODD} images",
                         eigen_residual(bc, "C", a, sign), tol))
        out.append(Check(f"R_a v = {s}v on weighted images",
                         eigen_residual(basis_N_R(a, sign, m_max, order), "R", a, sign), tol))
        out.append(Check(f"W_a v = {s}v on weighted images",
                         eigen_residual(basis_N_W(a, sign, m_max, order), "W", a, sign), tol))
    br = basis_N_R(a, 1, m_max, order)
    out.append(Check("fixed-point criterion for N(R_a - I)",
                     max(check_characterization_R(a, br.column(j)) for j in range(br.rank)), tol))
    return out


def run_all(a, order, tol=1e-6):
    return moebius_suite(a) + operator_suite(a, order, tol) + eigenspace_suite(a, order, tol)
