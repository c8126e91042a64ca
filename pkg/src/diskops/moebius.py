"""Scalar maps attached to the disk automorphism phi_a(z) = (a - z) / (1 - conj(a) z).

Everything here is closed form and vectorised over ``z``; the matrix code in
:mod:`diskops.operators` is checked against these functions.
"""
import numpy as np

from .errors import DegenerateDenominator, NotInDisk

DISK_MARGIN = 1e-12
CIRCLE_TOL = 1e-12


def check_disk(a):
    """Return ``a`` as a Python complex, rejecting points with |a| > 1 - 1e-12."""
    a = complex(a)
    if not np.isfinite(a) or abs(a) > 1.0 - DISK_MARGIN:
        raise NotInDisk(f"parameter {a!r} is not inside the unit disk")
    return a


def check_circle(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1.0) > CIRCLE_TOL):
        raise NotInDisk("points are not on the unit circle")
    return z


def stretch(a):
    """Largest value of |phi_a'| on the circle, (1 + |a|) / (1 - |a|).

    A Fourier mode of frequency n is carried by C_a to frequencies up to
    about ``stretch(a) * n``.
    """
    r = abs(complex(a))
    return (1.0 + r) / (1.0 - r)


def eval_phi(a, z):
    a = check_disk(a)
    z = np.asarray(z, dtype=complex)
    den = 1.0 - np.conj(a) * z
    if np.any(np.abs(den) <= 1e-14):
        raise DegenerateDenominator(f"1 - conj(a) z vanishes for a={a}")
    out = (a - z) / den
    return out if out.ndim else complex(out)


def fixed_point_omega(a):
    """The fixed point of phi_a inside the disk.

    Uses the rationalised form a / (1 + sqrt(1 - |a|^2)), algebraically equal
    to (1 - sqrt(1 - |a|^2)) / conj(a) but free of cancellation for small a.
    """
    a = check_disk(a)
    if a == 0:
        return 0j
    return a / (1.0 + np.sqrt(1.0 - abs(a) ** 2))


def omega_inverse(a):
    """The parameter Omega with fixed_point_omega(Omega) == a, i.e. 2a / (1 + |a|^2)."""
    a = check_disk(a)
    return 2.0 * a / (1.0 + abs(a) ** 2)


def dot_compose(d, b):
    """Parameter of C_d C_b C_d, which is again a composition operator."""
    d = check_disk(d)
    b = check_disk(b)
    num = 2 * d - b - d * d * np.conj(b)
    den = abs(d) ** 2 - d * np.conj(b) - np.conj(d) * b + 1.0
    return complex(num / den.real)


def szego_kernel(a, z):
    a = check_disk(a)
    out = 1.0 / (1.0 - np.conj(a) * np.asarray(z, dtype=complex))
    return out if out.ndim else complex(out)


def szego_norm(a):
    a = check_disk(a)
    return 1.0 / np.sqrt(1.0 - abs(a) ** 2)


def ando_symbol(a, z):
    """psi_a(z) = (1 + (1 - |a|^2) / |1 - conj(a) z|^2)^(-1); real, in (0, 1)."""
    a = check_disk(a)
    q = np.abs(1.0 - np.conj(a) * np.asarray(z, dtype=complex)) ** 2
    out = q / (q + 1.0 - abs(a) ** 2)
    return out if out.ndim else float(out)


def half_power_symbol(a, z):
    """Principal square root of 1 - conj(a) z.

    Re(1 - conj(a) z) >= 1 - |a| > 0 on the circle, so the branch cut is
    never reached and the result is continuous in z.
    """
    a = check_disk(a)
    w = 1.0 - np.conj(a) * np.asarray(z, dtype=complex)
    out = np.exp(0.5 * np.log(w))
    return out if out.ndim else complex(out)


def modulus_symbol(a, z):
    """Symbol of |C_a|: (1 - |a|^2)^(1/2) / |1 - conj(a) z|."""
    a = check_disk(a)
    return np.sqrt(1.0 - abs(a) ** 2) / np.abs(1.0 - np.conj(a) * np.asarray(z, dtype=complex))


def normalized_kernel(a, z):
    """Symbol of the multiplier in W_a: (1 - |a|^2)^(1/2) / (1 - conj(a) z)."""
    a = check_disk(a)
    return np.sqrt(1.0 - abs(a) ** 2) / (1.0 - np.conj(a) * np.asarray(z, dtype=complex))


def adjoint_weight(a, z):
    """(1 - |a|^2) / |1 - conj(a) z|^2, the multiplier with C_a* = M C_a."""
    a = check_disk(a)
    return (1.0 - abs(a) ** 2) / np.abs(1.0 - np.conj(a) * np.asarray(z, dtype=complex)) ** 2


def fixed_point_pair(a):
    """(a, omega_a, Omega_a) after checking both defining equations."""
    a = check_disk(a)
    w = fixed_point_omega(a)
    big = omega_inverse(a)
    if abs(eval_phi(a, w) - w) > 1e-12 or abs(fixed_point_omega(big) - a) > 1e-12:
        raise ArithmeticError(f"fixed point equations fail for a={a}")
    return a, w, big
