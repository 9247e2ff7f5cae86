"""Special functions used by the analytic shadow-moment results.

Gamma, complete elliptic integrals of the first and second kind (real and
purely imaginary modulus, via AGM), the generalized hypergeometric 3F2 at
unit argument, and Catalan's constant.  Modulus convention: K(k), E(k)
take the modulus k, not the parameter m = k^2.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import mpmath


class DomainError(ValueError):
    """Argument outside the supported domain."""


class ConvergenceError(ValueError):
    """Series parameters outside the convergence region."""


@dataclass(frozen=True)
class EllipticPair:
    k_value: float
    e_value: float


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0 (poles and negative arguments unsupported)."""
    if x <= 0:
        raise DomainError(f"gamma_fn needs x > 0, got {x}")
    return math.gamma(x)


def _agm_ke(k: float, kc: float) -> tuple[float, float]:
    """K(k) and E(k) by the arithmetic-geometric mean, given k' = sqrt(1-k^2).

    Quadratic convergence: machine precision in < 10 iterations for any
    modulus bounded away from 1.
    """
    a, b = 1.0, kc
    c = k
    csum = 0.5 * c * c  # sum of 2^{n-1} c_n^2
    power = 0.5
    for _ in range(60):
        if abs(c) < 1e-18 * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        power *= 2.0
        csum += power * c * c
    big_k = math.pi / (2.0 * a)
    big_e = big_k * (1.0 - csum)
    return big_k, big_e


def elliptic_real(k: float) -> EllipticPair:
    """Complete elliptic integrals K(k), E(k) for real modulus k in [0, 1).

    E alone is additionally defined at k = 1 (E(1) = 1); K diverges there.
    """
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"modulus must lie in [0, 1], got {k}")
    if k == 1.0:
        raise DomainError("K(k) diverges at k = 1; use elliptic_e for E(1)")
    kc = math.sqrt((1.0 - k) * (1.0 + k))
    big_k, big_e = _agm_ke(k, kc)
    return EllipticPair(k_value=big_k, e_value=big_e)


def elliptic_e(k: float) -> float:
    """E(k) for real modulus k in [0, 1] (defined at the endpoint k = 1)."""
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"modulus must lie in [0, 1], got {k}")
    if k == 1.0:
        return 1.0
    return elliptic_real(k).e_value


def elliptic_imag(t: float) -> EllipticPair:
    """K(i*t) and E(i*t) for t >= 0, via the imaginary-modulus transformation.

    K(it) = K(t/sqrt(1+t^2)) / sqrt(1+t^2),
    E(it) = sqrt(1+t^2) * E(t/sqrt(1+t^2)).
    Real arithmetic throughout; total for all finite t >= 0.
    """
    if t < 0 or not math.isfinite(t):
        raise DomainError(f"need finite t >= 0, got {t}")
    if t == 0.0:
        half_pi = 0.5 * math.pi
        return EllipticPair(k_value=half_pi, e_value=half_pi)
    s = math.hypot(1.0, t)
    k = t / s
    kc = 1.0 / s  # complementary modulus, computed without cancellation
    big_k, big_e = _agm_ke(k, kc)
    return EllipticPair(k_value=big_k / s, e_value=s * big_e)


def hyp3f2_unit(a1: float, a2: float, a3: float, b1: float, b2: float) -> float:
    """Generalized hypergeometric 3F2(a1,a2,a3; b1,b2; 1).

    Requires sum(b) - sum(a) > 0 (convergence at unit argument) and no
    lower parameter a nonpositive integer.  Evaluated in 30-digit working
    precision, so float-accurate even for slowly converging parameter sets.
    """
    for b in (b1, b2):
        if b <= 0 and abs(b - round(b)) < 1e-12:
            raise DomainError(f"lower parameter {b} is a nonpositive integer")
    if any(a <= 0 and abs(a - round(a)) < 1e-12 for a in (a1, a2, a3)):
        # terminating series; always convergent
        pass
    elif b1 + b2 - a1 - a2 - a3 <= 0:
        raise ConvergenceError(
            f"series diverges at z=1: sum(b)-sum(a) = {b1 + b2 - a1 - a2 - a3}")
    with mpmath.workdps(30):
        return float(mpmath.hyp3f2(a1, a2, a3, b1, b2, 1))


@functools.lru_cache(maxsize=1)
def catalan_const() -> float:
    """Catalan's constant G = sum (-1)^k / (2k+1)^2.

    Accelerated with the Cohen-Rodriguez Villegas-Zagier scheme for
    alternating series; 33 terms give far below double-precision error.
    """
    n = 33
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    s = 0.0
    for k in range(n):
        c = b - c
        s += c / (2 * k + 1) ** 2
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0))
    return s / d
