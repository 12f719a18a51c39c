"""
Volumes of balls and inscribed regular simplexes in M dimensions.

Everything is evaluated through logarithms (``math.lgamma``) since
``pi**(M/2) / Gamma(M/2 + 1)`` overflows the intermediate terms near
M = 340.  The ``log_*`` variants stay finite for any M; the plain
versions underflow to 0.0 once the volume drops below the smallest double.
"""
import math

from .errors import OddDimension


def _check(M, r):
    if int(M) != M or M < 1:
        raise ValueError(f"dimension must be a positive integer, got {M}")
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")


def log_ball_volume(M: int, r: float = 1.0) -> float:
    _check(M, r)
    return 0.5 * M * math.log(math.pi) + M * math.log(r) - math.lgamma(0.5 * M + 1.0)


def ball_volume(M: int, r: float = 1.0) -> float:
    """Volume of the M-ball of radius r, ``pi**(M/2) r**M / Gamma(M/2 + 1)``."""
    return math.exp(log_ball_volume(M, r))


def log_ball_volume_asymptotic(M: int, r: float = 1.0) -> float:
    _check(M, r)
    if M % 2:
        raise OddDimension(f"leading-order form is only derived for even M, got {M}")
    return -math.log(math.sqrt(2 * math.e) * math.pi * r) + (M + 1) * (
        0.5 * math.log(2 * math.pi * math.e / M) + math.log(r)
    )


def ball_volume_asymptotic(M: int, r: float = 1.0) -> float:
    """Stirling form ``(sqrt(2 pi e / M) r)**(M+1) / (sqrt(2e) pi r)`` for even M."""
    return math.exp(log_ball_volume_asymptotic(M, r))


def log_inscribed_simplex_volume(M: int, r: float = 1.0) -> float:
    _check(M, r)
    return (
        0.5 * math.log(M)
        - math.lgamma(M + 1.0)
        + 0.5 * (M + 1) * math.log((M + 1) / M)
        + M * math.log(r)
    )


def inscribed_simplex_volume(M: int, r: float = 1.0) -> float:
    """Volume of the regular M-simplex inscribed in a sphere of radius r.

    ``sqrt(M)/M! ((M+1)/M)**((M+1)/2) r**M``
    """
    return math.exp(log_inscribed_simplex_volume(M, r))


def log_inscribed_simplex_volume_asymptotic(M: int, r: float = 1.0) -> float:
    _check(M, r)
    return -0.5 * math.log(2 * math.pi) + M * math.log(math.e * r / M)


def inscribed_simplex_volume_asymptotic(M: int, r: float = 1.0) -> float:
    """``(e r / M)**M / sqrt(2 pi)``.

    This keeps only the exponential rate: the exact volume over this value
    tends to ``sqrt(e)``, not 1, because ``((M+1)/M)**((M+1)/2) -> sqrt(e)``.
    """
    return math.exp(log_inscribed_simplex_volume_asymptotic(M, r))


def unit_ball_argmax(m_max: int = 50) -> int:
    """Dimension in ``1..m_max`` with the largest unit-ball volume."""
    return max(range(1, m_max + 1), key=log_ball_volume)


def volume_table(m_max: int, r: float = 1.0):
    """Rows ``(M, exact, asymptotic, ratio)``; asymptotic is None for odd M."""
    rows = []
    for M in range(1, m_max + 1):
        exact = ball_volume(M, r)
        if M % 2:
            rows.append((M, exact, None, None))
        else:
            ratio = math.exp(log_ball_volume(M, r) - log_ball_volume_asymptotic(M, r))
            rows.append((M, exact, ball_volume_asymptotic(M, r), ratio))
    return rows
