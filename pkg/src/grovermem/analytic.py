"""Closed-form success probabilities and iteration counts.

Two formulas are in circulation for the phase-matched search:

* ``success_probability``: ``sin^2([2J sin(phi/2) + 1] beta)``. This is the
  marked component you get by applying the J-step rotation by
  ``2J sin(phi/2) beta`` to the initial state. It gives 1/N at J=0.
* ``success_probability_scaled``: ``sin^2((2J + 1) sin(theta/2) beta)``,
  which scales the whole argument by ``sin(theta/2)``. At J=0 it does not
  give 1/N unless theta = pi.

The two agree at phi = theta = pi. Neither is exact for other phases;
:func:`grovermem.gates.run_search` gives the exact answer.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

from grovermem.errors import InvalidDimensionError, PhaseDomainError, SingularPhaseError

TWO_PI = 2.0 * math.pi


class CookingStatus(enum.Enum):
    UNDERCOOKED = "Undercooked"
    OPTIMAL = "Optimal"
    OVERCOOKED = "Overcooked"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TwoDState:
    """Components on the marked item ``a`` and on the rest ``b`` (normalized sum of unmarked items)."""

    a: complex
    b: complex

    @property
    def marked_probability(self) -> float:
        return abs(self.a) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=np.complex128)


def _check_n(n) -> int:
    if n < 2:
        raise InvalidDimensionError(f"item count must be >= 2, got {n}")
    return int(n)


def _check_j(j) -> int:
    if j < 0:
        raise ValueError(f"iteration count must be >= 0, got {j}")
    return j


def _check_phase(phi: float) -> float:
    if not 0.0 < phi < TWO_PI:
        raise PhaseDomainError(f"phase must lie in (0, 2*pi), got {phi}")
    return phi


def _half_sine(phi: float) -> float:
    if phi == 0.0 or phi == TWO_PI:
        raise SingularPhaseError(f"sin(phi/2) vanishes at phi={phi}")
    _check_phase(phi)
    s = math.sin(phi / 2.0)
    if s == 0.0:
        raise SingularPhaseError(f"sin(phi/2) vanishes at phi={phi}")
    return s


def beta(n: int) -> float:
    """Angle of the initial state from the unmarked subspace, ``arcsin(1/sqrt(n))``."""
    return math.asin(1.0 / math.sqrt(_check_n(n)))


def success_probability(n: int, j, phi: float) -> float:
    """Marked-item probability after ``j`` phase-matched iterations at phase ``phi``.

    ``j`` may be real (used by sweeps and root finding); ``j == 0`` returns
    exactly ``1/n``.
    """
    _check_n(n)
    _check_j(j)
    _check_phase(phi)
    if j == 0:
        return 1.0 / n
    arg = (2.0 * j * math.sin(phi / 2.0) + 1.0) * beta(n)
    return math.sin(arg) ** 2


def success_probability_scaled(n: int, j, theta: float) -> float:
    """``sin^2((2j + 1) sin(theta/2) beta)``; agrees with :func:`success_probability` at theta = pi."""
    _check_n(n)
    _check_j(j)
    _check_phase(theta)
    return math.sin((2.0 * j + 1.0) * math.sin(theta / 2.0) * beta(n)) ** 2


def rotation_matrix(angle: float) -> np.ndarray:
    """``[[cos, sin], [-sin, cos]]`` acting on (marked, rest) components."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, s], [-s, c]])


def grover_rotation(n: int) -> np.ndarray:
    """One standard Grover iteration restricted to span{marked, rest}."""
    return rotation_matrix(2.0 * beta(n))


def initial_two_d(n: int) -> TwoDState:
    b = beta(n)
    return TwoDState(complex(math.sin(b)), complex(math.cos(b)))


def evolve_two_d(n: int, j: int, theta: float = math.pi) -> TwoDState:
    """Apply the rotation by ``2j sin(theta/2) beta`` to the initial two-component state.

    The marked component is ``sin([2j sin(theta/2) + 1] beta)``, so
    ``marked_probability`` equals :func:`success_probability`.
    """
    _check_j(j)
    _check_phase(theta)
    start = initial_two_d(n).as_array()
    a, b = rotation_matrix(2.0 * j * math.sin(theta / 2.0) * beta(n)) @ start
    return TwoDState(complex(a), complex(b))


def j_opt_approx(n: int, phi: float) -> float:
    """Large-N estimate ``(pi sqrt(n)/4 - 1/2) / sin(phi/2)``."""
    s = _half_sine(phi)
    return (math.pi * math.sqrt(_check_n(n)) / 4.0 - 0.5) / s


def j_opt_exact(n: int, phi: float) -> float:
    """Real J where the argument of :func:`success_probability` reaches pi/2."""
    s = _half_sine(phi)
    return (math.pi / (2.0 * beta(n)) - 1.0) / (2.0 * s)


def best_integer_j(n: int, phi: float) -> list[int]:
    """Integer iteration count(s) at the first probability peak."""
    jo = j_opt_exact(n, phi)
    candidates = sorted({max(0, math.floor(jo)), max(0, math.ceil(jo))})
    probs = [success_probability(n, c, phi) for c in candidates]
    top = max(probs)
    return [c for c, p in zip(candidates, probs) if abs(p - top) <= 1e-12]


def classify_cooking(n: int, j: int, phi: float) -> CookingStatus:
    """Compare ``j`` with the first peak of the closed-form probability.

    Later periodic peaks never count as optimal.
    """
    _check_j(j)
    best = best_integer_j(n, phi)
    if j in best:
        return CookingStatus.OPTIMAL
    if j < best[0]:
        return CookingStatus.UNDERCOOKED
    return CookingStatus.OVERCOOKED
