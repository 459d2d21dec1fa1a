"""Invert the closed-form success probability for the phase.

At fixed (N, J) the probability depends on phi only through
``s = sin(phi/2)``. Let ``x`` be an argument with ``sin(x)^2 = p`` in the range
``(beta, (2J+1) beta]``. Then ``s = (x/beta - 1) / (2J)`` and the phase is
``phi = 2 asin(s)`` or its mirror ``2 pi - 2 asin(s)``.
"""
import math
from dataclasses import dataclass, field

from scipy.optimize import bisect

from grovermem.analytic import beta, success_probability
from grovermem.errors import BelowInitialError, InfeasibleTargetError

TWO_PI = 2.0 * math.pi
RESIDUAL_TOL = 1e-9
ORDER_TOL = 1e-6
_REFINE_XTOL = 1e-12
_BRACKET = 1e-7


@dataclass(frozen=True)
class PhaseFit:
    target_p: float
    n: int
    j: int
    branches: tuple[float, ...]
    residuals: tuple[float, ...]

    def __iter__(self):
        return iter(self.branches)

    def __len__(self):
        return len(self.branches)


def feasible_max_probability(n: int, j: int) -> float:
    """Largest success probability reachable by any phase at fixed (n, j)."""
    if j == 0:
        return 1.0 / n
    top = (2 * j + 1) * beta(n)
    if top >= math.pi / 2.0:
        return 1.0
    return math.sin(top) ** 2


def _arguments(p: float, lo: float, hi: float) -> list[float]:
    """All x in (lo, hi] with sin(x)^2 == p."""
    base = math.asin(math.sqrt(p))
    out = []
    k = 0
    while k * math.pi - base <= hi:
        for x in (k * math.pi - base, k * math.pi + base):
            if lo < x <= hi:
                out.append(x)
        k += 1
    return sorted(set(out))


def _refine(phi: float, p: float, n: int, j: int) -> float:
    f = lambda x: success_probability(n, j, x) - p  # noqa: E731
    a, b = max(phi - _BRACKET, 1e-15), min(phi + _BRACKET, TWO_PI - 1e-15)
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        # tangential root (phi = pi or a probability extremum): keep the closed form
        return phi
    return bisect(f, a, b, xtol=_REFINE_XTOL)


def fit_phase(p_target: float, n: int, j: int) -> PhaseFit:
    """All phases in (0, 2 pi) at which ``success_probability(n, j, phi) == p_target``.

    Raises :class:`BelowInitialError` for targets at or below 1/n and
    :class:`InfeasibleTargetError` above :func:`feasible_max_probability`.
    """
    if j < 1:
        raise ValueError(f"fitting needs j >= 1, got {j}")
    if not 0.0 < p_target <= 1.0:
        raise InfeasibleTargetError(f"target probability {p_target} outside (0, 1]")
    if p_target <= 1.0 / n:
        raise BelowInitialError(
            f"target {p_target} does not exceed the initial probability 1/N = {1.0 / n:.6g}", ceiling=1.0 / n
        )
    ceiling = feasible_max_probability(n, j)
    if p_target > ceiling + RESIDUAL_TOL:
        raise InfeasibleTargetError(
            f"target {p_target} exceeds the feasible maximum {ceiling:.6f} at N={n}, J={j}", ceiling=ceiling
        )

    b = beta(n)
    phases = []
    for x in _arguments(p_target, b, (2 * j + 1) * b * (1.0 + 1e-15)):
        s = (x / b - 1.0) / (2.0 * j)
        if not 0.0 < s <= 1.0 + 1e-12:
            continue
        half = math.asin(min(s, 1.0))
        phases.extend([2.0 * half, TWO_PI - 2.0 * half])

    branches = []
    for phi in sorted(phases):
        phi = _refine(phi, p_target, n, j)
        if 0.0 < phi < TWO_PI and not any(abs(phi - q) <= 1e-9 for q in branches):
            branches.append(phi)
    branches.sort()
    residuals = [abs(success_probability(n, j, phi) - p_target) for phi in branches]
    kept = [(phi, r) for phi, r in zip(branches, residuals) if r <= RESIDUAL_TOL]
    if not kept:
        raise InfeasibleTargetError(f"no phase reproduces p={p_target} at N={n}, J={j}", ceiling=ceiling)
    return PhaseFit(
        target_p=p_target,
        n=n,
        j=j,
        branches=tuple(phi for phi, _ in kept),
        residuals=tuple(r for _, r in kept),
    )


@dataclass
class OrderingCheck:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


_LABELS = ("W", "R", "S")


def validate_ordering(low_phases, high_phases, tol: float = ORDER_TOL) -> OrderingCheck:
    """Check watch > reappraise > suppress within each emotion level.

    Both arguments are ``(watch, reappraise, suppress)`` phases in radians.
    Violations are collected, never raised.
    """
    violations = []
    for level, row in ((1, low_phases), (2, high_phases)):
        for (la, a), (lb, b) in zip(zip(_LABELS, row), zip(_LABELS[1:], row[1:])):
            if not a - b > tol:
                violations.append(f"phi({la}{level})={a:.6f} is not > phi({lb}{level})={b:.6f}")
    return OrderingCheck(ok=not violations, violations=violations)
