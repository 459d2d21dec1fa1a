"""Gates of the (generalized) Grover iteration and the search driver.

The standard iteration is ``-W I_0 W I_m``: invert the marked amplitude, then
invert about the mean. The generalized iteration replaces both inversions with
phase rotations, ``-W R_0(phi) W R_m(theta)``, and searches efficiently only
when ``theta == phi``.

``-W R_0(phi) W`` equals ``-(I - (1 - e^{i phi}) |s><s|)``, so the default
path uses that rank-one form for any N. The explicit Walsh-Hadamard circuit
needs N = 2**k and is mainly there to check the rank-one form.
"""
import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from grovermem import kernels
from grovermem.errors import BasisIndexError, InvalidDimensionError, PhaseDomainError, UnsupportedDimensionError
from grovermem.statevector import StateVector, uniform_state

TWO_PI = 2.0 * math.pi


def is_power_of_two(n: int) -> bool:
    return n >= 1 and not n & (n - 1)


@dataclass(frozen=True)
class SearchParams:
    """Knobs of one generalized search.

    ``theta`` (marked-item rotation) defaults to ``phi`` (zero-state
    rotation), which is the phase-matched case.
    """

    n: int
    marked: int = 0
    phi: float = math.pi
    theta: float | None = None
    j: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise InvalidDimensionError(f"item count must be >= 2, got {self.n}")
        if not 0 <= self.marked < self.n:
            raise BasisIndexError(f"marked index {self.marked} out of range for N={self.n}")
        if not 0.0 < self.phi < TWO_PI:
            raise PhaseDomainError(f"phi must lie in (0, 2*pi), got {self.phi}")
        if self.j < 0:
            raise ValueError(f"iteration count must be >= 0, got {self.j}")
        if self.theta is None:
            object.__setattr__(self, "theta", self.phi)
        elif not math.isfinite(self.theta):
            raise PhaseDomainError(f"theta must be finite, got {self.theta}")

    @property
    def phase_matched(self) -> bool:
        return self.theta == self.phi


@dataclass
class SearchTrace:
    iterations: np.ndarray
    probabilities: np.ndarray
    final_state: StateVector
    params: SearchParams | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.iterations)

    def rows(self) -> list[tuple[int, float]]:
        return [(int(i), float(p)) for i, p in zip(self.iterations, self.probabilities)]

    @property
    def final_probability(self) -> float:
        return float(self.probabilities[-1])


def oracle_c(i: int, params: SearchParams) -> int:
    """1 for the marked item, 0 otherwise."""
    if not 0 <= i < params.n:
        raise BasisIndexError(f"index {i} out of range for N={params.n}")
    return int(i == params.marked)


def selective_phase_inversion(state: StateVector, k: int) -> StateVector:
    k = state.check_index(k)
    amps = state.copy_amplitudes()
    amps[k] = -amps[k]
    return StateVector._wrap(amps)


def selective_phase_rotation(state: StateVector, k: int, angle: float) -> StateVector:
    """Multiply amplitude ``k`` by ``exp(i*angle)``."""
    k = state.check_index(k)
    amps = state.copy_amplitudes()
    amps[k] *= cmath.exp(1j * angle)
    return StateVector._wrap(amps)


def walsh_hadamard(state: StateVector) -> StateVector:
    """Normalized Walsh-Hadamard transform, ``W_ij = (-1)^popcount(i & j) / sqrt(N)``.

    Fast O(N log N) butterflies; N must be a power of two.
    """
    if not is_power_of_two(state.n):
        raise UnsupportedDimensionError(f"Walsh-Hadamard needs N = 2**k, got N={state.n}")
    amps = state.copy_amplitudes()
    kernels.fwht(amps)
    amps *= 1.0 / math.sqrt(state.n)
    return StateVector._wrap(amps)


def diffusion(state: StateVector) -> StateVector:
    """Inversion about the mean: ``psi_i -> 2*mean(psi) - psi_i``."""
    amps = state.amplitudes
    return StateVector._wrap(2.0 * amps.mean() - amps)


def generalized_diffusion(state: StateVector, phi: float) -> StateVector:
    """``-W R_0(phi) W`` in rank-one form: ``-psi + (1 - e^{i phi}) <s|psi> |s>``."""
    amps = state.amplitudes
    shift = (1.0 - cmath.exp(1j * phi)) * amps.sum() / state.n
    return StateVector._wrap(shift - amps)


def generalized_diffusion_circuit(state: StateVector, phi: float) -> StateVector:
    """Same operator as :func:`generalized_diffusion`, built gate by gate."""
    out = walsh_hadamard(state)
    out = selective_phase_rotation(out, 0, phi)
    out = walsh_hadamard(out)
    return StateVector._wrap(-out.copy_amplitudes())


def grover_step(state: StateVector, params: SearchParams, *, explicit_circuit: bool = False) -> StateVector:
    if state.n != params.n:
        raise InvalidDimensionError(f"state has N={state.n}, params expect N={params.n}")
    out = selective_phase_rotation(state, params.marked, params.theta)
    if explicit_circuit:
        return generalized_diffusion_circuit(out, params.phi)
    return generalized_diffusion(out, params.phi)


def run_search(params: SearchParams, *, explicit_circuit: bool = False) -> SearchTrace:
    """Start from the uniform state and apply ``params.j`` Grover steps.

    The returned trace holds the marked-item probability at every step,
    including step 0 (always 1/N).
    """
    if not params.phase_matched:
        warnings.warn(
            f"phase mismatch theta={params.theta} != phi={params.phi}; search efficiency is not guaranteed",
            stacklevel=2,
        )
    psi = uniform_state(params.n).copy_amplitudes()
    rot_marked = cmath.exp(1j * params.theta)
    if explicit_circuit:
        if not is_power_of_two(params.n):
            raise UnsupportedDimensionError(f"explicit circuit needs N = 2**k, got N={params.n}")
        probs = kernels.grover_run_circuit(psi, params.marked, rot_marked, cmath.exp(1j * params.phi), params.j)
    else:
        probs = kernels.grover_run(psi, params.marked, rot_marked, 1.0 - cmath.exp(1j * params.phi), params.j)
    return SearchTrace(
        iterations=np.arange(params.j + 1),
        probabilities=np.asarray(probs),
        final_state=StateVector._wrap(psi),
        params=params,
    )
