"""Complex state vectors over N database items.

Items are indexed 0..N-1 throughout the package.
"""
import numpy as np

from grovermem.errors import BasisIndexError, InvalidDimensionError, NormError

NORM_TOL = 1e-9


class StateVector:
    """Fixed-length vector of complex128 amplitudes.

    The amplitudes are copied on construction and exposed read-only, so a
    state never changes after it is built; gates return new states.
    With ``validate=True`` (the default) the norm must be 1 within
    :data:`NORM_TOL`.
    """

    __slots__ = ("_amps",)

    def __init__(self, amplitudes, *, validate: bool = True):
        amps = np.array(amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.shape[0] < 2:
            raise InvalidDimensionError(f"need a 1-D vector with at least 2 items, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        self._amps = amps
        if validate:
            self.validate()

    @classmethod
    def _wrap(cls, amps: np.ndarray) -> "StateVector":
        # trusted internal path: amps is a fresh array produced by a unitary op
        obj = cls.__new__(cls)
        amps.setflags(write=False)
        obj._amps = amps
        return obj

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    @property
    def n(self) -> int:
        return self._amps.shape[0]

    def __len__(self) -> int:
        return self._amps.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self._amps if dtype is None else self._amps.astype(dtype)

    def __repr__(self) -> str:
        return f"StateVector(n={self.n}, amplitudes={np.array2string(self._amps, precision=5, threshold=8)})"

    def copy_amplitudes(self) -> np.ndarray:
        """Writable copy of the amplitudes."""
        return self._amps.copy()

    def probabilities(self) -> np.ndarray:
        return np.abs(self._amps) ** 2

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self._amps) ** 2)))

    def validate(self, tol: float = NORM_TOL) -> "StateVector":
        nrm = self.norm()
        if abs(nrm - 1.0) > tol:
            raise NormError(f"state norm {nrm!r} differs from 1 by more than {tol}")
        return self

    def check_index(self, k) -> int:
        k = int(k)
        if not 0 <= k < self.n:
            raise BasisIndexError(f"index {k} out of range for N={self.n}")
        return k

    def allclose(self, other, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self._amps, np.asarray(other), rtol=0.0, atol=atol))


def _check_n(n) -> int:
    n = int(n)
    if n < 2:
        raise InvalidDimensionError(f"item count must be >= 2, got {n}")
    return n


def uniform_state(n: int) -> StateVector:
    """Equal-weight superposition, every amplitude 1/sqrt(n)."""
    n = _check_n(n)
    return StateVector._wrap(np.full(n, 1.0 / np.sqrt(n), dtype=np.complex128))


def basis_state(n: int, k: int) -> StateVector:
    n = _check_n(n)
    k = int(k)
    if not 0 <= k < n:
        raise BasisIndexError(f"index {k} out of range for N={n}")
    amps = np.zeros(n, dtype=np.complex128)
    amps[k] = 1.0
    return StateVector._wrap(amps)


def probability_of(state: StateVector, k: int) -> float:
    k = state.check_index(k)
    return float(abs(state.amplitudes[k]) ** 2)


def norm(state: StateVector) -> float:
    return state.norm()


def _cdf(state: StateVector) -> np.ndarray:
    cdf = np.cumsum(state.probabilities())
    return cdf / cdf[-1]


def sample_outcome(state: StateVector, seed) -> int:
    """Measure ``state`` once in the computational basis.

    ``seed`` is anything accepted by :func:`numpy.random.default_rng`; the
    result is a deterministic function of ``(state, seed)``.
    """
    u = np.random.default_rng(seed).random()
    return int(np.searchsorted(_cdf(state), u, side="right"))


def sample_outcomes(state: StateVector, size: int, seed) -> np.ndarray:
    """Vectorized form of :func:`sample_outcome` drawing ``size`` outcomes from one stream."""
    u = np.random.default_rng(seed).random(size)
    return np.searchsorted(_cdf(state), u, side="right")
