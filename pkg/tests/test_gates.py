import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grovermem.errors import BasisIndexError, InvalidDimensionError, PhaseDomainError, UnsupportedDimensionError
from grovermem.gates import (
    SearchParams,
    diffusion,
    generalized_diffusion,
    generalized_diffusion_circuit,
    grover_step,
    oracle_c,
    run_search,
    selective_phase_inversion,
    selective_phase_rotation,
    walsh_hadamard,
)
from grovermem.statevector import StateVector, basis_state, uniform_state

from conftest import DIMS, random_state

PI = math.pi
HALF = StateVector([0.5, 0.5, 0.5, 0.5])
INVERTED = StateVector([0.5, 0.5, 0.5, -0.5])


def dense(op, n):
    """Matrix of a state->state map, column by column."""
    return np.column_stack([op(basis_state(n, k)).amplitudes for k in range(n)])


def hadamard_normalized(n):
    return np.array([[(-1) ** bin(i & j).count("1") for j in range(n)] for i in range(n)]) / math.sqrt(n)


class TestSearchParams:
    def test_theta_defaults_to_phi(self):
        p = SearchParams(n=8, marked=2, phi=2.0, j=1)
        assert p.theta == 2.0 and p.phase_matched

    def test_mismatch(self):
        assert not SearchParams(n=8, phi=2.0, theta=1.0).phase_matched

    @pytest.mark.parametrize("kw,exc", [
        (dict(n=1), InvalidDimensionError),
        (dict(n=4, marked=4), BasisIndexError),
        (dict(n=4, phi=0.0), PhaseDomainError),
        (dict(n=4, phi=2 * PI), PhaseDomainError),
        (dict(n=4, j=-1), ValueError),
    ])
    def test_invalid(self, kw, exc):
        with pytest.raises(exc):
            SearchParams(**kw)


def test_oracle():
    params = SearchParams(n=10, marked=5)
    assert oracle_c(5, params) == 1
    assert oracle_c(4, params) == 0
    assert sum(oracle_c(i, params) for i in range(10)) == 1
    with pytest.raises(IndexError):
        oracle_c(10, params)


def test_phase_inversion():
    assert selective_phase_inversion(HALF, 3).allclose(INVERTED, atol=0)
    assert selective_phase_inversion(INVERTED, 3).allclose(HALF, atol=0)
    assert selective_phase_inversion(basis_state(4, 1), 0).allclose(basis_state(4, 1), atol=0)
    with pytest.raises(IndexError):
        selective_phase_inversion(HALF, 4)


def test_phase_rotation():
    assert selective_phase_rotation(HALF, 3, PI).allclose(INVERTED, atol=1e-15)
    assert selective_phase_rotation(HALF, 3, 0.0).allclose(HALF, atol=0)
    rotated = selective_phase_rotation(HALF, 3, PI / 2)
    assert rotated.amplitudes[3] == pytest.approx(0.5j, abs=1e-16)
    assert np.array_equal(rotated.amplitudes[:3], [0.5, 0.5, 0.5])


def test_walsh_hadamard_examples():
    assert walsh_hadamard(basis_state(4, 0)).allclose(uniform_state(4))
    assert walsh_hadamard(basis_state(2, 1)).allclose([0.70711, -0.70711], atol=1e-5)
    with pytest.raises(UnsupportedDimensionError):
        walsh_hadamard(uniform_state(80))


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_walsh_hadamard_dense(n):
    assert np.allclose(dense(walsh_hadamard, n), hadamard_normalized(n), atol=1e-12)


def test_walsh_hadamard_involution(rng):
    x = random_state(16, rng)
    assert walsh_hadamard(walsh_hadamard(x)).allclose(x, atol=1e-12)


def test_diffusion_examples(rng):
    assert diffusion(INVERTED).allclose([0, 0, 0, 1], atol=1e-15)
    for n in (3, 80):
        assert diffusion(uniform_state(n)).allclose(uniform_state(n))
    x = random_state(80, rng)
    assert diffusion(diffusion(x)).allclose(x, atol=1e-12)


def test_generalized_diffusion_examples():
    assert generalized_diffusion(INVERTED, PI).allclose([0, 0, 0, 1], atol=1e-15)
    assert generalized_diffusion(uniform_state(4), PI / 2).allclose(np.full(4, -0.5j), atol=1e-15)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_diffusion_equals_minus_w_i0_w(n):
    w = hadamard_normalized(n)
    i0 = np.eye(n)
    i0[0, 0] = -1
    expected = -np.eye(n) + 2 * np.full((n, n), 1 / n)
    assert np.allclose(-w @ i0 @ w, expected, atol=1e-12)
    assert np.allclose(dense(diffusion, n), expected, atol=1e-12)


@pytest.mark.parametrize("n", [4, 8, 16])
@pytest.mark.parametrize("phi", [0.5, PI / 2, PI, 4.0])
def test_projector_form_matches_circuit(n, phi, rng):
    w = hadamard_normalized(n)
    r0 = np.eye(n, dtype=complex)
    r0[0, 0] = np.exp(1j * phi)
    explicit = -w @ r0 @ w
    assert np.allclose(dense(lambda s: generalized_diffusion(s, phi), n), explicit, atol=1e-12)
    assert np.allclose(dense(lambda s: generalized_diffusion_circuit(s, phi), n), explicit, atol=1e-12)
    x = random_state(n, rng)
    assert generalized_diffusion(x, phi).allclose(generalized_diffusion_circuit(x, phi), atol=1e-12)


def test_generalized_diffusion_at_pi_is_diffusion(rng):
    x = random_state(80, rng)
    assert generalized_diffusion(x, PI).allclose(diffusion(x), atol=1e-12)


def test_grover_step_n4():
    out = grover_step(uniform_state(4), SearchParams(n=4, marked=3))
    assert out.allclose(basis_state(4, 3), atol=1e-15)
    with pytest.raises(InvalidDimensionError):
        grover_step(uniform_state(8), SearchParams(n=4))


def test_grover_step_explicit_matches_projector(rng):
    x = random_state(16, rng)
    params = SearchParams(n=16, marked=5, phi=2.2)
    assert grover_step(x, params).allclose(grover_step(x, params, explicit_circuit=True), atol=1e-12)


def test_n16_three_steps():
    state = uniform_state(16)
    params = SearchParams(n=16, marked=9, j=3)
    for _ in range(3):
        state = grover_step(state, params)
    assert abs(state.amplitudes[9]) ** 2 == pytest.approx(0.961319, abs=1e-6)
    assert run_search(params).final_probability == pytest.approx(math.sin(7 * math.asin(0.25)) ** 2, abs=1e-12)


def test_overcooking_n4():
    assert run_search(SearchParams(n=4, marked=3, j=2)).final_probability == pytest.approx(0.25, abs=1e-12)


def test_run_search_n4_trace():
    trace = run_search(SearchParams(n=4, marked=3, j=1))
    assert len(trace) == 2
    assert trace.rows() == [(0, 0.25), (1, pytest.approx(1.0, abs=1e-12))]


@pytest.mark.parametrize("n", [2, 7, 80])
def test_run_search_zero_iterations(n):
    trace = run_search(SearchParams(n=n, j=0))
    assert trace.rows() == [(0, pytest.approx(1 / n, abs=1e-15))]
    assert trace.final_state.allclose(uniform_state(n), atol=0)


def test_run_search_n1024():
    p = run_search(SearchParams(n=1024, marked=100, j=25)).final_probability
    assert p == pytest.approx(math.sin(51 * math.asin(1 / 32)) ** 2, abs=1e-9)
    assert p == pytest.approx(0.99946, abs=1e-5)


def test_run_search_explicit_requires_power_of_two():
    with pytest.raises(UnsupportedDimensionError):
        run_search(SearchParams(n=80, j=1), explicit_circuit=True)


def test_run_search_mismatch_warns():
    with pytest.warns(UserWarning, match="mismatch"):
        run_search(SearchParams(n=8, phi=2.0, theta=1.0, j=2))


def test_run_search_backends_agree(backend):
    # same trace whichever kernel is active
    trace = run_search(SearchParams(n=64, marked=3, phi=2.7, j=10))
    ref = uniform_state(64)
    params = SearchParams(n=64, marked=3, phi=2.7, j=10)
    for _ in range(10):
        ref = grover_step(ref, params)
    assert trace.final_state.allclose(ref, atol=1e-12)


@pytest.mark.parametrize("k", range(2, 11))
def test_standard_case_exact(k):
    n = 2 ** k
    b = math.asin(1 / math.sqrt(n))
    trace = run_search(SearchParams(n=n, marked=n - 1, j=40))
    expected = np.sin((2 * np.arange(41) + 1) * b) ** 2
    assert np.allclose(trace.probabilities, expected, atol=1e-9)


@pytest.mark.parametrize("phi", [1.0, 2.5, PI, 4.3])
def test_two_d_subspace_closure(phi):
    n, m = 80, 13
    state = uniform_state(n)
    params = SearchParams(n=n, marked=m, phi=phi)
    for _ in range(30):
        state = grover_step(state, params)
        rest = np.delete(state.amplitudes, m)
        assert np.linalg.norm(rest - rest.mean()) < 1e-9


_GATES = [
    lambda s, a: selective_phase_inversion(s, 0),
    lambda s, a: selective_phase_rotation(s, s.n - 1, a),
    lambda s, a: diffusion(s),
    lambda s, a: generalized_diffusion(s, a),
    lambda s, a: grover_step(s, SearchParams(n=s.n, marked=1, phi=(a % 6.2) + 0.05)),
]


@settings(max_examples=100, deadline=None)
@given(
    n=st.sampled_from(DIMS),
    seed=st.integers(0, 2**32 - 1),
    angle=st.floats(0.0, 2 * PI, allow_nan=False),
    gate=st.sampled_from(range(len(_GATES))),
)
def test_gates_preserve_norm(n, seed, angle, gate):
    state = random_state(n, np.random.default_rng(seed))
    assert abs(_GATES[gate](state, angle).norm() - 1.0) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(k=st.integers(1, 10), seed=st.integers(0, 2**32 - 1))
def test_walsh_hadamard_preserves_norm(k, seed):
    state = random_state(2**k, np.random.default_rng(seed))
    out = walsh_hadamard(state)
    assert abs(out.norm() - 1.0) <= 1e-9
    assert walsh_hadamard(out).allclose(state, atol=1e-12)
