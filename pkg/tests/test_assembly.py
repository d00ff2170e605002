import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import Q_BLOCK_SKEW_123
from hypflux import (
    Direction,
    DomainError,
    State,
    a0_matrix,
    assemble,
    assemble_1d,
    assemble_3d,
    ideal_gas,
    q_block,
    source_vector,
    symbol,
    symbol_3d,
    symbol_ccj,
)

coeff = st.floats(min_value=-4.0, max_value=4.0)
vec3 = arrays(np.float64, 3, elements=coeff)


class TestState:
    def test_dimension_comes_from_fields(self):
        assert State(rho=1.0, v=[0.0], theta=1.0, q=[0.0]).dim == 1
        s3 = State(rho=1.0, v=[1.0, 2.0, 3.0], theta=2.0, q=[0.0, 0.0, 1.0])
        assert s3.dim == 3 and s3.size == 8

    def test_rejects_mixed_dimensions(self):
        with pytest.raises(DomainError):
            State(rho=1.0, v=[0.0, 0.0], theta=1.0, q=[0.0, 0.0, 0.0])

    def test_rejects_planar_fields(self):
        with pytest.raises(DomainError):
            State(rho=1.0, v=[0.0, 0.0], theta=1.0, q=[0.0, 0.0])

    def test_rejects_nonpositive_thermo(self):
        with pytest.raises(DomainError):
            State(rho=-1.0, v=[0.0], theta=1.0, q=[0.0])
        with pytest.raises(DomainError):
            State(rho=1.0, v=[0.0], theta=0.0, q=[0.0])

    def test_thermo_view(self):
        s = State(rho=0.5, v=[0.0], theta=3.0, q=[0.0])
        assert (s.thermo.rho, s.thermo.theta) == (0.5, 3.0)


class TestDirection:
    def test_requires_unit_norm(self):
        with pytest.raises(DomainError):
            Direction([1.0, 1.0, 0.0])

    def test_from_vector_normalizes(self):
        d = Direction.from_vector([3.0, 4.0, 0.0])
        assert np.allclose(d.xi, [0.6, 0.8, 0.0])

    def test_from_vector_rejects_zero(self):
        with pytest.raises(DomainError):
            Direction.from_vector([0.0, 0.0, 0.0])


def test_a0_diagonal(ideal):
    state = State(rho=2.0, v=[0.0, 0.0, 0.0], theta=1.5, q=[0.0, 0.0, 0.0])
    model = ideal_gas(c_v=0.5, tau=0.25)
    a0 = a0_matrix(model, state)
    assert np.array_equal(np.diag(a0), [1.0, 2.0, 2.0, 2.0, 2.0 * 0.5, 0.25, 0.25, 0.25])
    assert np.array_equal(a0, np.diag(np.diag(a0)))


def test_source_vector_lives_on_flux_slots():
    s1 = State(rho=1.0, v=[0.0], theta=1.0, q=[0.7])
    assert np.array_equal(source_vector(s1), [0.0, 0.0, 0.0, 0.7])
    s3 = State(rho=1.0, v=[0.0] * 3, theta=1.0, q=[0.1, 0.2, 0.3])
    assert np.array_equal(source_vector(s3), [0.0] * 5 + [0.1, 0.2, 0.3])


class TestQBlock:
    def test_skew_form_at_jordan_compatible_pair(self):
        got = q_block(1.0, -1.0, np.array([1.0, 0.0, 0.0]), np.array([1.0, 2.0, 3.0]))
        assert np.array_equal(got, Q_BLOCK_SKEW_123)

    def test_uncoupled_pair_keeps_trace_terms(self):
        # lambda = nu = 0 still leaves lambda^- = -1/2 and lambda^+ = 1/2
        got = q_block(0.0, 0.0, np.array([1.0, 0.0, 0.0]), np.array([1.0, 0.0, 0.0]))
        assert np.array_equal(got, np.diag([0.0, -0.5, -0.5]))

    @settings(max_examples=150)
    @given(lam=coeff, nu=coeff, xi=vec3, q=vec3)
    def test_matches_rank_one_decomposition(self, lam, nu, xi, q):
        lam_minus = (lam - 1.0) / 2.0
        lam_plus = (lam + 1.0) / 2.0
        closed = (
            lam_minus * float(xi @ q) * np.eye(3)
            + lam_plus * np.outer(xi, q)
            + nu * np.outer(q, xi)
        )
        assert np.allclose(q_block(lam, nu, xi, q), closed, atol=1e-12)

    @given(xi=vec3, q=vec3)
    def test_skew_exactly_on_jordan_compatible_pair(self, xi, q):
        block = q_block(1.0, -1.0, xi, q)
        assert np.allclose(block + block.T, 0.0, atol=1e-12)

    def test_rejects_wrong_shape(self):
        with pytest.raises(DomainError):
            q_block(1.0, 0.0, np.array([1.0, 0.0]), np.array([1.0, 0.0]))


def test_flux_1d_layout(ideal):
    state = State(rho=2.0, v=[3.0], theta=0.5, q=[0.25])
    mats = assemble_1d(ideal, state, (2.0, 1.0))
    # R = c_v = kappa = tau = 1: p = rho theta, p_rho = theta, p_theta = rho
    expected = np.array(
        [
            [3.0, 2.0, 0.0, 0.0],
            [0.5, 6.0, 2.0, 0.0],
            [0.0, 1.0, 6.0, 1.0],
            [0.0, 0.75, 1.0, 3.0],
        ]
    )
    assert np.allclose(mats.flux[0], expected, atol=1e-14)
    assert np.array_equal(np.diag(mats.a0), [1.0, 2.0, 2.0, 1.0])


def test_symbol_is_linear_in_direction(ideal, rng):
    state = State(
        rho=1.3, v=rng.uniform(-2, 2, 3), theta=0.8, q=rng.uniform(-2, 2, 3)
    )
    mats = assemble_3d(ideal, state, (0.7, -1.2))
    for _ in range(20):
        raw = rng.normal(size=3)
        xi = raw / np.linalg.norm(raw)
        stacked = sum(xi[i] * mats.flux[i] for i in range(3))
        direct = symbol_3d(ideal, state, Direction(xi), (0.7, -1.2))
        assert np.allclose(stacked, direct, atol=1e-13)


def test_symbol_1d_is_signed_flux(ideal):
    state = State(rho=1.0, v=[0.4], theta=1.0, q=[0.9])
    mats = assemble(ideal, state, (1.0, 0.0))
    left = symbol(ideal, state, Direction([-1.0]), (1.0, 0.0))
    assert np.allclose(left, -mats.flux[0], atol=1e-14)


def test_ccj_differs_exactly_by_the_coupling_block(ideal, rng):
    state = State(
        rho=0.9, v=rng.uniform(-1, 1, 3), theta=2.0, q=rng.uniform(-3, 3, 3)
    )
    xi = Direction.from_vector(rng.normal(size=3))
    coupled = symbol_3d(ideal, state, xi, (2.0, -0.5))
    uncoupled = symbol_ccj(ideal, state, xi)
    expected = np.zeros((8, 8))
    expected[5:8, 1:4] = q_block(2.0, -0.5, xi.xi, state.q)
    assert np.array_equal(coupled - uncoupled, expected)


def test_dimension_mismatch_between_state_and_direction(ideal):
    state = State(rho=1.0, v=[0.0] * 3, theta=1.0, q=[0.0] * 3)
    with pytest.raises(DomainError):
        symbol(ideal, state, Direction([1.0]), (1.0, 0.0))
