import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import (
    DELTA_A1_17,
    GOLDEN_FAST,
    GOLDEN_SLOW,
    IM_A1_17,
    ROOTS_A1_17,
    THRESHOLD_SQ,
    WITNESS_Q,
)
from hypflux import (
    ConstitutiveViolation,
    DepressedQuartic,
    Direction,
    GammaZero,
    SingularBlock,
    State,
    ThermoPoint,
    block_det,
    ccj_speeds,
    discriminant,
    factored_determinant,
    h_value,
    ideal_gas,
    p_factor_3d,
    q_block,
    quartic_from_state_1d,
    quartic_from_state_3d,
    quartic_roots,
    stiffened_gas,
    symbol_3d,
    witness_q,
)
from hypflux.assembly import a0_matrix
from oracles import det_cofactor, quartic_roots_ferrari

coeff = st.floats(min_value=-8.0, max_value=8.0)


class TestDiscriminant:
    def test_zero_coefficients(self):
        assert discriminant(0.0, 0.0, 0.0).delta == 0.0

    def test_repeated_roots_annihilate(self):
        # (z^2 - 1)^2 has a0 = 1, a1 = 0, a2 = -2
        assert discriminant(1.0, 0.0, -2.0).delta == pytest.approx(0.0, abs=1e-12)

    def test_odd_only(self):
        # z(z^3 + 1): one zero root, one real, one conjugate pair
        assert discriminant(0.0, 1.0, 0.0).delta == -27.0

    def test_reference_quartic(self):
        br = discriminant(1.0, 1.7, -3.0)
        assert br.delta == pytest.approx(DELTA_A1_17, abs=1e-9)
        assert br.poly_a == -27.0

    @given(a0=coeff, a1=coeff, a2=coeff)
    def test_two_evaluation_orders_agree(self, a0, a1, a2):
        br = discriminant(a0, a1, a2)
        scale = max(1.0, abs(br.delta))
        assert abs(br.delta - br.delta_from_poly(a1)) <= 1e-9 * scale

    @given(a0=coeff, a2=coeff)
    def test_even_quartics_use_only_the_constant_term(self, a0, a2):
        br = discriminant(a0, 0.0, a2)
        # roundoff scales with the cancelled terms, not with the result
        scale = 1.0 + abs(a0) * (1.0 + a2 * a2) ** 2
        assert abs(br.delta - br.poly_c) <= 1e-12 * scale


class TestQuarticRoots:
    def test_reference_roots(self):
        report = quartic_roots(DepressedQuartic(a0=1.0, a1=1.7, a2=-3.0))
        assert report.classification == "two_real_two_complex"
        assert report.n_real == 2
        got = np.array(report.roots)
        assert np.allclose(got, np.array(ROOTS_A1_17), atol=1e-10)

    def test_four_real(self):
        # (z^2 - 1)(z^2 - 4) = z^4 - 5 z^2 + 4
        report = quartic_roots(DepressedQuartic(a0=4.0, a1=0.0, a2=-5.0))
        assert report.classification == "four_real"
        assert np.allclose(report.roots, [-2.0, -1.0, 1.0, 2.0], atol=1e-10)

    def test_residuals_are_reported(self):
        report = quartic_roots(DepressedQuartic(a0=1.0, a1=1.7, a2=-3.0))
        assert report.max_residual < 1e-9

    @settings(max_examples=200)
    @given(a0=coeff, a1=coeff, a2=coeff)
    def test_matches_ferrari_oracle(self, a0, a1, a2):
        delta = discriminant(a0, a1, a2).delta
        assume(abs(delta) > 1e-2)  # keep away from multiple roots
        got = list(quartic_roots(DepressedQuartic(a0=a0, a1=a1, a2=a2)).roots)
        # match as multisets; sort keys are unstable for tiny real parts
        for w in quartic_roots_ferrari(a2, a1, a0):
            nearest = min(got, key=lambda z: abs(z - w))
            assert abs(nearest - w) < 1e-6 * max(1.0, abs(w))
            got.remove(nearest)

    @settings(max_examples=200)
    @given(a0=coeff, a1=coeff, a2=coeff)
    def test_classification_tracks_discriminant_sign(self, a0, a1, a2):
        delta = discriminant(a0, a1, a2).delta
        assume(abs(a1) > 1e-3 and abs(delta) > 1e-2)
        report = quartic_roots(DepressedQuartic(a0=a0, a1=a1, a2=a2))
        if delta < 0:
            assert report.classification == "two_real_two_complex"


class TestQuarticFromState:
    def test_ideal_reference_coefficients(self, ideal):
        state = State(rho=1.0, v=[0.0], theta=1.0, q=[0.9])
        quartic = quartic_from_state_1d(ideal, state, (1.0, 0.0))
        assert quartic.a2 == pytest.approx(-3.0, abs=1e-14)
        assert quartic.a0 == pytest.approx(1.0, abs=1e-14)
        assert quartic.a1 == pytest.approx(0.9, abs=1e-14)

    def test_zero_sum_pair_kills_odd_term(self, ideal):
        state = State(rho=2.0, v=[1.0], theta=0.7, q=[3.0])
        assert quartic_from_state_1d(ideal, state, (2.5, -2.5)).a1 == 0.0

    def test_signs_guaranteed_by_positivity(self, stiffened, rng):
        for _ in range(25):
            rho, theta = np.exp(rng.uniform(np.log(0.1), np.log(10.0), 2))
            state = State(rho=rho, v=[0.0], theta=theta, q=[rng.uniform(-5, 5)])
            quartic = quartic_from_state_1d(stiffened, state, (1.0, 1.0))
            assert quartic.a0 > 0.0 and quartic.a2 < 0.0

    def test_collinear_3d_matches_1d(self, ideal, rng):
        model = ideal_gas(R=1.1, c_v=0.6, kappa=2.0, tau=0.4)
        for _ in range(25):
            rho, theta = np.exp(rng.uniform(np.log(0.1), np.log(10.0), 2))
            v, q = rng.uniform(-5, 5, 2)
            pair = tuple(rng.uniform(-3, 3, 2))
            one = quartic_from_state_1d(
                model, State(rho=rho, v=[v], theta=theta, q=[q]), pair
            )
            three = quartic_from_state_3d(
                model,
                State(rho=rho, v=[v, 0, 0], theta=theta, q=[q, 0, 0]),
                Direction([1.0, 0.0, 0.0]),
                pair,
            )
            assert abs(one.a0 - three.a0) < 1e-12
            assert abs(one.a1 - three.a1) < 1e-12
            assert abs(one.a2 - three.a2) < 1e-12

    def test_ccj_variant_has_no_odd_term(self, ideal):
        state = State(rho=1.0, v=[0.0] * 3, theta=1.0, q=[4.0, 0.0, 0.0])
        quartic = quartic_from_state_3d(
            ideal, state, Direction([1.0, 0.0, 0.0]), (1.0, 0.0), ccj=True
        )
        assert quartic.a1 == 0.0


class TestHValue:
    @given(
        lam=coeff,
        nu=coeff,
        data=st.tuples(*(st.floats(-1, 1) for _ in range(6))),
    )
    def test_closed_form(self, lam, nu, data):
        xi = np.array(data[:3])
        assume(np.linalg.norm(xi) > 1e-3)
        xi = xi / np.linalg.norm(xi)
        q = np.array(data[3:])
        closed = (lam + nu) * float(xi @ xi) * float(xi @ q)
        assert abs(h_value(lam, nu, xi, q) - closed) < 1e-12

    @given(lam=coeff, q1=st.floats(-1, 1), q2=st.floats(-1, 1), q3=st.floats(-1, 1))
    def test_vanishes_on_zero_sum_line(self, lam, q1, q2, q3):
        xi = np.array([1.0, 0.0, 0.0])
        assert abs(h_value(lam, -lam, xi, np.array([q1, q2, q3]))) < 1e-14

    def test_via_block_route(self):
        xi = np.array([0.6, 0.8, 0.0])
        q = np.array([1.0, -2.0, 0.5])
        direct = float(q_block(2.0, 0.5, xi, q) @ xi @ xi)
        assert h_value(2.0, 0.5, xi, q) == pytest.approx(direct, abs=1e-15)


class TestWitness:
    def test_reference_threshold_and_witness(self, ideal):
        w = witness_q(ideal, ThermoPoint(1.0, 1.0), (1.0, 0.0))
        assert w.q_threshold_sq == pytest.approx(THRESHOLD_SQ, abs=1e-12)
        assert w.witness_q_value == pytest.approx(WITNESS_Q, abs=1e-12)
        assert w.delta_at_witness < 0.0
        assert w.g == pytest.approx(1.0, abs=1e-14)
        assert w.poly_b == pytest.approx(-324.0, abs=1e-9)

    def test_witness_forces_complex_pair(self, ideal):
        for pair in [(1.0, 0.0), (2.0, -1.0), (0.5, 0.5), (-0.3, 1.4)]:
            w = witness_q(ideal, ThermoPoint(1.0, 1.0), pair)
            quartic = DepressedQuartic(a0=w.a0, a1=w.g * w.witness_q_value, a2=w.a2)
            assert quartic_roots(quartic).classification == "two_real_two_complex"

    def test_scales_with_thermo_point(self, stiffened):
        w = witness_q(stiffened, ThermoPoint(0.3, 4.0), (0.5, 0.25))
        quartic = DepressedQuartic(a0=w.a0, a1=w.g * w.witness_q_value, a2=w.a2)
        assert discriminant(quartic.a0, quartic.a1, quartic.a2).delta < 0.0

    def test_zero_sum_pair_rejected(self, ideal):
        with pytest.raises(GammaZero):
            witness_q(ideal, ThermoPoint(1.0, 1.0), (2.0, -2.0))


class TestCcjSpeeds:
    def test_golden_ratio_at_reference(self, ideal):
        s = ccj_speeds(ideal, ThermoPoint(1.0, 1.0))
        assert s.eta0 == 0.0
        assert s.eta1 == pytest.approx(GOLDEN_FAST, abs=1e-12)
        assert s.eta2 == pytest.approx(GOLDEN_SLOW, abs=1e-12)
        assert s.eta3 == pytest.approx(-GOLDEN_FAST, abs=1e-12)
        assert s.eta4 == pytest.approx(-GOLDEN_SLOW, abs=1e-12)
        assert s.r == pytest.approx(3.0, abs=1e-14)
        assert s.m == pytest.approx(np.sqrt(5.0), abs=1e-14)

    def test_advective_shift(self, ideal):
        still = ccj_speeds(ideal, ThermoPoint(1.0, 1.0), 0.0)
        moving = ccj_speeds(ideal, ThermoPoint(1.0, 1.0), 2.0)
        assert moving.eta0 == 2.0
        assert moving.eta1 == pytest.approx(still.eta1 + 2.0, abs=1e-12)

    def test_roots_satisfy_even_quartic(self, stiffened, rng):
        for _ in range(25):
            rho, theta = np.exp(rng.uniform(np.log(0.1), np.log(10.0), 2))
            s = ccj_speeds(stiffened, ThermoPoint(rho, theta))
            state = State(rho=rho, v=[0.0], theta=theta, q=[0.0])
            quartic = quartic_from_state_1d(stiffened, state, (0.0, 0.0))
            for z in (s.eta1, s.eta2, s.eta3, s.eta4):
                assert abs(quartic(z)) < 1e-9 * max(1.0, abs(quartic.a2) ** 2)

    def test_strict_ordering(self, ideal, rng):
        for _ in range(50):
            rho, theta = np.exp(rng.uniform(np.log(0.1), np.log(10.0), 2))
            shift = rng.uniform(-5, 5)
            s = ccj_speeds(ideal, ThermoPoint(rho, theta), shift)
            assert s.eta3 < s.eta4 < s.eta0 < s.eta2 < s.eta1

    def test_pencil_multiset_has_eight_entries(self, ideal):
        ms = ccj_speeds(ideal, ThermoPoint(1.0, 1.0)).pencil_multiset()
        assert len(ms) == 8
        assert sum(1 for z in ms if z == 0.0) == 4


class TestBlockDet:
    def test_matches_cofactor_expansion(self, rng):
        for _ in range(20):
            m = rng.normal(size=(4, 4))
            got = block_det(m[:2, :2], m[:2, 2:], m[2:, :2], m[2:, 2:])
            assert got == pytest.approx(det_cofactor(m), rel=1e-10, abs=1e-12)

    def test_singular_leading_block(self):
        zero = np.zeros((2, 2))
        eye = np.eye(2)
        with pytest.raises(SingularBlock):
            block_det(zero, eye, eye, eye)


class TestFactoredDeterminant:
    def test_matches_generic_determinant(self, rng):
        model = ideal_gas(R=0.9, c_v=1.2, kappa=0.8, tau=0.6)
        for _ in range(40):
            rho, theta = np.exp(rng.uniform(np.log(0.1), np.log(10.0), 2))
            state = State(
                rho=rho,
                v=rng.uniform(-5, 5, 3),
                theta=theta,
                q=rng.uniform(-5, 5, 3),
            )
            xi = Direction.from_vector(rng.normal(size=3))
            pair = tuple(rng.uniform(-3, 3, 2))
            eta = rng.uniform(-6, 6)
            lhs = np.linalg.det(
                symbol_3d(model, state, xi, pair) - eta * a0_matrix(model, state)
            )
            rhs = factored_determinant(model, state, xi, eta, pair)
            assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))

    def test_p_factor_vanishes_at_pencil_roots(self, ideal):
        state = State(rho=1.0, v=[0.0] * 3, theta=1.0, q=[0.0] * 3)
        xi = Direction([1.0, 0.0, 0.0])
        for root in (GOLDEN_FAST, GOLDEN_SLOW, -GOLDEN_FAST, -GOLDEN_SLOW):
            assert abs(p_factor_3d(ideal, state, xi, root, (0.0, 0.0))) < 1e-9


def test_im_part_anchor():
    report = quartic_roots(DepressedQuartic(a0=1.0, a1=1.7, a2=-3.0))
    ims = sorted(abs(z.imag) for z in report.roots)
    assert ims[-1] == pytest.approx(IM_A1_17, abs=1e-10)
