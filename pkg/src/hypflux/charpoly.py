"""Characteristic polynomial reductions and closed-form spectral data.

The determinant det(A(xi; U) - eta A0(U)) factors as

    rho^3 tau^2 (xi.v - eta)^4 P(xi, U; eta)

in three dimensions, where P is a quartic in z = xi.v - eta.  Dividing P
by rho e_theta tau gives the depressed quartic

    z^4 + a2 z^2 + a1 z + a0

whose coefficients this module computes, together with its discriminant,
its roots, the flux-magnitude threshold that forces complex roots, and
the closed-form speeds of the uncoupled comparison system.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .assembly import Direction, State, q_block
from .constitutive import ConstitutiveModel, ThermoPoint, evaluate, resolve_lambda_nu
from .errors import ConstitutiveViolation, DomainError, GammaZero, SingularBlock

#: Leading block condition threshold for the partitioned determinant.
SINGULAR_RTOL = 1e-12

#: Realness tolerance for quartic roots, scaled by 1 + spectral radius.
ROOT_REAL_TOL = 1e-9

#: Leading coefficient of the discriminant viewed as a quartic in a1.
POLY_A = -27.0


@dataclass(frozen=True)
class DepressedQuartic:
    """Monic quartic z^4 + a2 z^2 + a1 z + a0 with no cubic term."""

    a0: float
    a1: float
    a2: float

    def __call__(self, z):
        return ((z * z + self.a2) * z + self.a1) * z + self.a0

    def coefficients(self) -> list[float]:
        """Coefficients in descending degree, for companion-matrix solvers."""
        return [1.0, 0.0, self.a2, self.a1, self.a0]


@dataclass(frozen=True)
class DiscriminantBreakdown:
    """Discriminant of a depressed quartic and its quartic-in-a1 form.

    `delta` is the six-term polynomial in (a0, a1, a2); the same value is
    poly_a a1^4 + poly_b a1^2 + poly_c, which isolates the dependence on
    the odd coefficient.  Both evaluations are performed and must agree.
    """

    delta: float
    poly_a: float
    poly_b: float
    poly_c: float

    def delta_from_poly(self, a1: float) -> float:
        x = a1 * a1
        return (self.poly_a * x + self.poly_b) * x + self.poly_c


@dataclass(frozen=True)
class QuarticRootReport:
    """Roots of a depressed quartic with a realness classification.

    classification is one of "four_real", "two_real_two_complex" or
    "other"; a root counts as real when |Im z| <= 1e-9 (1 + max |root|).
    """

    roots: npt.NDArray[np.complex128]
    classification: str
    n_real: int
    max_residual: float


@dataclass(frozen=True)
class WitnessReport:
    """Flux threshold above which the quartic acquires complex roots."""

    lam: float
    nu: float
    gamma: float
    g: float
    a0: float
    a2: float
    poly_b: float
    poly_c: float
    q_threshold_sq: float
    witness_q_value: float
    delta_at_witness: float


@dataclass(frozen=True)
class CcjSpeeds:
    """Closed-form characteristic speeds of the uncoupled system.

    eta0 = xi.v has algebraic multiplicity four in the 8x8 pencil; the
    remaining four speeds are eta0 +- sqrt((r +- m)/2).  The strict
    ordering eta3 < eta4 < eta0 < eta2 < eta1 holds for every admissible
    state.
    """

    eta0: float
    eta1: float
    eta2: float
    eta3: float
    eta4: float
    r: float
    m: float

    def pencil_multiset(self) -> npt.NDArray[np.float64]:
        """All eight pencil eigenvalues (eta0 four times), sorted."""
        return np.sort(
            np.array([self.eta0] * 4 + [self.eta1, self.eta2, self.eta3, self.eta4])
        )


def block_det(L, M, N, P) -> float:
    """Determinant of [[L, M], [N, P]] via det(L) det(P - N L^-1 M).

    Raises
    ------
    SingularBlock
        If the leading block L is singular at working precision
        (smallest singular value below 1e-12 times the largest).
    """
    L, M, N, P = (np.asarray(b, dtype=float) for b in (L, M, N, P))
    sv = np.linalg.svd(L, compute_uv=False)
    if sv[-1] <= SINGULAR_RTOL * sv[0]:
        cond = np.inf if sv[-1] == 0.0 else sv[0] / sv[-1]
        raise SingularBlock(f"leading block is singular (condition number {cond:.3e})")
    schur = P - N @ np.linalg.solve(L, M)
    return float(np.linalg.det(L) * np.linalg.det(schur))


def _base_coefficients(ev, rho, theta):
    denom = rho * ev.e_theta * ev.tau
    a2 = -(rho * ev.e_theta * ev.p_rho * ev.tau
           + theta * ev.p_theta**2 * ev.tau / rho
           + ev.kappa) / denom
    a0 = ev.kappa * ev.p_rho / denom
    return a0, a2, denom


def quartic_from_state_1d(
    model: ConstitutiveModel, state: State, lambda_nu_override=None
) -> DepressedQuartic:
    """Depressed quartic in z = v - eta for a one-dimensional state.

    a2 = -(rho e_theta p_rho tau + theta p_theta^2 tau / rho + kappa)
         / (rho e_theta tau),
    a1 = (lambda + nu) p_theta q / (rho^2 e_theta tau),
    a0 = kappa p_rho / (rho e_theta tau).
    """
    if state.dim != 1:
        raise DomainError("quartic_from_state_1d needs a one-dimensional state")
    ev = evaluate(model, state.thermo)
    lam, nu = _pair(model, state, lambda_nu_override)
    a0, a2, denom = _base_coefficients(ev, state.rho, state.theta)
    a1 = (lam + nu) * ev.p_theta * float(state.q[0]) / (state.rho * denom)
    return DepressedQuartic(a0=a0, a1=a1, a2=a2)


def quartic_from_state_3d(
    model: ConstitutiveModel, state: State, xi, lambda_nu_override=None, ccj=False
) -> DepressedQuartic:
    """Depressed quartic factor in z = xi.v - eta for a unit direction xi.

    The odd coefficient is p_theta h(xi; q) / (rho^2 e_theta tau) with
    h(xi; q) = (Q_{lambda,nu}(xi; q) xi) . xi; it vanishes identically for
    the uncoupled variant.
    """
    if state.dim != 3:
        raise DomainError("quartic_from_state_3d needs a three-dimensional state")
    direction = xi if isinstance(xi, Direction) else Direction(xi)
    ev = evaluate(model, state.thermo)
    a0, a2, denom = _base_coefficients(ev, state.rho, state.theta)
    if ccj:
        a1 = 0.0
    else:
        lam, nu = _pair(model, state, lambda_nu_override)
        a1 = ev.p_theta * h_value(lam, nu, direction.xi, state.q) / (state.rho * denom)
    return DepressedQuartic(a0=a0, a1=a1, a2=a2)


def _pair(model, state, override):
    if override is not None:
        return resolve_lambda_nu(override)
    return float(model.lam(state.rho, state.theta)), float(model.nu(state.rho, state.theta))


def h_value(lam: float, nu: float, xi, q) -> float:
    """Coupling scalar h(xi; q) = (Q_{lambda,nu}(xi; q) xi) . xi.

    Computed through the block itself; it collapses to
    (lambda + nu) |xi|^2 (xi . q), so it vanishes identically on the
    coupling-sum-zero line.
    """
    xi = np.asarray(xi.xi if isinstance(xi, Direction) else xi, dtype=float)
    q = np.asarray(q, dtype=float)
    return float(q_block(lam, nu, xi, q) @ xi @ xi)


def discriminant(a0: float, a1: float, a2: float) -> DiscriminantBreakdown:
    """Discriminant of z^4 + a2 z^2 + a1 z + a0, with its a1-polynomial form.

    delta = 256 a0^3 - 128 a2^2 a0^2 + 16 a0 a2^4 + 144 a0 a1^2 a2
            - 4 a1^2 a2^3 - 27 a1^4

    and equivalently delta = A a1^4 + B a1^2 + C with A = -27,
    B = 144 a0 a2 - 4 a2^3, C = 16 a0 (a2^2 - 4 a0)^2.  Both forms are
    evaluated and cross-checked at relative tolerance 1e-10.
    """
    a0, a1, a2 = float(a0), float(a1), float(a2)
    delta = (256.0 * a0**3 - 128.0 * a2**2 * a0**2 + 16.0 * a0 * a2**4
             + 144.0 * a0 * a1**2 * a2 - 4.0 * a1**2 * a2**3 - 27.0 * a1**4)
    poly_b = 144.0 * a0 * a2 - 4.0 * a2**3
    poly_c = 16.0 * a0 * (a2**2 - 4.0 * a0) ** 2
    out = DiscriminantBreakdown(delta=delta, poly_a=POLY_A, poly_b=poly_b, poly_c=poly_c)
    other = out.delta_from_poly(a1)
    if abs(delta - other) > 1e-10 * max(1.0, abs(delta), abs(other)):
        raise ArithmeticError(
            f"discriminant forms disagree: {delta!r} vs {other!r} "
            f"at (a0={a0}, a1={a1}, a2={a2})"
        )
    return out


def quartic_roots(quartic: DepressedQuartic) -> QuarticRootReport:
    """Roots of the depressed quartic by the companion-matrix method.

    Roots are sorted by (real part, imaginary part).  The classification
    is consistent with the discriminant: delta < 0 with a1 != 0 gives
    exactly one complex-conjugate pair, hence "two_real_two_complex".
    """
    roots = np.roots(quartic.coefficients())
    roots = np.array(sorted(roots, key=lambda z: (z.real, z.imag)))
    radius = float(np.max(np.abs(roots)))
    tol = ROOT_REAL_TOL * (1.0 + radius)
    n_real = int(np.sum(np.abs(roots.imag) <= tol))
    if n_real == 4:
        label = "four_real"
    elif n_real == 2:
        label = "two_real_two_complex"
    else:
        label = "other"
    residual = float(np.max(np.abs(quartic(roots))))
    return QuarticRootReport(
        roots=roots, classification=label, n_real=n_real, max_residual=residual
    )


def witness_q(model: ConstitutiveModel, point: ThermoPoint, lambda_nu) -> WitnessReport:
    """Flux magnitude that certifies complex characteristic roots.

    Writing a1 = g q with g = (lambda + nu) p_theta / (rho^2 e_theta tau),
    the discriminant is negative for every q with

        q^2 > max{ (-C - B) / (A g^2), 2 / g^2 },

    so two characteristic speeds leave the real axis.  The returned
    witness is 1.05 sqrt(threshold), and the discriminant is re-evaluated
    there as an a-posteriori check.

    Raises
    ------
    GammaZero
        If lambda + nu = 0, in which case a1 = 0 for every q and no
        threshold exists.
    """
    lam, nu = resolve_lambda_nu(lambda_nu)
    gamma = lam + nu
    if abs(gamma) <= 1e-14 * (1.0 + abs(lam) + abs(nu)):
        raise GammaZero(
            f"no flux threshold exists for (lambda, nu) = ({lam}, {nu}): "
            "the odd quartic coefficient vanishes identically"
        )
    ev = evaluate(model, point)
    a0, a2, denom = _base_coefficients(ev, point.rho, point.theta)
    g = gamma * ev.p_theta / (point.rho * denom)
    breakdown = discriminant(a0, 0.0, a2)
    b, c = breakdown.poly_b, breakdown.poly_c
    threshold_sq = max((-c - b) / (POLY_A * g * g), 2.0 / (g * g))
    witness = 1.05 * np.sqrt(threshold_sq)
    delta_at = discriminant(a0, g * witness, a2).delta
    if not delta_at < 0.0:
        raise ArithmeticError(
            f"witness q = {witness!r} failed to produce a negative "
            f"discriminant (delta = {delta_at!r})"
        )
    return WitnessReport(
        lam=lam, nu=nu, gamma=gamma, g=g, a0=a0, a2=a2, poly_b=b, poly_c=c,
        q_threshold_sq=float(threshold_sq),
        witness_q_value=float(witness),
        delta_at_witness=float(delta_at),
    )


def ccj_speeds(
    model: ConstitutiveModel, point: ThermoPoint, v_dot_xi: float = 0.0
) -> CcjSpeeds:
    """Closed-form speeds of the uncoupled comparison system.

    With r = p_rho + theta p_theta^2 / (rho^2 e_theta) + kappa /
    (rho e_theta tau) and m = sqrt(r^2 - 4 p_rho kappa / (rho e_theta tau)),
    the speeds are eta0 = xi.v (multiplicity four) and
    eta0 +- sqrt((r +- m)/2).  Positivity of the coefficients guarantees
    0 <= m < r, so all five values are real and strictly ordered.
    """
    ev = evaluate(model, point)
    rho, theta = point.rho, point.theta
    w = ev.kappa / (rho * ev.e_theta * ev.tau)
    r = ev.p_rho + theta * ev.p_theta**2 / (rho**2 * ev.e_theta) + w
    m_sq = r * r - 4.0 * ev.p_rho * w
    if m_sq < -1e-12 * r * r:
        raise ConstitutiveViolation(
            f"speed splitting failed: r^2 - 4 p_rho kappa/(rho e_theta tau) "
            f"= {m_sq!r} < 0"
        )
    m = float(np.sqrt(max(m_sq, 0.0)))
    fast = float(np.sqrt((r + m) / 2.0))
    slow = float(np.sqrt(max((r - m) / 2.0, 0.0)))
    eta0 = float(v_dot_xi)
    return CcjSpeeds(
        eta0=eta0,
        eta1=eta0 + fast,
        eta2=eta0 + slow,
        eta3=eta0 - fast,
        eta4=eta0 - slow,
        r=float(r),
        m=m,
    )


def p_factor_3d(
    model: ConstitutiveModel, state: State, xi, eta: float, lambda_nu_override=None
) -> float:
    """Quartic factor P(xi, U; eta) of the 8x8 characteristic determinant.

    P = rho e_theta tau z^4
        - (tau rho e_theta p_rho + tau theta p_theta^2 / rho + kappa) z^2
        + (p_theta / rho) h(xi; q) z + kappa p_rho,  z = xi.v - eta.
    """
    direction = xi if isinstance(xi, Direction) else Direction(xi)
    quartic = quartic_from_state_3d(model, state, direction, lambda_nu_override)
    ev = evaluate(model, state.thermo)
    z = float(direction.xi @ state.v) - eta
    return state.rho * ev.e_theta * ev.tau * float(quartic(z))


def factored_determinant(
    model: ConstitutiveModel, state: State, xi, eta: float, lambda_nu_override=None
) -> float:
    """rho^3 tau^2 (xi.v - eta)^4 P(xi, U; eta), the factored determinant."""
    direction = xi if isinstance(xi, Direction) else Direction(xi)
    ev = evaluate(model, state.thermo)
    z = float(direction.xi @ state.v) - eta
    p = p_factor_3d(model, state, direction, eta, lambda_nu_override)
    return state.rho**3 * ev.tau**2 * z**4 * p
