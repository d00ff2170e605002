"""Quasilinear system assembly for the flux-coupled fluid equations.

The unknown vector is U = (rho, v, theta, q) with velocity v and heat
flux q in R^d, d in {1, 3}, so the system has N = 2d + 2 equations.
This module builds the temporal coefficient matrix A0(U), the flux
matrices A^i(U), the directional symbol A(xi; U) for unit xi, and the
lower-order source Q(U).  The coupling between the heat-flux rows and
the velocity columns is carried by the 3x3 block Q_{lambda,nu}(xi; q);
setting that block to zero instead gives the uncoupled comparison
system used for the closed-form speeds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .constitutive import (
    ConstitutiveEvaluation,
    ConstitutiveModel,
    ThermoPoint,
    evaluate,
    resolve_lambda_nu,
)
from .errors import DomainError

#: Tolerance on | |xi| - 1 | for unit directions.
UNIT_NORM_TOL = 1e-12


@dataclass(frozen=True)
class State:
    """Admissible state U = (rho, v, theta, q), v and q of equal length d."""

    rho: float
    v: npt.NDArray[np.float64]
    theta: float
    q: npt.NDArray[np.float64]

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.v, dtype=float))
        q = np.atleast_1d(np.asarray(self.q, dtype=float))
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "q", q)
        if v.ndim != 1 or v.shape[0] not in (1, 3):
            raise DomainError(f"v must have 1 or 3 components, got shape {v.shape}")
        if q.shape != v.shape:
            raise DomainError(f"q must match v in length, got {q.shape} vs {v.shape}")
        if not (self.rho > 0.0):
            raise DomainError(f"rho must be positive, got {self.rho}")
        if not (self.theta > 0.0):
            raise DomainError(f"theta must be positive, got {self.theta}")

    @property
    def dim(self) -> int:
        return self.v.shape[0]

    @property
    def size(self) -> int:
        """Number of scalar unknowns N = 2 dim + 2."""
        return 2 * self.dim + 2

    @property
    def thermo(self) -> ThermoPoint:
        return ThermoPoint(self.rho, self.theta)


@dataclass(frozen=True)
class Direction:
    """Unit propagation direction xi, length 1 or 3."""

    xi: npt.NDArray[np.float64]

    def __post_init__(self):
        xi = np.atleast_1d(np.asarray(self.xi, dtype=float))
        object.__setattr__(self, "xi", xi)
        if xi.ndim != 1 or xi.shape[0] not in (1, 3):
            raise DomainError(f"xi must have 1 or 3 components, got shape {xi.shape}")
        norm = float(np.linalg.norm(xi))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise DomainError(f"xi must be a unit vector, got |xi| = {norm!r}")

    @classmethod
    def from_vector(cls, vec) -> "Direction":
        """Normalize an arbitrary nonzero vector into a Direction."""
        arr = np.atleast_1d(np.asarray(vec, dtype=float))
        norm = float(np.linalg.norm(arr))
        if norm == 0.0 or not np.isfinite(norm):
            raise DomainError("cannot normalize a zero or non-finite direction")
        return cls(arr / norm)

    @property
    def dim(self) -> int:
        return self.xi.shape[0]


@dataclass(frozen=True)
class SystemMatrices:
    """Temporal matrix A0, flux matrices (A^1 .. A^d) and source Q(U)."""

    a0: npt.NDArray[np.float64]
    flux: tuple[npt.NDArray[np.float64], ...]
    source: npt.NDArray[np.float64]


def coefficients_at(model: ConstitutiveModel, state: State) -> ConstitutiveEvaluation:
    """Model coefficients at the state's thermodynamic point."""
    return evaluate(model, state.thermo)


def _pair_at(model, state, lambda_nu_override):
    if lambda_nu_override is not None:
        return resolve_lambda_nu(lambda_nu_override)
    return (
        float(model.lam(state.rho, state.theta)),
        float(model.nu(state.rho, state.theta)),
    )


def _as_direction(xi, dim: int) -> Direction:
    d = xi if isinstance(xi, Direction) else Direction(xi)
    if d.dim != dim:
        raise DomainError(f"direction has {d.dim} components, state has {dim}")
    return d


def a0_matrix(model: ConstitutiveModel, state: State) -> npt.NDArray[np.float64]:
    """Diagonal temporal matrix diag(1, rho 1_d, rho e_theta, tau 1_d)."""
    return _a0(coefficients_at(model, state), state)


def _a0(ev, state):
    d = state.dim
    entries = np.empty(state.size)
    entries[0] = 1.0
    entries[1 : 1 + d] = state.rho
    entries[1 + d] = state.rho * ev.e_theta
    entries[2 + d :] = ev.tau
    return np.diag(entries)


def source_vector(state: State) -> npt.NDArray[np.float64]:
    """Lower-order source Q(U) = (0, ..., 0, q)."""
    out = np.zeros(state.size)
    out[state.dim + 2 :] = state.q
    return out


def q_block(lam: float, nu: float, xi, q) -> npt.NDArray[np.float64]:
    """Coupling block Q_{lambda,nu}(xi; q), a 3x3 matrix.

    Entry (i, i) is gamma xi_i q_i + lambda_minus sum_{k != i} xi_k q_k and
    entry (i, j), i != j, is lambda_plus xi_i q_j + nu xi_j q_i, where
    gamma = lambda + nu, lambda_plus = (lambda + 1)/2 and
    lambda_minus = (lambda - 1)/2.  The formula is polynomial in xi, so it
    is also the unnormalized variant used by the linearity checks; physical
    callers pass unit xi.
    """
    xi = np.asarray(xi.xi if isinstance(xi, Direction) else xi, dtype=float)
    q = np.asarray(q, dtype=float)
    if xi.shape != (3,) or q.shape != (3,):
        raise DomainError("q_block is defined for three-component xi and q")
    gamma = lam + nu
    lam_plus = (lam + 1.0) / 2.0
    lam_minus = (lam - 1.0) / 2.0
    block = np.empty((3, 3))
    xq = xi * q
    total = xq.sum()
    for i in range(3):
        for j in range(3):
            if i == j:
                block[i, i] = gamma * xq[i] + lam_minus * (total - xq[i])
            else:
                block[i, j] = lam_plus * xi[i] * q[j] + nu * xi[j] * q[i]
    return block


def assemble_1d(
    model: ConstitutiveModel, state: State, lambda_nu_override=None
) -> SystemMatrices:
    """One-dimensional matrices A0, (A1,), Q(U).

    With z standing for the velocity v, the flux matrix is

        [ v      rho        0          0    ]
        [ p_rho  rho v      p_theta    0    ]
        [ 0      theta p_theta  rho v e_theta  1 ]
        [ 0      (lambda+nu) q  kappa      tau v ]

    and A0 = diag(1, rho, rho e_theta, tau).
    """
    if state.dim != 1:
        raise DomainError(f"assemble_1d needs a one-dimensional state, got d={state.dim}")
    ev = coefficients_at(model, state)
    lam, nu = _pair_at(model, state, lambda_nu_override)
    return SystemMatrices(
        a0=_a0(ev, state),
        flux=(_flux_1d(ev, state, lam, nu),),
        source=source_vector(state),
    )


def _flux_1d(ev, state, lam, nu, ccj=False):
    rho, theta = state.rho, state.theta
    v, q = float(state.v[0]), float(state.q[0])
    coupling = 0.0 if ccj else (lam + nu) * q
    return np.array(
        [
            [v, rho, 0.0, 0.0],
            [ev.p_rho, rho * v, ev.p_theta, 0.0],
            [0.0, theta * ev.p_theta, rho * v * ev.e_theta, 1.0],
            [0.0, coupling, ev.kappa, ev.tau * v],
        ]
    )


def assemble_3d(
    model: ConstitutiveModel, state: State, lambda_nu_override=None
) -> SystemMatrices:
    """Three-dimensional matrices A0, (A1, A2, A3), Q(U).

    The flux matrices are recovered by evaluating the directional symbol at
    the canonical axes, which is exact because the symbol is linear in xi.
    """
    if state.dim != 3:
        raise DomainError(f"assemble_3d needs a three-dimensional state, got d={state.dim}")
    ev = coefficients_at(model, state)
    lam, nu = _pair_at(model, state, lambda_nu_override)
    axes = np.eye(3)
    flux = tuple(_symbol_unnormalized(ev, state, axes[i], lam, nu) for i in range(3))
    return SystemMatrices(a0=_a0(ev, state), flux=flux, source=source_vector(state))


def assemble(
    model: ConstitutiveModel, state: State, lambda_nu_override=None
) -> SystemMatrices:
    """Dimension dispatch between assemble_1d and assemble_3d."""
    if state.dim == 1:
        return assemble_1d(model, state, lambda_nu_override)
    return assemble_3d(model, state, lambda_nu_override)


def _symbol_unnormalized(ev, state, xi, lam, nu, ccj=False):
    """Directional symbol for arbitrary (not necessarily unit) xi, d = 3."""
    rho, theta = state.rho, state.theta
    xi = np.asarray(xi, dtype=float)
    xv = float(xi @ state.v)
    a = np.zeros((8, 8))
    a[0, 0] = xv
    a[0, 1:4] = rho * xi
    a[1:4, 0] = ev.p_rho * xi
    a[1, 1] = a[2, 2] = a[3, 3] = rho * xv
    a[1:4, 4] = ev.p_theta * xi
    a[4, 1:4] = theta * ev.p_theta * xi
    a[4, 4] = rho * ev.e_theta * xv
    a[4, 5:8] = xi
    # The coupling block enters without a tau factor: this is the unique
    # scaling under which det(A - eta A0) factors with the same quartic
    # coefficients as the one-dimensional system (odd coefficient
    # p_theta h / (rho^2 e_theta tau)) for every relaxation time.
    if not ccj:
        a[5:8, 1:4] = q_block(lam, nu, xi, state.q)
    a[5:8, 4] = ev.kappa * xi
    a[5, 5] = a[6, 6] = a[7, 7] = ev.tau * xv
    return a


def symbol_3d(
    model: ConstitutiveModel, state: State, xi, lambda_nu_override=None
) -> npt.NDArray[np.float64]:
    """Symbol A_{lambda,nu}(xi; U) for unit xi, an 8x8 matrix."""
    if state.dim != 3:
        raise DomainError(f"symbol_3d needs a three-dimensional state, got d={state.dim}")
    direction = _as_direction(xi, 3)
    ev = coefficients_at(model, state)
    lam, nu = _pair_at(model, state, lambda_nu_override)
    return _symbol_unnormalized(ev, state, direction.xi, lam, nu)


def symbol_ccj(model: ConstitutiveModel, state: State, xi) -> npt.NDArray[np.float64]:
    """Uncoupled comparison symbol: as symbol_3d but with zero coupling block."""
    if state.dim != 3:
        raise DomainError(f"symbol_ccj needs a three-dimensional state, got d={state.dim}")
    direction = _as_direction(xi, 3)
    ev = coefficients_at(model, state)
    return _symbol_unnormalized(ev, state, direction.xi, 0.0, 0.0, ccj=True)


def symbol(
    model: ConstitutiveModel,
    state: State,
    xi,
    lambda_nu_override=None,
    ccj: bool = False,
) -> npt.NDArray[np.float64]:
    """Dimension-generic directional symbol A(xi; U) for unit xi.

    In one dimension the symbol is xi_1 A1; the uncoupled variant zeroes
    the heat-flux/velocity coupling entry.  In three dimensions this is
    symbol_3d or symbol_ccj.
    """
    direction = _as_direction(xi, state.dim)
    if state.dim == 1:
        ev = coefficients_at(model, state)
        lam, nu = _pair_at(model, state, lambda_nu_override)
        return float(direction.xi[0]) * _flux_1d(ev, state, lam, nu, ccj=ccj)
    if ccj:
        return symbol_ccj(model, state, direction)
    return symbol_3d(model, state, direction, lambda_nu_override)
