"""Pencil spectra, hyperbolicity verdicts and eigenspace constructions.

Hyperbolicity of the quasilinear system in direction xi is decided from
the generalized eigenproblem A(xi; U) V = eta A0(U) V.  Since A0 is
diagonal and positive this reduces to a standard eigenproblem for
A0^{-1} A.  Verdicts:

HYPERBOLIC          all eigenvalues real, every eigenvalue has a full
                    set of eigenvectors (geometric = algebraic),
WEAKLY_HYPERBOLIC   all eigenvalues real but some eigenvalue defective,
NON_HYPERBOLIC      some eigenvalue has nonzero imaginary part.

Multiple eigenvalues are exact in theory but split at roughly sqrt(eps)
in floating point when defective, so eigenvalues are first grouped into
clusters by a spectral-radius-scaled gap and realness and multiplicities
are assessed on cluster representatives (means).  Means of clusters of a
real matrix are real to rounding because complex eigenvalues arrive in
conjugate pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
import numpy.typing as npt

from . import assembly
from .assembly import Direction, State, q_block
from .constitutive import ConstitutiveModel, ThermoPoint, resolve_lambda_nu
from .errors import DomainError, NotApplicable, SingularA0, WrongLambdaNu


class Verdict(str, Enum):
    HYPERBOLIC = "HYPERBOLIC"
    WEAKLY_HYPERBOLIC = "WEAKLY_HYPERBOLIC"
    NON_HYPERBOLIC = "NON_HYPERBOLIC"


@dataclass(frozen=True)
class ToleranceProfile:
    """Numerical thresholds for spectral classification.

    real_tol and cluster_gap are scaled by (1 + spectral radius); rank_rtol
    is relative to the largest singular value.
    """

    real_tol: float = 1e-9
    cluster_gap: float = 1e-7
    rank_rtol: float = 1e-10


DEFAULT_TOL = ToleranceProfile()


@dataclass(frozen=True)
class EigenCluster:
    """A group of numerically coincident eigenvalues."""

    representative: complex
    algebraic: int
    geometric: int
    members: npt.NDArray[np.complex128]

    @property
    def defective(self) -> bool:
        return self.geometric < self.algebraic


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues, clusters and the hyperbolicity verdict of one pencil."""

    eigenvalues: npt.NDArray[np.complex128]
    clusters: tuple[EigenCluster, ...]
    verdict: Verdict
    spectral_radius: float
    tol: ToleranceProfile = DEFAULT_TOL
    witnesses: dict | None = None
    provenance: dict | None = None

    def clustered_eigenvalues(self) -> npt.NDArray[np.complex128]:
        """Cluster representatives repeated by algebraic multiplicity, sorted."""
        values = [c.representative for c in self.clusters for _ in range(c.algebraic)]
        return np.array(sorted(values, key=lambda z: (z.real, z.imag)))

    def cluster_near(self, value: float) -> EigenCluster:
        """The cluster whose representative is closest to `value`."""
        return min(self.clusters, key=lambda c: abs(c.representative - value))


@dataclass(frozen=True)
class Eta0Basis:
    """Four eigenvectors spanning the eta0 = xi.v eigenspace at (1, -1).

    mixed holds the two vectors with density, tangential velocity and
    temperature components; flux holds the two vectors supported on the
    heat-flux slots.  vectors stacks them as columns (mixed first).
    residuals are || (A - eta0 A0) b || / (||A||_F ||b||) per column.
    """

    eta0: float
    vectors: npt.NDArray[np.float64]
    mixed: tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]
    flux: tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]
    tangent: tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]
    v5: tuple[float, float]
    residuals: npt.NDArray[np.float64]
    min_singular_value: float


@dataclass(frozen=True)
class DefectWitness:
    """Concrete (xi, q) pair exhibiting a defective eta0 eigenspace."""

    xi_bar: npt.NDArray[np.float64]
    q_bar: npt.NDArray[np.float64]
    state: State
    report: SpectrumReport
    eta0: float
    eta0_algebraic: int
    eta0_geometric: int


def rank_from_singular_values(mat, rtol: float = DEFAULT_TOL.rank_rtol) -> int:
    """Numerical rank: singular values above rtol times the largest."""
    sv = np.linalg.svd(np.asarray(mat), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def null_space(mat, rtol: float = DEFAULT_TOL.rank_rtol) -> npt.NDArray[np.complex128]:
    """Orthonormal basis of the numerical null space, columns of the result."""
    mat = np.asarray(mat)
    _, sv, vh = np.linalg.svd(mat)
    if sv.size == 0 or sv[0] == 0.0:
        keep = np.zeros(mat.shape[1], dtype=bool)
    else:
        full = np.zeros(mat.shape[1])
        full[: sv.size] = sv
        keep = full <= rtol * sv[0]
    return vh[keep].conj().T


def _cluster(values: npt.NDArray[np.complex128], gap: float):
    """Single-linkage grouping of eigenvalues with pair distance <= gap."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= gap:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda idx: idx[0])


def pencil_spectrum(a0, a, tol: ToleranceProfile | None = None) -> SpectrumReport:
    """Spectrum and hyperbolicity verdict of the pencil (a, a0).

    Parameters
    ----------
    a0 : (N, N) array
        Diagonal with positive entries.
    a : (N, N) array
        Directional symbol.
    tol : ToleranceProfile, optional

    Raises
    ------
    SingularA0
        If a0 has a nonpositive diagonal entry.
    ValueError
        If a0 is not diagonal or shapes do not match.
    """
    tol = tol or DEFAULT_TOL
    a0 = np.asarray(a0, dtype=float)
    a = np.asarray(a, dtype=float)
    if a0.shape != a.shape or a0.ndim != 2 or a0.shape[0] != a0.shape[1]:
        raise ValueError(f"shape mismatch: a0 {a0.shape}, a {a.shape}")
    diag = np.diagonal(a0)
    if np.any(a0 != np.diag(diag)):
        raise ValueError("a0 must be diagonal")
    if np.any(diag <= 0.0):
        bad = int(np.argmin(diag))
        raise SingularA0(f"a0 diagonal entry {bad} is {diag[bad]!r}, must be positive")

    n = a.shape[0]
    m = a / diag[:, None]
    eigenvalues = np.linalg.eigvals(m)
    eigenvalues = np.array(sorted(eigenvalues, key=lambda z: (z.real, z.imag)))
    radius = float(np.max(np.abs(eigenvalues))) if n else 0.0

    clusters = []
    for idx in _cluster(eigenvalues, tol.cluster_gap * (1.0 + radius)):
        members = eigenvalues[idx]
        rep = complex(np.mean(members))
        geo = n - rank_from_singular_values(a - rep * a0, tol.rank_rtol)
        clusters.append(
            EigenCluster(
                representative=rep,
                algebraic=len(idx),
                geometric=geo,
                members=members,
            )
        )

    real_gap = tol.real_tol * (1.0 + radius)
    complex_reps = [c for c in clusters if abs(c.representative.imag) > real_gap]
    defective = [c for c in clusters if c.defective]
    witnesses: dict | None = None
    if complex_reps:
        verdict = Verdict.NON_HYPERBOLIC
        witnesses = {
            "complex_pairs": [
                [c.representative.real, c.representative.imag] for c in complex_reps
            ]
        }
    elif defective:
        verdict = Verdict.WEAKLY_HYPERBOLIC
        witnesses = {
            "defective": [
                {
                    "eta": c.representative.real,
                    "algebraic": c.algebraic,
                    "geometric": c.geometric,
                }
                for c in defective
            ]
        }
    else:
        verdict = Verdict.HYPERBOLIC
    return SpectrumReport(
        eigenvalues=eigenvalues,
        clusters=tuple(clusters),
        verdict=verdict,
        spectral_radius=radius,
        tol=tol,
        witnesses=witnesses,
    )


def eigenvector_matrix(a0, a, report: SpectrumReport) -> npt.NDArray[np.complex128]:
    """Null-space bases of every cluster stacked as columns.

    The result has sum(geometric) columns; the pencil is diagonalizable
    exactly when that count equals N and the columns are well conditioned.
    """
    a0 = np.asarray(a0, dtype=float)
    a = np.asarray(a, dtype=float)
    blocks = [
        null_space(a - c.representative * a0, report.tol.rank_rtol)
        for c in report.clusters
    ]
    return np.hstack(blocks)


def classify_state(
    model: ConstitutiveModel,
    state: State,
    xi,
    lambda_nu=None,
    tol: ToleranceProfile | None = None,
    ccj: bool = False,
) -> SpectrumReport:
    """Assemble the symbol for (state, xi) and classify the pencil.

    lambda_nu overrides the model's coupling pair; ccj selects the
    uncoupled comparison system instead.  The report carries the state,
    direction and coupling pair as provenance.
    """
    direction = xi if isinstance(xi, Direction) else Direction(xi)
    a = assembly.symbol(model, state, direction, lambda_nu, ccj=ccj)
    a0 = assembly.a0_matrix(model, state)
    report = pencil_spectrum(a0, a, tol)
    if ccj:
        lam = nu = None
    elif lambda_nu is not None:
        lam, nu = resolve_lambda_nu(lambda_nu)
    else:
        lam = float(model.lam(state.rho, state.theta))
        nu = float(model.nu(state.rho, state.theta))
    provenance = {
        "model": model.name,
        "rho": state.rho,
        "theta": state.theta,
        "v": state.v.tolist(),
        "q": state.q.tolist(),
        "xi": direction.xi.tolist(),
        "lambda": lam,
        "nu": nu,
        "system": "ccj" if ccj else "coupled",
    }
    return replace(report, provenance=provenance)


#: Components of xi at or below this magnitude are treated as zero when
#: selecting the tangent-vector branch; consistent with UNIT_NORM_TOL.
BRANCH_TOL = 1e-12


def _tangent_pair(xi):
    """The branch-dependent tangent basis of the plane orthogonal to xi."""
    x1, x2, x3 = (float(c) for c in xi)
    if abs(x1) > BRANCH_TOL:
        return (
            np.array([-x2, x1, 0.0]),
            np.array([-x3, 0.0, x1]),
            "xi1",
        )
    if abs(x2) > BRANCH_TOL:
        return (
            np.array([x2, -x1, 0.0]),
            np.array([0.0, -x3, x2]),
            "xi2",
        )
    return np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]), "xi3"


def eta0_basis(
    model: ConstitutiveModel, state: State, xi, lambda_nu=None
) -> Eta0Basis:
    """Explicit basis of the four-dimensional eta0 eigenspace at (1, -1).

    For each tangent vector t orthogonal to xi the construction produces
    one mixed eigenvector

        ( -(p_theta / p_rho) V5, t, V5, 0, 0, 0 ),
        V5 = -(1 / kappa) (Q_{1,-1}(xi; q) t) . xi,

    and one flux eigenvector (0, 0, 0, 0, 0, t).  At (1, -1) the coupling
    block maps the tangent plane into the span of xi, which is what closes
    the eigenvector equation exactly.

    Raises
    ------
    WrongLambdaNu
        If the effective coupling pair is not (1, -1).
    """
    if state.dim != 3:
        raise DomainError("eta0_basis needs a three-dimensional state")
    direction = xi if isinstance(xi, Direction) else Direction(xi)
    if lambda_nu is not None:
        lam, nu = resolve_lambda_nu(lambda_nu)
    else:
        lam = float(model.lam(state.rho, state.theta))
        nu = float(model.nu(state.rho, state.theta))
    if abs(lam - 1.0) > 1e-12 or abs(nu + 1.0) > 1e-12:
        raise WrongLambdaNu(
            f"eta0_basis is constructive only at (1, -1), got ({lam}, {nu})"
        )
    ev = assembly.coefficients_at(model, state)
    x = direction.xi
    t1, t2, _branch = _tangent_pair(x)
    block = q_block(lam, nu, x, state.q)

    mixed = []
    v5s = []
    for t in (t1, t2):
        v5 = -float(block @ t @ x) / ev.kappa
        vec = np.zeros(8)
        vec[0] = -(ev.p_theta / ev.p_rho) * v5
        vec[1:4] = t
        vec[4] = v5
        mixed.append(vec)
        v5s.append(v5)
    flux = []
    for t in (t1, t2):
        vec = np.zeros(8)
        vec[5:8] = t
        flux.append(vec)

    vectors = np.column_stack(mixed + flux)
    a = assembly.symbol_3d(model, state, direction, (lam, nu))
    a0 = assembly.a0_matrix(model, state)
    eta0 = float(x @ state.v)
    pencil = a - eta0 * a0
    scale = float(np.linalg.norm(a))
    residuals = np.array(
        [
            np.linalg.norm(pencil @ vectors[:, j])
            / (scale * np.linalg.norm(vectors[:, j]))
            for j in range(4)
        ]
    )
    smin = float(np.linalg.svd(vectors, compute_uv=False)[-1])
    return Eta0Basis(
        eta0=eta0,
        vectors=vectors,
        mixed=(mixed[0], mixed[1]),
        flux=(flux[0], flux[1]),
        tangent=(t1, t2),
        v5=(v5s[0], v5s[1]),
        residuals=residuals,
        min_singular_value=smin,
    )


def defect_witness(
    model: ConstitutiveModel, point: ThermoPoint, lambda_nu, v=None
) -> DefectWitness:
    """Defective direction/flux pair for coupling pairs on the zero-sum line.

    For lambda + nu = 0 with (lambda, nu) != (1, -1), the direction
    xi = (1, 1, 1)/sqrt(3) with q = xi makes the eta0 eigenspace
    two-dimensional while its algebraic multiplicity stays four, so the
    verdict is WEAKLY_HYPERBOLIC.

    Raises
    ------
    NotApplicable
        If lambda + nu != 0, or at (1, -1) where no defect exists.
    """
    lam, nu = resolve_lambda_nu(lambda_nu)
    if abs(lam + nu) > 1e-12 * (1.0 + abs(lam) + abs(nu)):
        raise NotApplicable(
            f"defect witness needs lambda + nu = 0, got ({lam}, {nu})"
        )
    if abs(lam - 1.0) <= 1e-12 and abs(nu + 1.0) <= 1e-12:
        raise NotApplicable("(1, -1) has a full eta0 eigenspace, no defect exists")
    xi_bar = np.full(3, 1.0 / np.sqrt(3.0))
    q_bar = xi_bar.copy()
    velocity = np.zeros(3) if v is None else np.asarray(v, dtype=float)
    state = State(rho=point.rho, v=velocity, theta=point.theta, q=q_bar)
    report = classify_state(model, state, Direction(xi_bar), (lam, nu))
    eta0 = float(xi_bar @ velocity)
    cluster = report.cluster_near(eta0)
    return DefectWitness(
        xi_bar=xi_bar,
        q_bar=q_bar,
        state=state,
        report=report,
        eta0=eta0,
        eta0_algebraic=cluster.algebraic,
        eta0_geometric=cluster.geometric,
    )
