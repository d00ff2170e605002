"""Plane-wave modal analysis with the linearized relaxation source.

Inserting U ~ exp(i(k x . xi - omega t)) into the system linearized at a
frozen state gives

    det(-i omega A0 + i k A(xi; U) + B) = 0,

with B = dQ/dU the source Jacobian (identity on the heat-flux rows, zero
elsewhere; exact because Q is linear in q).  Equivalently the N branches
omega(k) are the eigenvalues of A0^{-1} (k A - i B).  max Im omega stays
bounded in k for hyperbolic states and damped relaxation, while a
complex characteristic speed eta makes max Im omega grow like
k |Im eta|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from . import assembly
from .assembly import Direction, State
from .constitutive import ConstitutiveModel


@dataclass(frozen=True)
class ModeGrowth:
    """Growth rates max Im omega(k) over a wavenumber list."""

    wavenumbers: npt.NDArray[np.float64]
    growth_rates: npt.NDArray[np.float64]
    omegas: tuple[npt.NDArray[np.complex128], ...]
    with_source: bool

    @property
    def ratios(self) -> npt.NDArray[np.float64]:
        """Growth per wavenumber, max Im omega / k (nan at k = 0)."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(
                self.wavenumbers != 0.0,
                self.growth_rates / self.wavenumbers,
                np.nan,
            )


def source_jacobian(state: State) -> npt.NDArray[np.float64]:
    """Jacobian of Q(U) = (0, ..., 0, q): ones on the heat-flux diagonal."""
    n = state.size
    b = np.zeros((n, n))
    for i in range(state.dim + 2, n):
        b[i, i] = 1.0
    return b


def mode_growth(
    model: ConstitutiveModel,
    state: State,
    xi,
    k_values,
    lambda_nu=None,
    with_source: bool = True,
    ccj: bool = False,
) -> ModeGrowth:
    """Dispersion branches omega(k) and their maximal imaginary parts.

    Parameters
    ----------
    model, state, xi
        Frozen state and unit direction for the linearization.
    k_values : sequence of float
        Wavenumbers to evaluate.
    lambda_nu : pair or preset name, optional
        Coupling override, as in the assembly layer.
    with_source : bool
        If False the source Jacobian is dropped and omega = k eta exactly,
        which isolates the convective part.
    ccj : bool
        Use the uncoupled comparison symbol.
    """
    direction = xi if isinstance(xi, Direction) else Direction(xi)
    a = assembly.symbol(model, state, direction, lambda_nu, ccj=ccj)
    a0 = assembly.a0_matrix(model, state)
    b = source_jacobian(state) if with_source else np.zeros_like(a)
    inv_diag = 1.0 / np.diagonal(a0)

    ks = np.asarray(list(k_values), dtype=float)
    omegas = []
    rates = np.empty(ks.shape)
    for idx, k in enumerate(ks):
        matrix = inv_diag[:, None] * (k * a - 1j * b)
        w = np.linalg.eigvals(matrix)
        w = np.array(sorted(w, key=lambda z: (z.real, z.imag)))
        omegas.append(w)
        rates[idx] = float(np.max(w.imag))
    return ModeGrowth(
        wavenumbers=ks,
        growth_rates=rates,
        omegas=tuple(omegas),
        with_source=with_source,
    )
