"""Deterministic direction coverings and seeded random state sampling."""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from .assembly import State

#: log-uniform sampling range for rho and theta.
THERMO_RANGE = (0.1, 10.0)

#: uniform sampling range for velocity and heat-flux components.
FIELD_RANGE = (-5.0, 5.0)


def fibonacci_sphere(count: int) -> npt.NDArray[np.float64]:
    """Deterministic golden-angle lattice of `count` unit vectors on S^2."""
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    i = np.arange(count, dtype=float)
    offset = 2.0 / count
    y = i * offset - 1.0 + offset / 2.0
    r = np.sqrt(np.maximum(1.0 - y * y, 0.0))
    phi = i * np.pi * (3.0 - np.sqrt(5.0))
    pts = np.column_stack([r * np.cos(phi), y, r * np.sin(phi)])
    return pts / np.linalg.norm(pts, axis=1)[:, None]


def sphere_covering(count: int, q=None) -> npt.NDArray[np.float64]:
    """Fibonacci covering plus the canonical axes, plus q/|q| when q != 0.

    The canonical axes and the flux direction are always appended so the
    covering probes the branch representatives and the direction aligned
    with the heat flux.
    """
    rows = [fibonacci_sphere(count), np.eye(3)]
    if q is not None:
        q = np.asarray(q, dtype=float)
        norm = float(np.linalg.norm(q))
        if norm > 0.0:
            rows.append((q / norm)[None, :])
    return np.vstack(rows)


def random_thermo(rng: np.random.Generator, count: int) -> npt.NDArray[np.float64]:
    """Log-uniform (rho, theta) samples over THERMO_RANGE, shape (count, 2)."""
    lo, hi = np.log(THERMO_RANGE[0]), np.log(THERMO_RANGE[1])
    return np.exp(rng.uniform(lo, hi, size=(count, 2)))


def random_state(rng: np.random.Generator, dim: int = 3) -> State:
    """One admissible random state: log-uniform thermo, uniform v and q."""
    rho, theta = random_thermo(rng, 1)[0]
    lo, hi = FIELD_RANGE
    return State(
        rho=float(rho),
        v=rng.uniform(lo, hi, size=dim),
        theta=float(theta),
        q=rng.uniform(lo, hi, size=dim),
    )


def random_unit(rng: np.random.Generator, dim: int = 3) -> npt.NDArray[np.float64]:
    """Uniform random unit vector (a random sign when dim = 1)."""
    if dim == 1:
        return np.array([1.0 if rng.uniform() < 0.5 else -1.0])
    vec = rng.normal(size=dim)
    norm = np.linalg.norm(vec)
    while norm < 1e-12:
        vec = rng.normal(size=dim)
        norm = np.linalg.norm(vec)
    return vec / norm
