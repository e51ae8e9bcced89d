"""Uniform 1-D grids, field storage, norms, interpolation and resampling.

The whole iterated-rescaling procedure runs on one fixed uniform grid.  The
spatial rescaling x -> factor * x is realized by interpolating the old field
at contracted/stretched query points, never by changing the mesh spacing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import AsymmetricGrid, NonFinite, OutOfDomain, ZeroField

ORDERS = ("linear", "cubic")

# Clamp mode for out-of-domain resampling queries: hold the nearest boundary
# node value instead of a constant fill.
EDGE = "edge"


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [x_min, x_max] with n_points nodes (both ends included)."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min must be < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_points < 4:
            raise ValueError(f"n_points must be >= 4, got {self.n_points}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @cached_property
    def x(self) -> np.ndarray:
        # x_min + i*dx exactly; linspace would round the endpoints differently
        nodes = self.x_min + np.arange(self.n_points) * self.dx
        nodes.flags.writeable = False
        return nodes

    @property
    def symmetric(self) -> bool:
        """True when the grid is symmetric about 0 with a node exactly at 0."""
        return self.x_min == -self.x_max and self.n_points % 2 == 1


@dataclass
class Field:
    """Sampled solution values on a grid, one array per solution component."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.grid.n_points,):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid "
                f"({self.grid.n_points} nodes)"
            )

    def copy(self) -> "Field":
        return Field(self.grid, self.values.copy())

    def check_finite(self) -> None:
        if not np.all(np.isfinite(self.values)):
            raise NonFinite("field contains NaN or Inf values")


def sup_norm(f: Field) -> float:
    """max_i |values[i]|; raises NonFinite on NaN/Inf."""
    m = float(np.max(np.abs(f.values)))
    if not np.isfinite(m):
        raise NonFinite("sup norm is not finite")
    return m


def total_mass(f: Field) -> float:
    """Composite-trapezoid approximation of the integral of the field."""
    f.check_finite()
    return float(np.trapezoid(f.values, dx=f.grid.dx))


def _linear_weights(t: np.ndarray, n: int):
    """Stencil start index and fractional offset for linear interpolation."""
    i = np.clip(np.floor(t).astype(np.int64), 0, n - 2)
    return i, t - i


def _query_values(f: Field, xq: np.ndarray, order: str) -> np.ndarray:
    """Interpolated values at query points assumed inside the domain."""
    g, v = f.grid, f.values
    t = (xq - g.x_min) / g.dx
    n = g.n_points
    if order == "linear":
        i, s = _linear_weights(t, n)
        return v[i] * (1.0 - s) + v[i + 1] * s
    if order == "cubic":
        # 4-point Lagrange on the nearest enclosing stencil, shifted one-sided
        # at the domain edges.  Exact for cubic data.
        k = np.clip(np.floor(t).astype(np.int64) - 1, 0, n - 4)
        s = t - k
        w0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0
        w1 = s * (s - 2.0) * (s - 3.0) / 2.0
        w2 = -s * (s - 1.0) * (s - 3.0) / 2.0
        w3 = s * (s - 1.0) * (s - 2.0) / 6.0
        return w0 * v[k] + w1 * v[k + 1] + w2 * v[k + 2] + w3 * v[k + 3]
    raise ValueError(f"unknown interpolation order {order!r}")


def interpolate(f: Field, x: float, order: str = "linear") -> float:
    """Interpolate the field at a single point inside [x_min, x_max]."""
    g = f.grid
    tol = 1e-12 * (g.x_max - g.x_min)
    if x < g.x_min - tol or x > g.x_max + tol:
        raise OutOfDomain(f"query x={x} outside [{g.x_min}, {g.x_max}]")
    xq = np.array([min(max(x, g.x_min), g.x_max)])
    return float(_query_values(f, xq, order)[0])


def rescale_resample(f: Field, space_factor: float, order: str = "linear",
                     outside_value=0.0) -> Field:
    """New field on the same grid with node j holding f(space_factor * x_j).

    Factors > 1 contract the profile (edge nodes query outside the domain),
    factors < 1 widen it.  Out-of-domain queries return ``outside_value``; the
    sentinel :data:`EDGE` holds the nearest boundary node value instead, which
    is the right choice for step-like data whose far field is constant.
    """
    if not space_factor > 0:
        raise ValueError(f"space_factor must be > 0, got {space_factor}")
    g = f.grid
    xq = space_factor * g.x
    inside = (xq >= g.x_min) & (xq <= g.x_max)
    out = np.empty_like(f.values)
    out[inside] = _query_values(f, xq[inside], order)
    if outside_value == EDGE:
        out[~inside & (xq < g.x_min)] = f.values[0]
        out[~inside & (xq > g.x_max)] = f.values[-1]
    else:
        out[~inside] = float(outside_value)
    return Field(g, out)


def normalize_amplitude(f: Field) -> tuple[Field, float]:
    """Scale the field to unit sup norm; returns (scaled field, old sup norm)."""
    m = sup_norm(f)
    if m == 0.0:
        raise ZeroField("cannot normalize an identically-zero field")
    return Field(f.grid, f.values / m), m


def symmetrize_odd(f: Field) -> Field:
    """Replace the left half by the negative mirror image of the right half."""
    g = f.grid
    if not g.symmetric:
        raise AsymmetricGrid(
            "odd symmetrization needs x_min = -x_max and an odd node count"
        )
    mid = g.n_points // 2
    out = f.values.copy()
    out[mid] = 0.0
    out[:mid] = -out[:mid:-1]
    return Field(g, out)


def write_snapshot(path, f: Field, meta: dict) -> None:
    """Two-column ASCII profile with '#'-prefixed header metadata."""
    with open(path, "w") as fh:
        for key, val in meta.items():
            fh.write(f"# {key} = {val:.15g}\n" if isinstance(val, float)
                     else f"# {key} = {val}\n")
        for xi, vi in zip(f.grid.x, f.values):
            fh.write(f"{xi:.15g} {vi:.15g}\n")


def read_snapshot(path) -> tuple[Field, dict]:
    """Inverse of :func:`write_snapshot`."""
    meta = {}
    xs, vs = [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].partition("=")
                meta[key.strip()] = val.strip()
                continue
            a, b = line.split()
            xs.append(float(a))
            vs.append(float(b))
    x = np.asarray(xs)
    grid = Grid(x[0], x[-1], len(x))
    return Field(grid, np.asarray(vs)), meta
