"""Pure-NumPy time-stepping kernels (fallback backend).

Each function advances one scaled-PDE window on a uniform grid and mirrors
the compiled Cython twins in ``_compiled.pyx`` exactly (same scheme, same
coefficient conventions).  Periodic models use the convention that the last
grid node duplicates the first; kernels operate on the unique nodes and
restore the duplicate on return.

All coefficients arrive pre-multiplied (dt and dx already folded in) so the
kernels are pure stencil loops.
"""

from __future__ import annotations

import numpy as np

from ..errors import NegativeConcentration, Unstable

BACKEND_NAME = "numpy"

_CHECK_EVERY = 500

# diffusivity profile kind codes shared with the compiled backend
D_CONSTANT, D_HEAVISIDE, D_TANH, D_PIECEWISE = 0, 1, 2, 3


def _guard(u: np.ndarray, guard: float, what: str) -> None:
    m = np.max(np.abs(u))
    if not np.isfinite(m) or m > guard:
        raise Unstable(f"{what}: field magnitude {m!r} exceeded blow-up guard {guard}")


def _lap_periodic(u: np.ndarray, out: np.ndarray) -> np.ndarray:
    out[1:-1] = u[:-2] - 2.0 * u[1:-1] + u[2:]
    out[0] = u[-1] - 2.0 * u[0] + u[1]
    out[-1] = u[-2] - 2.0 * u[-1] + u[0]
    return out


def _eval_diffusivity(w, kind: int, eps: float, sigma: float, delta: float):
    """Transport coefficient as a function of the (scaled) time derivative."""
    if kind == D_CONSTANT:
        return np.ones_like(w)
    if kind == D_HEAVISIDE:
        # tie-break at exactly zero: midpoint of the two states
        return np.where(w < 0.0, 1.0 + eps,
                        np.where(w > 0.0, 1.0, 1.0 + 0.5 * eps))
    if kind == D_TANH:
        return 1.0 + eps * 0.5 * (1.0 + np.tanh(-w / sigma))
    if kind == D_PIECEWISE:
        ramp = 1.0 - (eps / (2.0 * delta)) * (w - delta)
        return np.where(w < -delta, 1.0 + eps, np.where(w > delta, 1.0, ramp))
    raise ValueError(f"unknown diffusivity kind code {kind}")


def _pow_nonneg(u: np.ndarray, p: float) -> np.ndarray:
    """u**p with negative inputs treated as zero (fractional p safe)."""
    if p == 1.0:
        return np.maximum(u, 0.0)
    base = np.maximum(u, 0.0)
    if p == 2.0:
        return base * base
    if p == 3.0:
        return base * base * base
    if p == 1.5:
        return base * np.sqrt(base)
    return np.power(base, p)


def burgers_steps(v: np.ndarray, n_steps: int, c_adv: float, c_diff: float,
                  guard: float) -> np.ndarray:
    """Forward-Euler conservative advection-diffusion steps, periodic domain.

    Update: v_i += -c_adv*(v_{i+1}^2 - v_{i-1}^2) + c_diff*(v_{i-1} - 2v_i + v_{i+1})
    with c_adv = dt*kappa/(4 dx) and c_diff = dt*nu/dx^2.
    """
    u = v[:-1].copy()
    new = np.empty_like(u)
    sq = np.empty_like(u)
    lap = np.empty_like(u)
    for step in range(n_steps):
        np.multiply(u, u, out=sq)
        _lap_periodic(u, lap)
        new[1:-1] = u[1:-1] - c_adv * (sq[2:] - sq[:-2]) + c_diff * lap[1:-1]
        new[0] = u[0] - c_adv * (sq[1] - sq[-1]) + c_diff * lap[0]
        new[-1] = u[-1] - c_adv * (sq[0] - sq[-2]) + c_diff * lap[-1]
        u, new = new, u
        if step % _CHECK_EVERY == _CHECK_EVERY - 1:
            _guard(u, guard, "burgers window")
    _guard(u, guard, "burgers window")
    out = np.empty(u.size + 1)
    out[:-1] = u
    out[-1] = u[0]
    return out


def reaction_diffusion_steps(u: np.ndarray, n_steps: int, dt: float, dx: float,
                             m: float, p: float, diff_coef: float,
                             absorb_coef: float, arg_scale: float,
                             d_kind: int, d_eps: float, d_sigma: float,
                             d_delta: float, clip_negative: bool,
                             guard: float):
    """Explicit steps of u_t = D(...) * diff_coef * (u^(m+1))_xx - absorb_coef * u^p.

    Periodic domain.  D's argument is arg_scale times the second-order
    backward difference (3u^k - 4u^(k-1) + u^(k-2)) / (2 dt); the first two
    steps bootstrap the missing history with copies of the initial data.
    Returns (final field, diffusivity array of the last step).
    """
    w = u[:-1].copy()
    prev1 = w.copy()
    prev2 = w.copy()
    s = np.empty_like(w)
    lap = np.empty_like(w)
    dcoef = dt * diff_coef / (dx * dx)
    bscale = arg_scale / (2.0 * dt)
    D = np.ones_like(w)
    for step in range(n_steps):
        ut = bscale * (3.0 * w - 4.0 * prev1 + prev2)
        D = _eval_diffusivity(ut, d_kind, d_eps, d_sigma, d_delta)
        if m == 0.0:
            s[:] = w
        else:
            s[:] = _pow_nonneg(w, m + 1.0)
        _lap_periodic(s, lap)
        new = w + dcoef * D * lap
        if absorb_coef != 0.0:
            new -= (dt * absorb_coef) * _pow_nonneg(w, p)
        if clip_negative:
            np.maximum(new, 0.0, out=new)
        elif np.min(new) < -1e-8:
            raise NegativeConcentration(
                f"concentration dropped to {np.min(new)} with clipping disabled")
        prev2, prev1, w = prev1, w, new
        if step % _CHECK_EVERY == _CHECK_EVERY - 1:
            _guard(w, guard, "reaction-diffusion window")
    _guard(w, guard, "reaction-diffusion window")
    out = np.empty(w.size + 1)
    out[:-1] = w
    out[-1] = w[0]
    d_out = np.empty(w.size + 1)
    d_out[:-1] = D
    d_out[-1] = D[0]
    return out, d_out


def kdv_steps(u_prev: np.ndarray, u_curr: np.ndarray, n_steps: int,
              adv_coef: float, disp_coef: float, u_left: float,
              u_right: float, guard: float):
    """Three-level explicit dispersive steps with Dirichlet ends.

    Node i of the new level combines nodes i-1..i+3 of the current level and
    node i+2 of the previous one:

      u_i^new = u_i - (u_{i+2} - u_{i+2}^prev)
                - adv_coef * (u_i + u_{i+1} + u_{i+2}) * (u_{i+2} - u_i)
                - disp_coef * (u_{i+3} - 2u_{i+2} + 2u_i - u_{i-1})

    with adv_coef = 2 dt kappa / (3 dx) and disp_coef = dt eps2 / dx^3.  Both
    boundary nodes are held at their Dirichlet values; the two ghost nodes
    past the right end carry the right boundary state, which realizes a
    zero-slope far field there.
    """
    n = u_curr.size
    ue = np.empty(n + 2)
    pe = np.empty(n + 2)
    ue[:n] = u_curr
    ue[n:] = u_right
    pe[:n] = u_prev
    pe[n:] = u_right
    new = np.empty(n + 2)
    for step in range(n_steps):
        new[1:n - 1] = (
            ue[1:n - 1]
            - (ue[3:n + 1] - pe[3:n + 1])
            - adv_coef * (ue[1:n - 1] + ue[2:n] + ue[3:n + 1])
            * (ue[3:n + 1] - ue[1:n - 1])
            - disp_coef * (ue[4:n + 2] - 2.0 * ue[3:n + 1]
                           + 2.0 * ue[1:n - 1] - ue[0:n - 2])
        )
        new[0] = u_left
        new[n - 1:] = u_right
        pe, ue, new = ue, new, pe
        if step % _CHECK_EVERY == _CHECK_EVERY - 1:
            _guard(ue[:n], guard, "kdv window")
    _guard(ue[:n], guard, "kdv window")
    return pe[:n].copy(), ue[:n].copy()


def autocatalytic_steps(u: np.ndarray, v: np.ndarray, n_steps: int, dt: float,
                        dx: float, d: float, p: float, q: float,
                        react_u: float, react_v: float, clip_negative: bool,
                        guard: float):
    """Explicit steps of the two-species reaction-diffusion system.

    u_t = u_xx - react_u * u^p v^q,  v_t = d v_xx + react_v * u^p v^q,
    periodic domain.  For p = q the reaction rate is computed from the
    product u*v with a single power.
    """
    a = u[:-1].copy()
    b = v[:-1].copy()
    lap_a = np.empty_like(a)
    lap_b = np.empty_like(b)
    ca = dt / (dx * dx)
    cb = dt * d / (dx * dx)
    for step in range(n_steps):
        if p == q:
            rate = _pow_nonneg(a * b, p)
        else:
            rate = _pow_nonneg(a, p) * _pow_nonneg(b, q)
        _lap_periodic(a, lap_a)
        _lap_periodic(b, lap_b)
        new_a = a + ca * lap_a - (dt * react_u) * rate
        new_b = b + cb * lap_b + (dt * react_v) * rate
        if clip_negative:
            np.maximum(new_a, 0.0, out=new_a)
            np.maximum(new_b, 0.0, out=new_b)
        elif min(np.min(new_a), np.min(new_b)) < -1e-8:
            raise NegativeConcentration(
                "concentration dropped below -1e-8 with clipping disabled")
        a, b = new_a, new_b
        if step % _CHECK_EVERY == _CHECK_EVERY - 1:
            _guard(a, guard, "autocatalytic window")
            _guard(b, guard, "autocatalytic window")
    _guard(a, guard, "autocatalytic window")
    _guard(b, guard, "autocatalytic window")
    out_u = np.empty(a.size + 1)
    out_v = np.empty(b.size + 1)
    out_u[:-1], out_u[-1] = a, a[0]
    out_v[:-1], out_v[-1] = b, b[0]
    return out_u, out_v
