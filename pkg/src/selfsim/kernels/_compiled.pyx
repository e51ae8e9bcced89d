# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled time-stepping kernels.

Twin of ``reference.py``: same schemes, same coefficient conventions, same
periodic last-node-duplicates-first storage.  These loops dominate the cost
of long rescaling runs, hence the C versions.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, isfinite, pow, sqrt, tanh

from selfsim.errors import NegativeConcentration, Unstable

cnp.import_array()

BACKEND_NAME = "compiled"

cdef int _CHECK_EVERY = 500

cdef int D_CONSTANT = 0
cdef int D_HEAVISIDE = 1
cdef int D_TANH = 2
cdef int D_PIECEWISE = 3


cdef inline double _dval(double w, int kind, double eps, double sigma,
                         double delta) nogil:
    if kind == 0:
        return 1.0
    if kind == 1:
        if w < 0.0:
            return 1.0 + eps
        if w > 0.0:
            return 1.0
        return 1.0 + 0.5 * eps
    if kind == 2:
        return 1.0 + eps * 0.5 * (1.0 + tanh(-w / sigma))
    if w < -delta:
        return 1.0 + eps
    if w > delta:
        return 1.0
    return 1.0 - (eps / (2.0 * delta)) * (w - delta)


cdef inline double _pow_code(double x, int code, double p) nogil:
    # code: 1, 2, 3 small integer powers; 15 = 3/2; 0 = general pow
    if x <= 0.0:
        return 0.0
    if code == 1:
        return x
    if code == 2:
        return x * x
    if code == 3:
        return x * x * x
    if code == 15:
        return x * sqrt(x)
    return pow(x, p)


cdef inline int _p_code(double p):
    if p == 1.0:
        return 1
    if p == 2.0:
        return 2
    if p == 3.0:
        return 3
    if p == 1.5:
        return 15
    return 0


cdef double _maxabs(double[::1] u) nogil:
    cdef Py_ssize_t i
    cdef double m = 0.0, a
    for i in range(u.shape[0]):
        a = fabs(u[i])
        if a > m:
            m = a
    return m


cdef int _bad(double[::1] u, double guard) nogil:
    cdef double m = _maxabs(u)
    return (not isfinite(m)) or m > guard


def burgers_steps(cnp.ndarray[double, ndim=1] v, int n_steps, double c_adv,
                  double c_diff, double guard):
    cdef Py_ssize_t m = v.shape[0] - 1, i
    cdef int step
    cdef double[::1] u = v[:m].copy()
    cdef double[::1] new = np.empty(m)
    cdef double[::1] tmp
    for step in range(n_steps):
        for i in range(1, m - 1):
            new[i] = (u[i]
                      - c_adv * (u[i + 1] * u[i + 1] - u[i - 1] * u[i - 1])
                      + c_diff * (u[i - 1] - 2.0 * u[i] + u[i + 1]))
        new[0] = (u[0] - c_adv * (u[1] * u[1] - u[m - 1] * u[m - 1])
                  + c_diff * (u[m - 1] - 2.0 * u[0] + u[1]))
        new[m - 1] = (u[m - 1] - c_adv * (u[0] * u[0] - u[m - 2] * u[m - 2])
                      + c_diff * (u[m - 2] - 2.0 * u[m - 1] + u[0]))
        tmp = u
        u = new
        new = tmp
        if step % _CHECK_EVERY == _CHECK_EVERY - 1 and _bad(u, guard):
            raise Unstable(f"burgers window: blow-up guard {guard} exceeded")
    if _bad(u, guard):
        raise Unstable(f"burgers window: blow-up guard {guard} exceeded")
    out = np.empty(m + 1)
    out[:m] = u
    out[m] = u[0]
    return out


def reaction_diffusion_steps(cnp.ndarray[double, ndim=1] u0, int n_steps,
                             double dt, double dx, double m_exp, double p,
                             double diff_coef, double absorb_coef,
                             double arg_scale, int d_kind, double d_eps,
                             double d_sigma, double d_delta,
                             bint clip_negative, double guard):
    cdef Py_ssize_t m = u0.shape[0] - 1, i, im, ip
    cdef int step
    cdef double[::1] w = u0[:m].copy()
    cdef double[::1] prev1 = u0[:m].copy()
    cdef double[::1] prev2 = u0[:m].copy()
    cdef double[::1] s = np.empty(m)
    cdef double[::1] new = np.empty(m)
    cdef double[::1] dlast = np.ones(m)
    cdef double[::1] tmp
    cdef double dcoef = dt * diff_coef / (dx * dx)
    cdef double bscale = arg_scale / (2.0 * dt)
    cdef double acoef = dt * absorb_coef
    cdef double ut, dv, val, mn
    cdef int mp1_code = _p_code(m_exp + 1.0)
    cdef double mp1 = m_exp + 1.0
    cdef int pc = _p_code(p)
    cdef bint has_absorb = absorb_coef != 0.0
    cdef bint linear_diff = m_exp == 0.0
    for step in range(n_steps):
        for i in range(m):
            # m = 0 is plain linear diffusion: no nonnegative clamp inside
            # the Laplacian operand (matches the reference backend)
            s[i] = w[i] if linear_diff else _pow_code(w[i], mp1_code, mp1)
        mn = 0.0
        for i in range(m):
            im = i - 1 if i > 0 else m - 1
            ip = i + 1 if i < m - 1 else 0
            ut = bscale * (3.0 * w[i] - 4.0 * prev1[i] + prev2[i])
            dv = _dval(ut, d_kind, d_eps, d_sigma, d_delta)
            dlast[i] = dv
            val = w[i] + dcoef * dv * (s[im] - 2.0 * s[i] + s[ip])
            if has_absorb:
                val -= acoef * _pow_code(w[i], pc, p)
            if clip_negative and val < 0.0:
                val = 0.0
            if val < mn:
                mn = val
            new[i] = val
        if not clip_negative and mn < -1e-8:
            raise NegativeConcentration(
                f"concentration dropped to {mn} with clipping disabled")
        tmp = prev2
        prev2 = prev1
        prev1 = w
        w = new
        new = tmp
        if step % _CHECK_EVERY == _CHECK_EVERY - 1 and _bad(w, guard):
            raise Unstable(f"reaction-diffusion window: guard {guard} exceeded")
    if _bad(w, guard):
        raise Unstable(f"reaction-diffusion window: guard {guard} exceeded")
    out = np.empty(m + 1)
    out[:m] = w
    out[m] = w[0]
    d_out = np.empty(m + 1)
    d_out[:m] = dlast
    d_out[m] = dlast[0]
    return out, d_out


def kdv_steps(cnp.ndarray[double, ndim=1] u_prev,
              cnp.ndarray[double, ndim=1] u_curr, int n_steps,
              double adv_coef, double disp_coef, double u_left,
              double u_right, double guard):
    cdef Py_ssize_t n = u_curr.shape[0], i
    cdef int step
    cdef double[::1] ue = np.empty(n + 2)
    cdef double[::1] pe = np.empty(n + 2)
    cdef double[::1] new = np.empty(n + 2)
    cdef double[::1] tmp
    for i in range(n):
        ue[i] = u_curr[i]
        pe[i] = u_prev[i]
    ue[n] = ue[n + 1] = u_right
    pe[n] = pe[n + 1] = u_right
    for step in range(n_steps):
        for i in range(1, n - 1):
            new[i] = (ue[i]
                      - (ue[i + 2] - pe[i + 2])
                      - adv_coef * (ue[i] + ue[i + 1] + ue[i + 2])
                      * (ue[i + 2] - ue[i])
                      - disp_coef * (ue[i + 3] - 2.0 * ue[i + 2]
                                     + 2.0 * ue[i] - ue[i - 1]))
        new[0] = u_left
        new[n - 1] = new[n] = new[n + 1] = u_right
        tmp = pe
        pe = ue
        ue = new
        new = tmp
        if step % _CHECK_EVERY == _CHECK_EVERY - 1 and _bad(ue[:n], guard):
            raise Unstable(f"kdv window: blow-up guard {guard} exceeded")
    if _bad(ue[:n], guard):
        raise Unstable(f"kdv window: blow-up guard {guard} exceeded")
    return np.asarray(pe[:n]).copy(), np.asarray(ue[:n]).copy()


def autocatalytic_steps(cnp.ndarray[double, ndim=1] u0,
                        cnp.ndarray[double, ndim=1] v0, int n_steps,
                        double dt, double dx, double d, double p, double q,
                        double react_u, double react_v, bint clip_negative,
                        double guard):
    cdef Py_ssize_t m = u0.shape[0] - 1, i, im, ip
    cdef int step
    cdef double[::1] a = u0[:m].copy()
    cdef double[::1] b = v0[:m].copy()
    cdef double[::1] na = np.empty(m)
    cdef double[::1] nb = np.empty(m)
    cdef double[::1] tmp
    cdef double ca = dt / (dx * dx)
    cdef double cb = dt * d / (dx * dx)
    cdef double cu = dt * react_u
    cdef double cv = dt * react_v
    cdef double rate, va, vb, mn
    cdef bint same_pq = p == q
    cdef int pc = _p_code(p), qc = _p_code(q)
    for step in range(n_steps):
        mn = 0.0
        for i in range(m):
            im = i - 1 if i > 0 else m - 1
            ip = i + 1 if i < m - 1 else 0
            if same_pq:
                rate = _pow_code(a[i] * b[i], pc, p)
            else:
                rate = _pow_code(a[i], pc, p) * _pow_code(b[i], qc, q)
            va = a[i] + ca * (a[im] - 2.0 * a[i] + a[ip]) - cu * rate
            vb = b[i] + cb * (b[im] - 2.0 * b[i] + b[ip]) + cv * rate
            if clip_negative:
                if va < 0.0:
                    va = 0.0
                if vb < 0.0:
                    vb = 0.0
            else:
                if va < mn:
                    mn = va
                if vb < mn:
                    mn = vb
            na[i] = va
            nb[i] = vb
        if not clip_negative and mn < -1e-8:
            raise NegativeConcentration(
                f"concentration dropped to {mn} with clipping disabled")
        tmp = a
        a = na
        na = tmp
        tmp = b
        b = nb
        nb = tmp
        if step % _CHECK_EVERY == _CHECK_EVERY - 1 and (
                _bad(a, guard) or _bad(b, guard)):
            raise Unstable(f"autocatalytic window: guard {guard} exceeded")
    if _bad(a, guard) or _bad(b, guard):
        raise Unstable(f"autocatalytic window: guard {guard} exceeded")
    out_u = np.empty(m + 1)
    out_v = np.empty(m + 1)
    out_u[:m] = a
    out_u[m] = a[0]
    out_v[:m] = b
    out_v[m] = b[0]
    return out_u, out_v
