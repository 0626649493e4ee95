"""Hot numeric kernels, each in a numba @njit and a pure-numpy variant.

Dispatch reads `_backend.USE_NUMBA` per call, so the backend benchmark can
flip it at runtime. All kernels are single-threaded and accumulate in a
fixed order, so results are deterministic for a given backend; the two
backends agree to ~1e-12 (different summation association only).

Array contracts shared by the block kernels:
  x        float64 state in permuted order; positions [0, offsets[-1])
           belong to communities, anything after is the unassigned pool.
  offsets  int64, length M+1, block c occupies [offsets[c], offsets[c+1]).
  out      float64 accumulator of full length; only in-community slots are
           touched by the dense kernels.
"""

from __future__ import annotations

import math

import numpy as np

from . import _backend
from ._backend import njit

# Relative imaginary-residue guard for complex-series evaluation.
IMAG_TOL = 1e-9


# ---------------------------------------------------------------------------
# per-community order parameters  r_a = (1/norm) sum_l exp(i*pi*a*x_l/L)
# ---------------------------------------------------------------------------


@njit
def _order_params_blocks_nb(x, offsets, p, pi_over_l, norm):
    m_comm = offsets.shape[0] - 1
    r = np.zeros((m_comm, 2 * p + 1), dtype=np.complex128)
    for c in range(m_comm):
        for m in range(offsets[c], offsets[c + 1]):
            t = pi_over_l * x[m]
            z = complex(math.cos(t), math.sin(t))
            zp = 1.0 + 0.0j
            for a in range(1, p + 1):
                zp = zp * z
                r[c, p + a] += zp
        r[c, p] = offsets[c + 1] - offsets[c]
    r /= norm
    for c in range(m_comm):
        for a in range(1, p + 1):
            r[c, p - a] = r[c, p + a].conjugate()
    return r


def _order_params_blocks_np(x, offsets, p, pi_over_l, norm):
    m_comm = offsets.shape[0] - 1
    n_in = int(offsets[-1])
    r = np.empty((m_comm, 2 * p + 1), dtype=np.complex128)
    r[:, p] = np.diff(offsets) / norm
    z = np.exp(1j * pi_over_l * x[:n_in])
    powers = np.ones(n_in, dtype=np.complex128)
    for a in range(1, p + 1):
        powers = powers * z
        r[:, p + a] = np.add.reduceat(powers, offsets[:-1]) / norm
        r[:, p - a] = np.conj(r[:, p + a])
    return r


def order_params_blocks(x, offsets, p, half_width, norm):
    """Per-community generalized order parameters, index layout a+p."""
    pi_over_l = math.pi / half_width
    if _backend.USE_NUMBA:
        return _order_params_blocks_nb(x, offsets, p, pi_over_l, float(norm))
    return _order_params_blocks_np(x, offsets, p, pi_over_l, float(norm))


# ---------------------------------------------------------------------------
# per-community moments  w_a = (1/norm) sum_l (x_l - x0)^a
# ---------------------------------------------------------------------------


@njit
def _moments_blocks_nb(x, offsets, p, x0, norm):
    m_comm = offsets.shape[0] - 1
    w = np.zeros((m_comm, p + 1), dtype=np.float64)
    for c in range(m_comm):
        for m in range(offsets[c], offsets[c + 1]):
            t = x[m] - x0
            tp = 1.0
            w[c, 0] += 1.0
            for a in range(1, p + 1):
                tp = tp * t
                w[c, a] += tp
    return w / norm


def _moments_blocks_np(x, offsets, p, x0, norm):
    m_comm = offsets.shape[0] - 1
    n_in = int(offsets[-1])
    w = np.empty((m_comm, p + 1), dtype=np.float64)
    w[:, 0] = np.diff(offsets)
    t = x[:n_in] - x0
    powers = np.ones(n_in, dtype=np.float64)
    for a in range(1, p + 1):
        powers = powers * t
        w[:, a] = np.add.reduceat(powers, offsets[:-1])
    return w / norm


def moments_blocks(x, offsets, p, x0, norm):
    """Per-community shifted power sums (moments), orders 0..p."""
    if _backend.USE_NUMBA:
        return _moments_blocks_nb(x, offsets, p, float(x0), float(norm))
    return _moments_blocks_np(x, offsets, p, float(x0), float(norm))


# ---------------------------------------------------------------------------
# dense series evaluation per node
#   complex:  out_m += Re sum_j E[c, j] exp(i*pi*(j-p)*x_m/L)
#   real:     out_m += sum_b A[c, b] cos(pi*b*x_m/L) + B[c, b] sin(...)
#   poly:     out_m += sum_b P[c, b] (a*x_m + b0)^b
# ---------------------------------------------------------------------------


@njit
def _dense_complex_nb(x, offsets, tbl, pi_over_l, out):
    m_comm = offsets.shape[0] - 1
    p = (tbl.shape[1] - 1) // 2
    n_viol = 0
    max_imag = 0.0
    for c in range(m_comm):
        for m in range(offsets[c], offsets[c + 1]):
            t = pi_over_l * x[m]
            w = complex(math.cos(t), math.sin(t))
            acc = tbl[c, 2 * p]
            for j in range(2 * p - 1, -1, -1):
                acc = acc * w + tbl[c, j]
            wbar = w.conjugate()
            shift = 1.0 + 0.0j
            for _ in range(p):
                shift = shift * wbar
            val = acc * shift
            re = val.real
            im = abs(val.imag)
            out[m] += re
            if im > max_imag:
                max_imag = im
            if im > IMAG_TOL * (1.0 + abs(re)):
                n_viol += 1
    return n_viol, max_imag


def _dense_complex_np(x, offsets, tbl, pi_over_l, out):
    p = (tbl.shape[1] - 1) // 2
    n_in = int(offsets[-1])
    comm_of = np.repeat(np.arange(offsets.shape[0] - 1), np.diff(offsets))
    phase = np.exp(1j * pi_over_l * np.outer(x[:n_in], np.arange(-p, p + 1)))
    vals = np.einsum("mj,mj->m", phase, tbl[comm_of])
    re = vals.real
    im = np.abs(vals.imag)
    out[:n_in] += re
    mask = im > IMAG_TOL * (1.0 + np.abs(re))
    return int(mask.sum()), float(im.max()) if n_in else 0.0


def dense_complex(x, offsets, tbl, half_width, out):
    pi_over_l = math.pi / half_width
    if _backend.USE_NUMBA:
        return _dense_complex_nb(x, offsets, tbl, pi_over_l, out)
    return _dense_complex_np(x, offsets, tbl, pi_over_l, out)


@njit
def _dense_real_nb(x, offsets, tbl_cos, tbl_sin, pi_over_l, out):
    m_comm = offsets.shape[0] - 1
    p = tbl_cos.shape[1] - 1
    for c in range(m_comm):
        for m in range(offsets[c], offsets[c + 1]):
            t = pi_over_l * x[m]
            c1 = math.cos(t)
            s1 = math.sin(t)
            ck = 1.0
            sk = 0.0
            val = tbl_cos[c, 0]
            for b in range(1, p + 1):
                ck, sk = ck * c1 - sk * s1, sk * c1 + ck * s1
                val += tbl_cos[c, b] * ck + tbl_sin[c, b] * sk
            out[m] += val


def _dense_real_np(x, offsets, tbl_cos, tbl_sin, pi_over_l, out):
    p = tbl_cos.shape[1] - 1
    n_in = int(offsets[-1])
    comm_of = np.repeat(np.arange(offsets.shape[0] - 1), np.diff(offsets))
    angles = np.outer(x[:n_in], np.arange(p + 1)) * pi_over_l
    out[:n_in] += np.einsum("mb,mb->m", np.cos(angles), tbl_cos[comm_of])
    out[:n_in] += np.einsum("mb,mb->m", np.sin(angles), tbl_sin[comm_of])


def dense_real(x, offsets, tbl_cos, tbl_sin, half_width, out):
    pi_over_l = math.pi / half_width
    if _backend.USE_NUMBA:
        _dense_real_nb(x, offsets, tbl_cos, tbl_sin, pi_over_l, out)
    else:
        _dense_real_np(x, offsets, tbl_cos, tbl_sin, pi_over_l, out)


@njit
def _dense_poly_nb(x, offsets, tbl, scale, shift, out):
    m_comm = offsets.shape[0] - 1
    p = tbl.shape[1] - 1
    for c in range(m_comm):
        for m in range(offsets[c], offsets[c + 1]):
            t = scale * x[m] + shift
            val = tbl[c, p]
            for b in range(p - 1, -1, -1):
                val = val * t + tbl[c, b]
            out[m] += val


def _dense_poly_np(x, offsets, tbl, scale, shift, out):
    p = tbl.shape[1] - 1
    n_in = int(offsets[-1])
    comm_of = np.repeat(np.arange(offsets.shape[0] - 1), np.diff(offsets))
    t = scale * x[:n_in] + shift
    val = tbl[comm_of, p].copy()
    for b in range(p - 1, -1, -1):
        val = val * t + tbl[comm_of, b]
    out[:n_in] += val


def dense_poly(x, offsets, tbl, scale, shift, out):
    if _backend.USE_NUMBA:
        _dense_poly_nb(x, offsets, tbl, float(scale), float(shift), out)
    else:
        _dense_poly_np(x, offsets, tbl, float(scale), float(shift), out)


# ---------------------------------------------------------------------------
# exact couplings over index pairs
#   trig:  h(d) = sum_a d_cos[a] cos(pi*a*d/L) + d_sin[a] sin(pi*a*d/L)
#   poly:  h(d) = sum_a coef[a] (d - x0)^a
#   cs:    eta(d2) = K / (sigma^2 + d2)^beta  acting on velocity differences
# ---------------------------------------------------------------------------


@njit(inline="always")
def _trig_pair_nb(d, d_cos, d_sin, pi_over_l):
    """Returns (h(d), h(-d))."""
    p = d_cos.shape[0] - 1
    t = pi_over_l * d
    c1 = math.cos(t)
    s1 = math.sin(t)
    ck = 1.0
    sk = 0.0
    hp = d_cos[0]
    hm = d_cos[0]
    for a in range(1, p + 1):
        ck, sk = ck * c1 - sk * s1, sk * c1 + ck * s1
        hp += d_cos[a] * ck + d_sin[a] * sk
        hm += d_cos[a] * ck - d_sin[a] * sk
    return hp, hm


@njit(inline="always")
def _poly_eval_nb(d, coef, x0):
    p = coef.shape[0] - 1
    t = d - x0
    val = coef[p]
    for a in range(p - 1, -1, -1):
        val = val * t + coef[a]
    return val


@njit
def _pairs_trig_nb(iu, iv, x, inv_n, d_cos, d_sin, pi_over_l, sgn, out):
    for e in range(iu.shape[0]):
        u = iu[e]
        v = iv[e]
        s = sgn[e] * inv_n
        hp, hm = _trig_pair_nb(x[v] - x[u], d_cos, d_sin, pi_over_l)
        out[u] += s * hp
        if u != v:
            out[v] += s * hm


@njit
def _pairs_poly_nb(iu, iv, x, inv_n, coef, x0, sgn, out):
    for e in range(iu.shape[0]):
        u = iu[e]
        v = iv[e]
        s = sgn[e] * inv_n
        out[u] += s * _poly_eval_nb(x[v] - x[u], coef, x0)
        if u != v:
            out[v] += s * _poly_eval_nb(x[u] - x[v], coef, x0)


@njit
def _pairs_cs_nb(iu, iv, pos, vel, inv_n, amp, sigma2, beta, sgn, out):
    ndim = pos.shape[1]
    for e in range(iu.shape[0]):
        u = iu[e]
        v = iv[e]
        d2 = 0.0
        for d in range(ndim):
            dd = pos[v, d] - pos[u, d]
            d2 += dd * dd
        eta = amp / (sigma2 + d2) ** beta
        s = sgn[e] * inv_n * eta
        if u == v:
            continue
        for d in range(ndim):
            dv = vel[v, d] - vel[u, d]
            out[u, d] += s * dv
            out[v, d] -= s * dv


def _trig_h_np(d, d_cos, d_sin, pi_over_l):
    p = d_cos.shape[0] - 1
    angles = np.outer(d, np.arange(p + 1)) * pi_over_l
    return np.cos(angles) @ d_cos + np.sin(angles) @ d_sin


def _poly_h_np(d, coef, x0):
    t = d - x0
    val = np.full_like(t, coef[-1])
    for a in range(coef.shape[0] - 2, -1, -1):
        val = val * t + coef[a]
    return val


def _pairs_diff_np(iu, iv, x, inv_n, h_of, sgn, out):
    d = x[iv] - x[iu]
    diag = iu == iv
    w = sgn * inv_n
    out += np.bincount(iu, weights=w * h_of(d), minlength=out.shape[0])
    hm = h_of(-d)
    hm[diag] = 0.0
    out += np.bincount(iv, weights=w * hm, minlength=out.shape[0])


def _pairs_cs_np(iu, iv, pos, vel, inv_n, amp, sigma2, beta, sgn, out):
    diff = pos[iv] - pos[iu]
    eta = amp / (sigma2 + np.sum(diff * diff, axis=1)) ** beta
    w = sgn * inv_n * eta
    w = np.where(iu == iv, 0.0, w)
    dv = vel[iv] - vel[iu]
    n = out.shape[0]
    for d in range(pos.shape[1]):
        out[:, d] += np.bincount(iu, weights=w * dv[:, d], minlength=n)
        out[:, d] -= np.bincount(iv, weights=w * dv[:, d], minlength=n)


def pairs_trig(iu, iv, x, inv_n, d_cos, d_sin, half_width, sgn, out):
    """Accumulate signed trig-coupling contributions over index pairs."""
    pi_over_l = math.pi / half_width
    if _backend.USE_NUMBA:
        _pairs_trig_nb(iu, iv, x, inv_n, d_cos, d_sin, pi_over_l, sgn, out)
    else:
        _pairs_diff_np(
            iu, iv, x, inv_n,
            lambda d: _trig_h_np(d, d_cos, d_sin, pi_over_l), sgn, out,
        )


def pairs_poly(iu, iv, x, inv_n, coef, x0, sgn, out):
    if _backend.USE_NUMBA:
        _pairs_poly_nb(iu, iv, x, inv_n, coef, x0, sgn, out)
    else:
        _pairs_diff_np(iu, iv, x, inv_n, lambda d: _poly_h_np(d, coef, x0), sgn, out)


def pairs_cs(iu, iv, pos, vel, inv_n, amp, sigma2, beta, sgn, out):
    if _backend.USE_NUMBA:
        _pairs_cs_nb(iu, iv, pos, vel, inv_n, amp, sigma2, beta, sgn, out)
    else:
        _pairs_cs_np(iu, iv, pos, vel, inv_n, amp, sigma2, beta, sgn, out)


def pairs_callable(iu, iv, x, inv_n, g2, sgn, out):
    """Generic two-argument coupling g(x_l, x_m), numpy path only.

    g2 must accept vectorized (x_l, x_m) arrays.
    """
    diag = iu == iv
    w = sgn * inv_n
    out += np.bincount(iu, weights=w * np.asarray(g2(x[iv], x[iu]), dtype=float),
                       minlength=out.shape[0])
    back = w * np.asarray(g2(x[iu], x[iv]), dtype=float)
    back[diag] = 0.0
    out += np.bincount(iv, weights=back, minlength=out.shape[0])


# ---------------------------------------------------------------------------
# higher-order (triplet) Kuramoto: literal quadruple loop per block
# ---------------------------------------------------------------------------


@njit
def _ho_naive_block_nb(theta, l1, l2, l3, l4):
    lam = theta.shape[0]
    out = np.zeros(lam, dtype=np.float64)
    for i1 in range(lam):
        a1 = l1 * theta[i1]
        for i2 in range(lam):
            a12 = a1 + l2 * theta[i2]
            for i3 in range(lam):
                a123 = a12 + l3 * theta[i3]
                for m in range(lam):
                    out[m] += math.sin(a123 + l4 * theta[m])
    return out / lam**3


def _ho_naive_block_np(theta, l1, l2, l3, l4):
    lam = theta.shape[0]
    out = np.zeros(lam, dtype=np.float64)
    tail = l3 * theta[:, None] + l4 * theta[None, :]
    for i1 in range(lam):
        a1 = l1 * theta[i1]
        for i2 in range(lam):
            out += np.sin(a1 + l2 * theta[i2] + tail).sum(axis=0)
    return out / lam**3


def ho_naive_block(theta, lambdas):
    l1, l2, l3, l4 = (float(v) for v in lambdas)
    if _backend.USE_NUMBA:
        return _ho_naive_block_nb(theta, l1, l2, l3, l4)
    return _ho_naive_block_np(theta, l1, l2, l3, l4)


# ---------------------------------------------------------------------------
# nearest-neighbor window recurrence (complex harmonic)
# ---------------------------------------------------------------------------


@njit
def _nn_recurrence_nb(ph, k, inv_n, anchor_every):
    n = ph.shape[0]
    f = np.empty(n, dtype=np.complex128)
    win = 0.0 + 0.0j
    for l in range(-k, k + 1):
        win += ph[l % n]
    f[0] = win * inv_n
    for m in range(1, n):
        if m % anchor_every == 0:
            win = 0.0 + 0.0j
            for l in range(m - k, m + k + 1):
                win += ph[l % n]
        else:
            win = win - ph[(m - 1 - k) % n] + ph[(m + k) % n]
        f[m] = win * inv_n
    return f


def _nn_recurrence_np(ph, k, inv_n, anchor_every):
    n = ph.shape[0]
    f = np.empty(n, dtype=np.complex128)
    step = -ph[(np.arange(1, n) - 1 - k) % n] + ph[(np.arange(1, n) + k) % n]
    start = 0
    win = ph[np.arange(-k, k + 1) % n].sum()
    while start < n:
        stop = min(start + anchor_every, n)
        if start > 0:
            win = ph[(np.arange(start - k, start + k + 1)) % n].sum()
        f[start] = win
        if stop > start + 1:
            f[start + 1 : stop] = win + np.cumsum(step[start : stop - 1])
        start = stop
    return f * inv_n


def nn_recurrence(ph, k, inv_n, anchor_every=1024):
    """Window sums F_m = inv_n * sum_{l=m-k..m+k} ph[l mod N] via the
    O(1)-per-step update, re-anchored by direct summation periodically."""
    if _backend.USE_NUMBA:
        return _nn_recurrence_nb(ph, k, inv_n, anchor_every)
    return _nn_recurrence_np(ph, k, inv_n, anchor_every)


# ---------------------------------------------------------------------------
# discrete spin model: literal double-loop field sums
# ---------------------------------------------------------------------------


@njit
def _spin_field_sums_nb(spins):
    n = spins.shape[0]
    f = np.empty(n, dtype=np.int64)
    for m in range(n):
        s = 0
        for l in range(n):
            s += spins[l]
        f[m] = s
    return f


def _spin_field_sums_np(spins):
    n = spins.shape[0]
    f = np.empty(n, dtype=np.int64)
    for m in range(n):
        f[m] = spins.sum()
    return f


def spin_field_sums(spins):
    """Per-node literal sum over all spins (the O(N^2) oracle path)."""
    if _backend.USE_NUMBA:
        return _spin_field_sums_nb(spins)
    return _spin_field_sums_np(spins)
