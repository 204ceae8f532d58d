"""Hot numeric kernels: batch evaluation of root-product polynomials and
pairwise log-distance sums.

Two interchangeable backends are provided.  The default is a numba
``@njit`` implementation; a pure-numpy fallback exists for environments
without a working JIT.  Selection is controlled by the environment
variable ``TURANLAB_BACKEND``:

    TURANLAB_BACKEND=numba   require the JIT backend (raise if missing)
    TURANLAB_BACKEND=numpy   force the vectorised fallback
    unset / "auto"           numba when importable, numpy otherwise

All kernels accept complex128 arrays.  Values of |p| and |p'| are
returned in log space so polynomials of high degree never overflow:
log|p(z)| = sum_j log|z - r_j| and, away from roots,
log|p'(z)| = log|p(z)| + log|sum_j 1/(z - r_j)|.

Exact root hits are handled by leave-one-out products: with one root at
z the derivative is the product over the remaining roots; with two or
more it vanishes.  A near-hit guard (squared distance < 1e-280) drops
the nearest root from the reciprocal sum, which keeps log|p'| finite
without overflowing 1/|z - r|.
"""

from __future__ import annotations

import math
import os

import numpy as np

# squared-distance threshold below which the reciprocal-sum path would
# overflow; leave-one-out on the nearest root is used instead
_NEAR_HIT2 = 1e-280


def _as_c128(a):
    return np.ascontiguousarray(np.asarray(a, dtype=np.complex128))


# ---- pure numpy backend ----


def _np_poly_log_eval(z, roots):
    z = _as_c128(z)
    roots = _as_c128(roots)
    dz = z[:, None] - roots[None, :]
    a2 = dz.real * dz.real + dz.imag * dz.imag
    hit = a2 == 0.0
    nhit = hit.sum(axis=1)
    with np.errstate(divide="ignore"):
        la = 0.5 * np.log(a2)
    logp = la.sum(axis=1)
    a2safe = np.where(hit, 1.0, a2)
    rec = dz.conj() / a2safe
    rec[hit] = 0.0
    s = rec.sum(axis=1)
    s2 = s.real * s.real + s.imag * s.imag
    with np.errstate(divide="ignore"):
        logdp = logp + 0.5 * np.log(s2)
    amin = a2.min(axis=1)
    # near hits: drop the nearest root from the reciprocal sum
    near = (nhit == 0) & (amin < _NEAR_HIT2)
    if near.any():
        with np.errstate(divide="ignore"):
            logdp[near] = logp[near] - 0.5 * np.log(amin[near])
    one = nhit == 1
    if one.any():
        lasafe = np.where(hit, 0.0, la)
        logdp[one] = lasafe[one].sum(axis=1)
    many = nhit >= 2
    if many.any():
        logdp[many] = -math.inf
    return logp, logdp


def _np_poly_eval(z, roots):
    z = _as_c128(z)
    roots = _as_c128(roots)
    dz = z[:, None] - roots[None, :]
    hit = dz == 0.0
    nhit = hit.sum(axis=1)
    dzsafe = np.where(hit, 1.0, dz)
    prod_nonzero = dzsafe.prod(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (1.0 / dzsafe)
    s[hit] = 0.0
    s = s.sum(axis=1)
    vals = np.where(nhit == 0, prod_nonzero, 0.0).astype(np.complex128)
    dvals = np.where(
        nhit == 0,
        prod_nonzero * s,
        np.where(nhit == 1, prod_nonzero, 0.0),
    ).astype(np.complex128)
    return vals, dvals


def _np_recip_sum(z, roots):
    z = _as_c128(z)
    roots = _as_c128(roots)
    dz = z[:, None] - roots[None, :]
    a2 = dz.real * dz.real + dz.imag * dz.imag
    hit = a2 == 0.0
    a2safe = np.where(hit, 1.0, a2)
    rec = dz.conj() / a2safe
    rec[hit] = 0.0
    s = rec.sum(axis=1)
    dmin = np.sqrt(a2.min(axis=1))
    return s, dmin


def _np_riemann_pow_sums(z, roots, q):
    # direct product accumulation, chunked to bound the broadcast size
    z = _as_c128(z)
    roots = _as_c128(roots)
    qh = 0.5 * q
    sp = 0.0
    sd = 0.0
    chunk = 1 << 15
    for k in range(0, len(z), chunk):
        dz = z[k:k + chunk, None] - roots[None, :]
        a2 = dz.real * dz.real + dz.imag * dz.imag
        hit = a2 == 0.0
        nhit = hit.sum(axis=1)
        a2safe = np.where(hit, 1.0, a2)
        m2 = a2safe.prod(axis=1)
        rec = dz.conj() / a2safe
        rec[hit] = 0.0
        s = rec.sum(axis=1)
        s2 = s.real * s.real + s.imag * s.imag
        pq = np.where(nhit == 0, m2 ** qh, 0.0)
        dq = np.where(
            nhit == 0, pq * s2 ** qh, np.where(nhit == 1, m2 ** qh, 0.0)
        )
        sp += float(pq.sum())
        sd += float(dq.sum())
    return sp, sd


def _np_pairwise_log_sum(pts):
    pts = _as_c128(pts)
    m = len(pts)
    if m < 2:
        return 0.0
    dz = pts[:, None] - pts[None, :]
    a2 = dz.real * dz.real + dz.imag * dz.imag
    iu = np.triu_indices(m, 1)
    vals = a2[iu]
    if (vals == 0.0).any():
        return -math.inf
    return float(0.5 * np.log(vals).sum())


def _np_sum_log_dists(cands, others):
    cands = _as_c128(cands)
    others = _as_c128(others)
    dz = cands[:, None] - others[None, :]
    a2 = dz.real * dz.real + dz.imag * dz.imag
    with np.errstate(divide="ignore"):
        out = 0.5 * np.log(a2).sum(axis=1)
    return out


_NUMPY_IMPL = {
    "poly_log_eval": _np_poly_log_eval,
    "poly_eval": _np_poly_eval,
    "recip_sum": _np_recip_sum,
    "riemann_pow_sums": _np_riemann_pow_sums,
    "pairwise_log_sum": _np_pairwise_log_sum,
    "sum_log_dists": _np_sum_log_dists,
}


# ---- numba backend ----


def _build_numba_impl():
    from numba import njit

    @njit(cache=True, nogil=True)
    def _poly_log_eval(z, roots):
        m = z.shape[0]
        n = roots.shape[0]
        logp = np.empty(m)
        logdp = np.empty(m)
        for i in range(m):
            zi = z[i]
            slog = 0.0
            sr = 0.0
            si = 0.0
            amin = math.inf
            nhit = 0
            for j in range(n):
                dzr = zi.real - roots[j].real
                dzi = zi.imag - roots[j].imag
                a2 = dzr * dzr + dzi * dzi
                if a2 == 0.0:
                    nhit += 1
                    continue
                slog += 0.5 * math.log(a2)
                if a2 < amin:
                    amin = a2
                sr += dzr / a2
                si += -dzi / a2
            if nhit > 0:
                logp[i] = -math.inf
                logdp[i] = slog if nhit == 1 else -math.inf
            elif amin < _NEAR_HIT2:
                logp[i] = slog
                logdp[i] = slog - 0.5 * math.log(amin)
            else:
                logp[i] = slog
                s2 = sr * sr + si * si
                logdp[i] = slog + 0.5 * math.log(s2) if s2 > 0.0 else -math.inf
        return logp, logdp

    @njit(cache=True, nogil=True)
    def _poly_eval(z, roots):
        m = z.shape[0]
        n = roots.shape[0]
        vals = np.empty(m, dtype=np.complex128)
        dvals = np.empty(m, dtype=np.complex128)
        for i in range(m):
            zi = z[i]
            v = 1.0 + 0.0j
            s = 0.0 + 0.0j
            nhit = 0
            for j in range(n):
                dz = zi - roots[j]
                if dz == 0.0 + 0.0j:
                    nhit += 1
                    continue
                v *= dz
                s += 1.0 / dz
            if nhit == 0:
                vals[i] = v
                dvals[i] = v * s
            elif nhit == 1:
                vals[i] = 0.0
                dvals[i] = v
            else:
                vals[i] = 0.0
                dvals[i] = 0.0
        return vals, dvals

    @njit(cache=True, nogil=True)
    def _recip_sum(z, roots):
        m = z.shape[0]
        n = roots.shape[0]
        out = np.empty(m, dtype=np.complex128)
        dmin = np.empty(m)
        for i in range(m):
            zi = z[i]
            sr = 0.0
            si = 0.0
            best = math.inf
            for j in range(n):
                dzr = zi.real - roots[j].real
                dzi = zi.imag - roots[j].imag
                a2 = dzr * dzr + dzi * dzi
                if a2 < best:
                    best = a2
                if a2 == 0.0:
                    continue
                sr += dzr / a2
                si += -dzi / a2
            out[i] = complex(sr, si)
            dmin[i] = math.sqrt(best)
        return out, dmin

    @njit(cache=True, nogil=True)
    def _riemann_pow_sums(z, roots, q):
        m = z.shape[0]
        n = roots.shape[0]
        qh = 0.5 * q
        sp = 0.0
        cp = 0.0
        sd = 0.0
        cd = 0.0
        for i in range(m):
            zi = z[i]
            m2 = 1.0
            sr = 0.0
            si = 0.0
            nhit = 0
            for j in range(n):
                dzr = zi.real - roots[j].real
                dzi = zi.imag - roots[j].imag
                a2 = dzr * dzr + dzi * dzi
                if a2 == 0.0:
                    nhit += 1
                    continue
                m2 *= a2
                sr += dzr / a2
                si += -dzi / a2
            if nhit == 0:
                pq = m2 ** qh
                s2 = sr * sr + si * si
                dq = pq * s2 ** qh
            elif nhit == 1:
                pq = 0.0
                dq = m2 ** qh
            else:
                pq = 0.0
                dq = 0.0
            # Kahan accumulation keeps the totals order-exact
            y = pq - cp
            t = sp + y
            cp = (t - sp) - y
            sp = t
            y = dq - cd
            t = sd + y
            cd = (t - sd) - y
            sd = t
        return sp, sd

    @njit(cache=True, nogil=True)
    def _pairwise_log_sum(pts):
        m = pts.shape[0]
        s = 0.0
        for i in range(m - 1):
            for j in range(i + 1, m):
                dzr = pts[i].real - pts[j].real
                dzi = pts[i].imag - pts[j].imag
                a2 = dzr * dzr + dzi * dzi
                if a2 == 0.0:
                    return -math.inf
                s += 0.5 * math.log(a2)
        return s

    @njit(cache=True, nogil=True)
    def _sum_log_dists(cands, others):
        m = cands.shape[0]
        n = others.shape[0]
        out = np.empty(m)
        for i in range(m):
            s = 0.0
            bad = False
            for j in range(n):
                dzr = cands[i].real - others[j].real
                dzi = cands[i].imag - others[j].imag
                a2 = dzr * dzr + dzi * dzi
                if a2 == 0.0:
                    bad = True
                    break
                s += 0.5 * math.log(a2)
            out[i] = -math.inf if bad else s
        return out

    def poly_log_eval(z, roots):
        return _poly_log_eval(_as_c128(z), _as_c128(roots))

    def poly_eval(z, roots):
        return _poly_eval(_as_c128(z), _as_c128(roots))

    def recip_sum(z, roots):
        return _recip_sum(_as_c128(z), _as_c128(roots))

    def riemann_pow_sums(z, roots, q):
        return _riemann_pow_sums(_as_c128(z), _as_c128(roots), float(q))

    def pairwise_log_sum(pts):
        return _pairwise_log_sum(_as_c128(pts))

    def sum_log_dists(cands, others):
        return _sum_log_dists(_as_c128(cands), _as_c128(others))

    return {
        "poly_log_eval": poly_log_eval,
        "poly_eval": poly_eval,
        "recip_sum": recip_sum,
        "riemann_pow_sums": riemann_pow_sums,
        "pairwise_log_sum": pairwise_log_sum,
        "sum_log_dists": sum_log_dists,
    }


def _select_backend():
    choice = os.environ.get("TURANLAB_BACKEND", "auto").strip().lower() or "auto"
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"TURANLAB_BACKEND must be numba or numpy, got {choice!r}")
    if choice == "numpy":
        return "numpy", _NUMPY_IMPL
    try:
        impl = _build_numba_impl()
        return "numba", impl
    except ImportError:
        if choice == "numba":
            raise
        return "numpy", _NUMPY_IMPL


BACKEND, _IMPL = _select_backend()

poly_log_eval = _IMPL["poly_log_eval"]
poly_eval = _IMPL["poly_eval"]
recip_sum = _IMPL["recip_sum"]
riemann_pow_sums = _IMPL["riemann_pow_sums"]
pairwise_log_sum = _IMPL["pairwise_log_sum"]
sum_log_dists = _IMPL["sum_log_dists"]


def available_backends():
    """Names of backends importable in this environment."""
    names = ["numpy"]
    try:
        import numba  # noqa: F401

        names.insert(0, "numba")
    except ImportError:
        pass
    return tuple(names)


def get_impl(name: str):
    """Return the kernel table for an explicit backend (for tests/benchmarks)."""
    if name == "numpy":
        return dict(_NUMPY_IMPL)
    if name == "numba":
        return _build_numba_impl()
    raise ValueError(f"unknown backend {name!r}")
