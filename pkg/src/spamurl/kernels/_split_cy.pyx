# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled node split search.

Mirrors _split_py.py operation for operation: same candidate set, same
sequential accumulation order, same expressions, so both backends choose
bit-identical splits. Keep any arithmetic change mirrored there.
"""

from libc.math cimport INFINITY, frexp, isnan

import numpy as np

cimport numpy as cnp

GINI = 0
ENTROPY = 1
MSE = 2

cdef double _SQRT_HALF = 0.7071067811865476
cdef double _TWO_LOG2_E = 2.8853900817779268


cdef inline double _portable_log2(double x) noexcept nogil:
    # frexp + fixed-order atanh series; keep identical to _split_py.portable_log2
    cdef int e
    cdef double m = frexp(x, &e)
    cdef double ef = <double> e
    if m < _SQRT_HALF:
        m = m + m
        ef = ef - 1.0
    cdef double r = (m - 1.0) / (m + 1.0)
    cdef double s = r * r
    cdef double p = 1.0 / 23.0
    p = p * s + 1.0 / 21.0
    p = p * s + 1.0 / 19.0
    p = p * s + 1.0 / 17.0
    p = p * s + 1.0 / 15.0
    p = p * s + 1.0 / 13.0
    p = p * s + 1.0 / 11.0
    p = p * s + 1.0 / 9.0
    p = p * s + 1.0 / 7.0
    p = p * s + 1.0 / 5.0
    p = p * s + 1.0 / 3.0
    p = p * s + 1.0
    return ef + r * p * _TWO_LOG2_E


cdef inline double _impurity(int criterion, double p) noexcept nogil:
    cdef double q
    if criterion == 0:
        return 2.0 * p * (1.0 - p)
    if p <= 0.0 or p >= 1.0:
        return 0.0
    q = 1.0 - p
    return -(p * _portable_log2(p) + q * _portable_log2(q))


def best_split(double[:, ::1] X, cnp.int32_t[:, ::1] order,
               Py_ssize_t start, Py_ssize_t end, cnp.int32_t[::1] features,
               double[::1] w, double[::1] wv, double w_total, double wv_total,
               int criterion, Py_ssize_t min_samples_leaf):
    cdef Py_ssize_t m = end - start
    cdef int best_feature = -1
    cdef double best_thr = 0.0
    cdef double best_gain = -INFINITY
    if m < 2:
        return best_feature, best_thr, best_gain

    cdef double base = 0.0
    cdef double parent_imp = 0.0
    if criterion == 2:
        base = wv_total * wv_total / w_total
    else:
        parent_imp = _impurity(criterion, wv_total / w_total)

    cdef Py_ssize_t fi, f, j, r
    cdef double acc_w, acc_wv, vi, vj, wl, wvl, wr, wvr, pl, pr, il, ir, gain, thr
    with nogil:
        for fi in range(features.shape[0]):
            f = features[fi]
            acc_w = 0.0
            acc_wv = 0.0
            for j in range(m - 1):
                r = order[f, start + j]
                acc_w += w[r]
                acc_wv += wv[r]
                vi = X[r, f]
                vj = X[order[f, start + j + 1], f]
                if vi == vj:
                    continue
                if j + 1 < min_samples_leaf or m - j - 1 < min_samples_leaf:
                    continue
                wl = acc_w
                wvl = acc_wv
                wr = w_total - wl
                wvr = wv_total - wvl
                if criterion == 2:
                    gain = (wvl * wvl / wl + wvr * wvr / wr) - base
                else:
                    pl = wvl / wl
                    pr = wvr / wr
                    il = _impurity(criterion, pl)
                    ir = _impurity(criterion, pr)
                    gain = parent_imp - (wl * il + wr * ir) / w_total
                if isnan(gain):
                    continue
                if gain > best_gain:
                    thr = 0.5 * (vi + vj)
                    if thr == vj:
                        thr = vi
                    best_feature = <int> f
                    best_thr = thr
                    best_gain = gain
    return best_feature, best_thr, best_gain


def partition(double[:, ::1] X, cnp.int32_t[:, ::1] order,
              Py_ssize_t start, Py_ssize_t end, Py_ssize_t feature, double threshold,
              cnp.uint8_t[::1] mask, cnp.int32_t[::1] tmp):
    cdef Py_ssize_t d = order.shape[0]
    cdef Py_ssize_t f, j, r, nl, nr
    nl = 0
    with nogil:
        for j in range(start, end):
            r = order[0, j]
            mask[r] = 1 if X[r, feature] <= threshold else 0
        for f in range(d):
            nl = 0
            nr = 0
            for j in range(start, end):
                r = order[f, j]
                if mask[r]:
                    order[f, start + nl] = <cnp.int32_t> r
                    nl += 1
                else:
                    tmp[nr] = <cnp.int32_t> r
                    nr += 1
            for j in range(nr):
                order[f, start + nl + j] = tmp[j]
    return nl
