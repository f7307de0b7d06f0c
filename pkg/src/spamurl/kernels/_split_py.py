"""Pure-numpy node split search, the fallback when the compiled kernel is absent.

Both backends consume the same pre-sorted per-feature row orders, accumulate
left-side statistics in the same sequential order, and evaluate the same
expressions, so the chosen (feature, threshold, gain) is bit-identical
whichever backend is active. Keep any arithmetic change mirrored in
_split_cy.pyx.
"""

import numpy as np

GINI = 0
ENTROPY = 1
MSE = 2

# atanh series coefficients 1/(2k+1) for k = 10..0; exact IEEE divisions,
# so the C side produces the same doubles from the same literals.
_ATANH_COEFFS = tuple(1.0 / (2 * k + 1) for k in range(10, -1, -1))
_SQRT_HALF = 0.7071067811865476
_TWO_LOG2_E = 2.8853900817779268


def portable_log2(x):
    """log2 via frexp + fixed-order atanh series; bit-identical to the C twin.

    Library log2 implementations differ by an ulp between numpy's SIMD path
    and libm, which would let near-tied split gains order differently across
    backends. Accuracy here is within a couple of ulps of correctly rounded,
    and exact on powers of two.
    """
    x = np.asarray(x, dtype=np.float64)
    m, e = np.frexp(x)
    low = m < _SQRT_HALF
    m = np.where(low, m + m, m)
    ef = e.astype(np.float64) - low
    r = (m - 1.0) / (m + 1.0)
    s = r * r
    p = np.full_like(r, 1.0 / 23.0)
    for c in _ATANH_COEFFS:
        p = p * s + c
    return ef + r * p * _TWO_LOG2_E


def impurity(criterion, p):
    """Binary impurity of a positive fraction; elementwise over arrays."""
    p = np.asarray(p, dtype=np.float64)
    if criterion == GINI:
        return 2.0 * p * (1.0 - p)
    out = np.zeros_like(p)
    inside = (p > 0.0) & (p < 1.0)
    pi = p[inside]
    qi = 1.0 - pi
    out[inside] = -(pi * portable_log2(pi) + qi * portable_log2(qi))
    return out


def best_split(X, order, start, end, features, w, wv, w_total, wv_total, criterion, min_samples_leaf):
    """Best (feature, threshold, gain) for the node segment [start, end).

    Candidates sit between consecutive distinct sorted values; the threshold
    is their midpoint, clamped down when rounding would swallow the upper
    value. Gain ties resolve to the lowest feature index, then the lowest
    threshold. Returns feature -1 when no structurally valid candidate exists.
    """
    m = end - start
    best_feature = -1
    best_thr = 0.0
    best_gain = -np.inf
    if m < 2:
        return best_feature, best_thr, best_gain

    if criterion == MSE:
        base = wv_total * wv_total / w_total
    else:
        parent_imp = float(impurity(criterion, wv_total / w_total))

    left_sizes = np.arange(1, m)
    for f in features:
        seg = order[f, start:end]
        v = X[seg, f]
        ok = v[:-1] != v[1:]
        if min_samples_leaf > 1:
            ok &= (left_sizes >= min_samples_leaf) & (m - left_sizes >= min_samples_leaf)
        if not ok.any():
            continue
        wl = np.cumsum(w[seg])[:-1][ok]
        wvl = np.cumsum(wv[seg])[:-1][ok]
        wr = w_total - wl
        wvr = wv_total - wvl
        if criterion == MSE:
            gains = (wvl * wvl / wl + wvr * wvr / wr) - base
        else:
            il = impurity(criterion, wvl / wl)
            ir = impurity(criterion, wvr / wr)
            gains = parent_imp - (wl * il + wr * ir) / w_total
        gains = np.where(np.isnan(gains), -np.inf, gains)
        j = int(np.argmax(gains))
        gain = float(gains[j])
        if gain > best_gain:
            pos = int(np.flatnonzero(ok)[j])
            vi = float(v[pos])
            vj = float(v[pos + 1])
            thr = 0.5 * (vi + vj)
            if thr == vj:
                thr = vi
            best_feature = int(f)
            best_thr = thr
            best_gain = gain
    return best_feature, best_thr, best_gain


def partition(X, order, start, end, feature, threshold, mask, tmp):
    """Stable-partition every feature's segment by X[row, feature] <= threshold.

    Rows keep their per-feature sorted order on both sides. Returns the left
    child size. The mask/tmp scratch buffers are only used by the compiled
    backend; they are accepted here for signature parity.
    """
    n_left = 0
    for f in range(order.shape[0]):
        seg = order[f, start:end]
        go_left = X[seg, feature] <= threshold
        order[f, start:end] = np.concatenate([seg[go_left], seg[~go_left]])
        n_left = int(go_left.sum())
    return n_left
