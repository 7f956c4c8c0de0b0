"""Table-driven inner loops.

Finite rings are handled as square ``add``/``mul`` tables over carrier
indices, so the exhaustive checks reduce to integer gathers.  Each kernel
exists twice: a loop version compiled with ``numba.njit`` and a vectorised
numpy version.  ``USE_NUMBA`` selects the loop versions; export
``TWLAB_DISABLE_NUMBA=1`` (or run without numba installed) to get the numpy
path.  Both are exposed through ``IMPLEMENTATIONS`` so tests and the
benchmark can compare them directly.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

_DISABLED = os.environ.get("TWLAB_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
USE_NUMBA = numba is not None and not _DISABLED

INDEX = np.int64


def _njit(fn):
    if numba is None:
        return None
    return numba.njit(cache=True)(fn)


def as_index_array(a):
    return np.ascontiguousarray(a, dtype=INDEX)


# ---------------------------------------------------------------------------
# convolution through an index table
#
#   out[k, index[i, j]] = sum_{i, j} mul[left[k, i], right[k, j]]
#
# covers the sequence-ring sum/product (index = add/mul table of the index
# ring) and multiplication in R[x]/(x^q - x) (index = reduced exponent sum).


def _table_conv_loops(left, right, index, width, add, mul, zero):
    n = left.shape[0]
    m1 = left.shape[1]
    m2 = right.shape[1]
    out = np.full((n, width), zero, dtype=np.int64)
    for k in range(n):
        for i in range(m1):
            a = left[k, i]
            for j in range(m2):
                s = index[i, j]
                out[k, s] = add[out[k, s], mul[a, right[k, j]]]
    return out


def _table_conv_numpy(left, right, index, width, add, mul, zero):
    n = left.shape[0]
    out = np.full((n, width), zero, dtype=INDEX)
    prod = mul[left[:, :, None], right[:, None, :]]
    for i in range(left.shape[1]):
        for j in range(right.shape[1]):
            s = index[i, j]
            out[:, s] = add[out[:, s], prod[:, i, j]]
    return out


# ---------------------------------------------------------------------------
# value table of dense univariate polynomials: out[a, r] = sum_i c[a, i] r^i


def _eval_points_loops(coeffs, add, mul, zero, one):
    n, q = coeffs.shape
    size = add.shape[0]
    powers = np.empty((size, q), dtype=np.int64)
    for r in range(size):
        p = one
        for i in range(q):
            powers[r, i] = p
            p = mul[p, r]
    out = np.full((n, size), zero, dtype=np.int64)
    for a in range(n):
        for r in range(size):
            acc = zero
            for i in range(q):
                acc = add[acc, mul[coeffs[a, i], powers[r, i]]]
            out[a, r] = acc
    return out


def _eval_points_numpy(coeffs, add, mul, zero, one):
    n, q = coeffs.shape
    size = add.shape[0]
    powers = np.empty((size, q), dtype=INDEX)
    p = np.full(size, one, dtype=INDEX)
    r = np.arange(size, dtype=INDEX)
    for i in range(q):
        powers[:, i] = p
        p = mul[p, r]
    out = np.full((n, size), zero, dtype=INDEX)
    for i in range(q):
        out = add[out, mul[coeffs[:, i][:, None], powers[:, i][None, :]]]
    return out


# ---------------------------------------------------------------------------
# composition table by Horner-free power sums:
#   comp[a, b] = sum_i scalar[c[a, i]] * b^i   inside a tabulated algebra


def _compose_table_loops(coeffs, scalar, qadd, qmul, qzero, qone):
    n, q = coeffs.shape
    comp = np.empty((n, n), dtype=np.int64)
    powers = np.empty(q, dtype=np.int64)
    for b in range(n):
        p = qone
        for i in range(q):
            powers[i] = p
            p = qmul[p, b]
        for a in range(n):
            acc = qzero
            for i in range(q):
                acc = qadd[acc, qmul[scalar[coeffs[a, i]], powers[i]]]
            comp[a, b] = acc
    return comp


def _compose_table_numpy(coeffs, scalar, qadd, qmul, qzero, qone):
    n, q = coeffs.shape
    b = np.arange(n, dtype=INDEX)
    powers = np.empty((n, q), dtype=INDEX)
    p = np.full(n, qone, dtype=INDEX)
    for i in range(q):
        powers[:, i] = p
        p = qmul[p, b]
    comp = np.full((n, n), qzero, dtype=INDEX)
    lifted = scalar[coeffs]
    for i in range(q):
        comp = qadd[comp, qmul[lifted[:, i][:, None], powers[:, i][None, :]]]
    return comp


# ---------------------------------------------------------------------------
# commutative-unital-ring axioms over tables; returns violation counts in
# the order of RING_AXIOMS


RING_AXIOMS = (
    "add_assoc",
    "add_comm",
    "add_identity",
    "add_inverse",
    "mul_assoc",
    "mul_comm",
    "mul_identity",
    "distributive",
)


def _ring_axioms_loops(add, mul, neg, zero, one):
    n = add.shape[0]
    bad = np.zeros(8, dtype=np.int64)
    for a in range(n):
        if add[a, zero] != a:
            bad[2] += 1
        if add[a, neg[a]] != zero:
            bad[3] += 1
        if mul[a, one] != a:
            bad[6] += 1
        for b in range(n):
            if add[a, b] != add[b, a]:
                bad[1] += 1
            if mul[a, b] != mul[b, a]:
                bad[5] += 1
            for c in range(n):
                if add[add[a, b], c] != add[a, add[b, c]]:
                    bad[0] += 1
                if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                    bad[4] += 1
                if mul[a, add[b, c]] != add[mul[a, b], mul[a, c]]:
                    bad[7] += 1
    return bad


def _ring_axioms_numpy(add, mul, neg, zero, one):
    n = add.shape[0]
    r = np.arange(n, dtype=INDEX)
    bad = np.zeros(8, dtype=INDEX)
    bad[2] = np.count_nonzero(add[r, zero] != r)
    bad[3] = np.count_nonzero(add[r, neg] != zero)
    bad[6] = np.count_nonzero(mul[r, one] != r)
    bad[1] = np.count_nonzero(add != add.T)
    bad[5] = np.count_nonzero(mul != mul.T)
    for a in range(n):
        bad[0] += np.count_nonzero(add[add[a][:, None], r[None, :]] != add[a][add])
        bad[4] += np.count_nonzero(mul[mul[a][:, None], r[None, :]] != mul[a][mul])
        bad[7] += np.count_nonzero(mul[a][add] != add[mul[a][:, None], mul[a][None, :]])
    return bad


# ---------------------------------------------------------------------------
# monoid-law checks for a composition table.  Each returns
# (violations, a, b, c) with the first violating triple, or -1s.


def _assoc_violations_loops(op):
    n = op.shape[0]
    count = 0
    fa = -1
    fb = -1
    fc = -1
    for a in range(n):
        for b in range(n):
            ab = op[a, b]
            for c in range(n):
                if op[ab, c] != op[a, op[b, c]]:
                    if count == 0:
                        fa = a
                        fb = b
                        fc = c
                    count += 1
    return np.array([count, fa, fb, fc], dtype=np.int64)


def _first_violation(masks):
    # masks: list over a of boolean (n, n) arrays
    count = 0
    first = (-1, -1, -1)
    for a, mask in enumerate(masks):
        k = int(np.count_nonzero(mask))
        if k and count == 0:
            b, c = np.argwhere(mask)[0]
            first = (a, int(b), int(c))
        count += k
    return np.array([count, *first], dtype=INDEX)


def _assoc_violations_numpy(op):
    n = op.shape[0]
    r = np.arange(n, dtype=INDEX)
    return _first_violation(
        op[op[a][:, None], r[None, :]] != op[a][op] for a in range(n)
    )


def _left_compat_loops(comp, op):
    # comp[op[a, b], c] == op[comp[a, c], comp[b, c]]
    n = comp.shape[0]
    count = 0
    fa = -1
    fb = -1
    fc = -1
    for a in range(n):
        for b in range(n):
            ab = op[a, b]
            for c in range(n):
                if comp[ab, c] != op[comp[a, c], comp[b, c]]:
                    if count == 0:
                        fa = a
                        fb = b
                        fc = c
                    count += 1
    return np.array([count, fa, fb, fc], dtype=np.int64)


def _left_compat_numpy(comp, op):
    n = comp.shape[0]
    return _first_violation(
        comp[op[a]] != op[comp[a][None, :], comp] for a in range(n)
    )


def _right_coterm_loops(comp, bc_op, add, mul, zero, ptr, lterm, rterm):
    # comp[a, bc_op[b, c]] == sum_k mul[comp[l_k, b], comp[r_k, c]]
    # over the tensor expansion a -> sum_k l_k (x) r_k stored CSR-style
    n = comp.shape[0]
    count = 0
    fa = -1
    fb = -1
    fc = -1
    for a in range(n):
        for b in range(n):
            for c in range(n):
                acc = zero
                for k in range(ptr[a], ptr[a + 1]):
                    acc = add[acc, mul[comp[lterm[k], b], comp[rterm[k], c]]]
                if comp[a, bc_op[b, c]] != acc:
                    if count == 0:
                        fa = a
                        fb = b
                        fc = c
                    count += 1
    return np.array([count, fa, fb, fc], dtype=np.int64)


def _right_coterm_numpy(comp, bc_op, add, mul, zero, ptr, lterm, rterm):
    n = comp.shape[0]

    def mask(a):
        acc = np.full((n, n), zero, dtype=INDEX)
        for k in range(ptr[a], ptr[a + 1]):
            acc = add[acc, mul[comp[lterm[k]][:, None], comp[rterm[k]][None, :]]]
        return comp[a][bc_op] != acc

    return _first_violation(mask(a) for a in range(n))


# ---------------------------------------------------------------------------

_NAMES = (
    "table_conv",
    "eval_points",
    "compose_table",
    "ring_axioms",
    "assoc_violations",
    "left_compat",
    "right_coterm",
)

IMPLEMENTATIONS = {
    "numpy": {name: globals()[f"_{name}_numpy"] for name in _NAMES},
}
if numba is not None:
    IMPLEMENTATIONS["numba"] = {name: _njit(globals()[f"_{name}_loops"]) for name in _NAMES}

ACTIVE = "numba" if USE_NUMBA else "numpy"
_impl = IMPLEMENTATIONS[ACTIVE]


def table_conv(left, right, index, width, add, mul, zero):
    """Convolve rows of ``left`` and ``right`` through ``index``.

    ``out[k, index[i, j]]`` accumulates ``mul[left[k, i], right[k, j]]``
    with ``add``; unreached slots stay ``zero``.
    """
    return _impl["table_conv"](
        as_index_array(left), as_index_array(right), as_index_array(index),
        int(width), add, mul, int(zero),
    )


def eval_points(coeffs, add, mul, zero, one):
    """Value table ``out[a, r]`` of dense polynomials ``coeffs[a]`` at every carrier index ``r``."""
    return _impl["eval_points"](as_index_array(coeffs), add, mul, int(zero), int(one))


def compose_table(coeffs, scalar, qadd, qmul, qzero, qone):
    """All compositions ``a(b)`` inside a tabulated polynomial quotient.

    ``coeffs[a]`` are the coefficient indices of element ``a``; ``scalar``
    maps a coefficient index to the algebra element of that constant.
    """
    return _impl["compose_table"](
        as_index_array(coeffs), as_index_array(scalar), qadd, qmul, int(qzero), int(qone)
    )


def ring_axioms(add, mul, neg, zero, one):
    return dict(zip(RING_AXIOMS, (int(v) for v in _impl["ring_axioms"](add, mul, neg, int(zero), int(one)))))


def assoc_violations(op):
    return tuple(int(v) for v in _impl["assoc_violations"](op))


def left_compat(comp, op):
    return tuple(int(v) for v in _impl["left_compat"](comp, op))


def right_coterm(comp, bc_op, add, mul, zero, ptr, lterm, rterm):
    return tuple(
        int(v)
        for v in _impl["right_coterm"](
            comp, bc_op, add, mul, int(zero),
            as_index_array(ptr), as_index_array(lterm), as_index_array(rterm),
        )
    )
