import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twlab import kernels
from twlab.finring import ring

# the uncompiled loop versions double as a plain-Python reference
REFERENCE = {name: getattr(kernels, f"_{name}_loops") for name in kernels._NAMES}
IMPLS = sorted(kernels.IMPLEMENTATIONS)


def tables(n, count):
    """``count`` random n x n tables with entries in range(n)."""
    return st.lists(
        st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n), min_size=count, max_size=count
    ).map(lambda ts: [np.array(t, dtype=np.int64).reshape(n, n) for t in ts])


def _agree(name, *args):
    expect = REFERENCE[name](*args)
    for impl in IMPLS:
        got = kernels.IMPLEMENTATIONS[impl][name](*args)
        np.testing.assert_array_equal(np.asarray(got), np.asarray(expect), err_msg=f"{impl}:{name}")


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), tables(n, 3))))
def test_monoid_kernels_agree(data):
    n, (op, comp, other) = data
    _agree("assoc_violations", op)
    _agree("left_compat", comp, op)
    neg = other[0]
    _agree("ring_axioms", op, comp, neg, 0, min(1, n - 1))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), tables(n, 4), st.data())))
def test_right_coterm_agrees(data):
    n, (comp, bc_op, add, mul), draw = data
    counts = draw.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    total = int(ptr[-1])
    lterm = np.array(draw.draw(st.lists(st.integers(0, n - 1), min_size=total, max_size=total)), dtype=np.int64)
    rterm = np.array(draw.draw(st.lists(st.integers(0, n - 1), min_size=total, max_size=total)), dtype=np.int64)
    _agree("right_coterm", comp, bc_op, add, mul, 0, ptr, lterm, rterm)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), tables(n, 2), st.data())))
def test_polynomial_kernels_agree(data):
    n, (add, mul), draw = data
    rows, q = draw.draw(st.integers(1, 6)), draw.draw(st.integers(1, 4))
    coeffs = np.array(draw.draw(st.lists(st.integers(0, n - 1), min_size=rows * q, max_size=rows * q)),
                      dtype=np.int64).reshape(rows, q)
    _agree("eval_points", coeffs, add, mul, 0, min(1, n - 1))
    index = np.array(draw.draw(st.lists(st.integers(0, 2 * q - 1), min_size=q * q, max_size=q * q)),
                     dtype=np.int64).reshape(q, q)
    _agree("table_conv", coeffs, coeffs[::-1].copy(), index, 2 * q, add, mul, 0)


def test_compose_table_agrees_on_a_real_quotient():
    from twlab.biring import QuotientAlgebra

    Q = QuotientAlgebra(ring("GF(3,1)"), 3)
    coeffs = np.asarray(Q.coeffs, dtype=np.int64)
    # base-|R| digits: the constant c has index c
    scalar = np.array([Q.scalar(c) for c in range(3)], dtype=np.int64)
    assert scalar.tolist() == [0, 1, 2]
    _agree("compose_table", coeffs, scalar, Q.add_table, Q.mul_table, 0, Q.one)
    np.testing.assert_array_equal(
        kernels.compose_table(coeffs, scalar, Q.add_table, Q.mul_table, 0, Q.one), Q.compose_table
    )


def test_ring_axioms_on_known_rings():
    R = ring("Z/6")
    assert kernels.ring_axioms(R.add_table, R.mul_table, R.neg_table, R.zero, R.one) == dict.fromkeys(
        kernels.RING_AXIOMS, 0
    )
    sub = np.array([[(a - b) % 3 for b in range(3)] for a in range(3)])
    count, *first = kernels.assoc_violations(sub)
    a, b, c = first
    assert count > 0 and sub[sub[a, b], c] != sub[a, sub[b, c]]


@pytest.mark.parametrize("flag,expect", [("1", "numpy"), ("", None)])
def test_env_flag_selects_implementation(flag, expect):
    env = dict(os.environ, TWLAB_DISABLE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "import json, twlab.kernels as k; print(json.dumps([k.ACTIVE, k.USE_NUMBA]))"],
        env=env, capture_output=True, text=True, check=True,
    )
    active, use_numba = json.loads(out.stdout)
    if expect == "numpy":
        assert active == "numpy" and not use_numba
    else:
        assert active == ("numba" if "numba" in kernels.IMPLEMENTATIONS else "numpy")
