"""JIT-compiled kernels. Hot loops over all 2^n entries live here.

Reductions are blocked: each block of 2048 entries is folded with an
in-place pairwise tree by a single thread, then the per-block partials
are folded pairwise again.  Because the block size is a power of two
this reproduces exactly the neighbor-pair tree over the whole array,
so results are bit-stable across repeated calls and match the numpy
fallback path.

The workqueue threading layer aborts the process on concurrent entry
from multiple Python threads, so every public kernel is serialized
behind a module lock; concurrent handles stay correct, their kernel
launches just queue.
"""

import functools
import math
import threading

import numpy as np
from numba import config, njit, prange

# portable threading layer; avoids hard TBB/OMP version requirements
config.THREADING_LAYER = "workqueue"

BLOCK = 2048

_launch_lock = threading.Lock()


def _serialized(fn):
    @functools.wraps(fn)
    def locked(*args):
        with _launch_lock:
            return fn(*args)

    return locked


@njit(cache=True, parallel=True)
def fill_plus(amps):
    v = 1.0 / math.sqrt(amps.shape[0])
    for i in prange(amps.shape[0]):
        amps[i] = complex(v, 0.0)


@njit(cache=True, parallel=True)
def phase_by_table(amps, table, gamma):
    for i in prange(amps.shape[0]):
        ang = -gamma * table[i]
        amps[i] = amps[i] * complex(math.cos(ang), math.sin(ang))


@njit(cache=True, parallel=True)
def diag_scale(amps, table):
    for i in prange(amps.shape[0]):
        amps[i] = amps[i] * table[i]


@njit(cache=True, parallel=True)
def rx_qubit(amps, j, c, s):
    half = amps.shape[0] >> 1
    low_mask = (1 << j) - 1
    bit = 1 << j
    ms = complex(0.0, -s)
    for k in prange(half):
        i0 = ((k & ~low_mask) << 1) | (k & low_mask)
        i1 = i0 | bit
        t = amps[i0]
        u = amps[i1]
        amps[i0] = c * t + ms * u
        amps[i1] = ms * t + c * u


@njit(cache=True, parallel=True)
def weighted_probs(amps, table, out):
    for i in prange(amps.shape[0]):
        a = amps[i]
        out[i] = table[i] * (a.real * a.real + a.imag * a.imag)


@njit(cache=True, parallel=True)
def probs(amps, out):
    for i in prange(amps.shape[0]):
        a = amps[i]
        out[i] = a.real * a.real + a.imag * a.imag


@njit(cache=True)
def _block_tree(buf):
    # in-place neighbor-pair fold of a full power-of-two block
    w = buf.shape[0] >> 1
    while w >= 1:
        for i in range(w):
            buf[i] = buf[2 * i] + buf[2 * i + 1]
        w >>= 1
    return buf[0]


@njit(cache=True)
def _fold_partials(cur):
    m = cur.shape[0]
    while m > 1:
        half = (m + 1) >> 1
        nxt = np.empty(half, np.float64)
        for i in range(half):
            right = cur[2 * i + 1] if 2 * i + 1 < m else 0.0
            nxt[i] = cur[2 * i] + right
        cur = nxt
        m = half
    return cur[0]


@njit(cache=True, parallel=True)
def tree_sum(vals):
    n = vals.shape[0]
    nb = (n + BLOCK - 1) // BLOCK
    partials = np.empty(nb, np.float64)
    for b in prange(nb):
        buf = np.zeros(BLOCK, np.float64)
        start = b * BLOCK
        stop = min(start + BLOCK, n)
        for i in range(start, stop):
            buf[i - start] = vals[i]
        partials[b] = _block_tree(buf)
    return _fold_partials(partials)


@njit(cache=True)
def reduce_min(vals):
    m = vals[0]
    for i in range(1, vals.shape[0]):
        if vals[i] < m:
            m = vals[i]
    return m


@njit(cache=True)
def reduce_max(vals):
    m = vals[0]
    for i in range(1, vals.shape[0]):
        if vals[i] > m:
            m = vals[i]
    return m


@njit(cache=True, parallel=True)
def _inner_parts(a, b, pre, pim):
    n = a.shape[0]
    nb = pre.shape[0]
    for blk in prange(nb):
        bre = np.zeros(BLOCK, np.float64)
        bim = np.zeros(BLOCK, np.float64)
        start = blk * BLOCK
        stop = min(start + BLOCK, n)
        for i in range(start, stop):
            x = a[i]
            y = b[i]
            bre[i - start] = x.real * y.real + x.imag * y.imag
            bim[i - start] = x.real * y.imag - x.imag * y.real
        pre[blk] = _block_tree(bre)
        pim[blk] = _block_tree(bim)


def inner(a, b):
    nb = (a.shape[0] + BLOCK - 1) // BLOCK
    pre = np.empty(nb, np.float64)
    pim = np.empty(nb, np.float64)
    _inner_parts(a, b, pre, pim)
    return complex(_fold_partials(pre), _fold_partials(pim))


@njit(cache=True, parallel=True)
def _diag_inner_parts(a, table, b, pre, pim):
    n = a.shape[0]
    nb = pre.shape[0]
    for blk in prange(nb):
        bre = np.zeros(BLOCK, np.float64)
        bim = np.zeros(BLOCK, np.float64)
        start = blk * BLOCK
        stop = min(start + BLOCK, n)
        for i in range(start, stop):
            x = a[i]
            y = b[i]
            t = table[i]
            bre[i - start] = (x.real * y.real + x.imag * y.imag) * t
            bim[i - start] = (x.real * y.imag - x.imag * y.real) * t
        pre[blk] = _block_tree(bre)
        pim[blk] = _block_tree(bim)


def diag_inner(a, table, b):
    nb = (a.shape[0] + BLOCK - 1) // BLOCK
    pre = np.empty(nb, np.float64)
    pim = np.empty(nb, np.float64)
    _diag_inner_parts(a, table, b, pre, pim)
    return complex(_fold_partials(pre), _fold_partials(pim))


@njit(cache=True, parallel=True)
def _xsum_one_parts(a, b, bit, pre, pim):
    n = a.shape[0]
    nb = pre.shape[0]
    for blk in prange(nb):
        bre = np.zeros(BLOCK, np.float64)
        bim = np.zeros(BLOCK, np.float64)
        start = blk * BLOCK
        stop = min(start + BLOCK, n)
        for i in range(start, stop):
            x = a[i]
            y = b[i ^ bit]
            bre[i - start] = x.real * y.real + x.imag * y.imag
            bim[i - start] = x.real * y.imag - x.imag * y.real
        pre[blk] = _block_tree(bre)
        pim[blk] = _block_tree(bim)


def xsum(a, b, n_qubits):
    nb = (a.shape[0] + BLOCK - 1) // BLOCK
    total = 0.0 + 0.0j
    for j in range(n_qubits):
        pre = np.empty(nb, np.float64)
        pim = np.empty(nb, np.float64)
        _xsum_one_parts(a, b, 1 << j, pre, pim)
        total += complex(_fold_partials(pre), _fold_partials(pim))
    return total


@njit(cache=True, parallel=True)
def precompute_table(weights, masks, out):
    num_terms = weights.shape[0]
    for x in prange(out.shape[0]):
        acc = 0.0
        for k in range(num_terms):
            m = masks[k]
            if x & m == m:
                acc += weights[k]
        out[x] = acc


@njit(cache=True, parallel=True)
def pairwise_level(src, dst):
    for i in prange(dst.shape[0]):
        dst[i] = src[2 * i] + src[2 * i + 1]


fill_plus = _serialized(fill_plus)
phase_by_table = _serialized(phase_by_table)
diag_scale = _serialized(diag_scale)
rx_qubit = _serialized(rx_qubit)
weighted_probs = _serialized(weighted_probs)
probs = _serialized(probs)
tree_sum = _serialized(tree_sum)
reduce_min = _serialized(reduce_min)
reduce_max = _serialized(reduce_max)
inner = _serialized(inner)
diag_inner = _serialized(diag_inner)
xsum = _serialized(xsum)
precompute_table = _serialized(precompute_table)
pairwise_level = _serialized(pairwise_level)
