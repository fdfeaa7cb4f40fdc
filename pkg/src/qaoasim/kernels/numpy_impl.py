"""Pure-numpy fallback kernels.

Mirrors numba_impl operation by operation; used when numba is
unavailable or when QAOA_KERNELS selects the reference path.  Pairwise
reductions walk the neighbor-pair tree level by level, which matches
the blocked association of the jitted path, so both paths agree to the
last bit on reductions over identical inputs.
"""

import threading

import numpy as np

_tls = threading.local()


def _pool() -> dict:
    pool = getattr(_tls, "pool", None)
    if pool is None:
        pool = _tls.pool = {}
    return pool


def _scratch(key: str, size: int, dtype) -> np.ndarray:
    # reused per thread; avoids mmap churn on >32 MB temporaries, which
    # dominates the per-layer cost beyond ~21 qubits
    pool = _pool()
    buf = pool.get(key)
    if buf is None or buf.shape[0] < size:
        buf = np.empty(size, dtype)
        pool[key] = buf
    return buf[:size]


def fill_plus(amps):
    amps[:] = complex(1.0 / np.sqrt(amps.shape[0]), 0.0)


def phase_by_table(amps, table, gamma):
    size = amps.shape[0]
    ang = _scratch("phase_ang", size, np.float64)
    ph = _scratch("phase_fac", size, np.complex128)
    np.multiply(table, -gamma, out=ang)
    np.cos(ang, out=ph.real)
    np.sin(ang, out=ph.imag)
    amps *= ph


def diag_scale(amps, table):
    amps *= table


def rx_qubit(amps, j, c, s):
    half = amps.shape[0] >> 1
    v = amps.reshape(-1, 2, 1 << j)
    v0 = v[:, 0, :]
    v1 = v[:, 1, :]
    shape = v0.shape
    t0 = _scratch("rx_t0", half, np.complex128).reshape(shape)
    t1 = _scratch("rx_t1", half, np.complex128).reshape(shape)
    ms = complex(0.0, -s)
    np.multiply(v1, ms, out=t0)
    np.multiply(v0, ms, out=t1)
    np.multiply(v0, c, out=v0)
    v0 += t0
    np.multiply(v1, c, out=v1)
    v1 += t1


def weighted_probs(amps, table, out):
    out[:] = table * (amps.real * amps.real + amps.imag * amps.imag)


def probs(amps, out):
    out[:] = amps.real * amps.real + amps.imag * amps.imag


def tree_sum(vals):
    v = vals
    while v.shape[0] > 1:
        if v.shape[0] & 1:
            v = np.append(v, 0.0)
        v = v[0::2] + v[1::2]
    return float(v[0])


def reduce_min(vals):
    return float(np.min(vals))


def reduce_max(vals):
    return float(np.max(vals))


# conj(a)*b spelled out in real arithmetic: numpy's fused complex-multiply
# kernels round differently from the unfused jit expression, and both
# paths must reduce identical products

def inner(a, b):
    re = a.real * b.real + a.imag * b.imag
    im = a.real * b.imag - a.imag * b.real
    return complex(tree_sum(re), tree_sum(im))


def diag_inner(a, table, b):
    re = (a.real * b.real + a.imag * b.imag) * table
    im = (a.real * b.imag - a.imag * b.real) * table
    return complex(tree_sum(re), tree_sum(im))


def xsum(a, b, n_qubits):
    total = 0.0 + 0.0j
    for j in range(n_qubits):
        flipped = b.reshape(-1, 2, 1 << j)[:, ::-1, :].reshape(-1)
        re = a.real * flipped.real + a.imag * flipped.imag
        im = a.real * flipped.imag - a.imag * flipped.real
        total += complex(tree_sum(re), tree_sum(im))
    return total


def precompute_table(weights, masks, out):
    size = out.shape[0]
    pool = _pool()
    xs = pool.get("pre_xs")
    if xs is None or xs.shape[0] != size:
        xs = pool["pre_xs"] = np.arange(size, dtype=np.int64)
    anded = _scratch("pre_and", size, np.int64)
    match = _scratch("pre_match", size, np.bool_)
    out[:] = 0.0
    for w, m in zip(weights, masks):
        np.bitwise_and(xs, m, out=anded)
        np.equal(anded, m, out=match)
        np.add(out, w, out=out, where=match)


def pairwise_level(src, dst):
    dst[:] = src[0::2] + src[1::2]
