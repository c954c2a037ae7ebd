"""Row-vectorized polynomial arithmetic on numpy arrays of field codes.

Each row of an ``(N, k)`` int64 array is one polynomial (low degree first,
zero padded).  Moduli are monic and given either as one tuple shared by all
rows or as an ``(N, d+1)`` array with one modulus per row; all moduli in a
batch have the same degree ``d``.
"""

from __future__ import annotations

import numpy as np

from .galois_fields import FieldCtx


def as_rows(polys, width: int) -> np.ndarray:
    out = np.zeros((len(polys), max(width, 1)), dtype=np.int64)
    for r, f in enumerate(polys):
        out[r, :len(f)] = f
    return out


def _moduli(M) -> np.ndarray:
    if isinstance(M, np.ndarray):
        return M
    return np.asarray(M, dtype=np.int64).reshape(1, -1)


def reduce_rows(ctx: FieldCtx, A: np.ndarray, M) -> np.ndarray:
    M = _moduli(M)
    d = M.shape[1] - 1
    R = A.copy()
    MUL, SUB = ctx.MUL, ctx.SUB
    for k in range(R.shape[1] - 1, d - 1, -1):
        c = R[:, k]
        if not c.any():
            continue
        for j in range(d):
            R[:, k - d + j] = SUB[R[:, k - d + j], MUL[c, M[:, j]]]
    out = np.zeros((A.shape[0], d), dtype=np.int64)
    w = min(d, R.shape[1])
    out[:, :w] = R[:, :w]
    return out


def mulmod_rows(ctx: FieldCtx, A: np.ndarray, B: np.ndarray, M) -> np.ndarray:
    d = A.shape[1]
    MUL, ADD = ctx.MUL, ctx.ADD
    C = np.zeros((A.shape[0], 2 * d - 1), dtype=np.int64)
    for j in range(d):
        a = A[:, j]
        for k in range(d):
            C[:, j + k] = ADD[C[:, j + k], MUL[a, B[:, k]]]
    return reduce_rows(ctx, C, M)


def powmod_rows(ctx: FieldCtx, A: np.ndarray, e: int, M) -> np.ndarray:
    M = _moduli(M)
    d = M.shape[1] - 1
    base = reduce_rows(ctx, A, M)
    result = np.zeros_like(base)
    result[:, 0] = 1
    while e:
        if e & 1:
            result = mulmod_rows(ctx, result, base, M)
        e >>= 1
        if e:
            base = mulmod_rows(ctx, base, base, M)
    return result


def omega_log_table(ctx: FieldCtx) -> np.ndarray:
    table = np.full(ctx.Q, -2, dtype=np.int64)
    for z, k in ctx._omega_log.items():
        table[z] = k
    return table


def batch_symbols(ctx: FieldCtx, A: np.ndarray, M) -> np.ndarray:
    """Quartic symbol exponents of each row of ``A`` modulo the prime(s) ``M``.

    Returns int64 exponents in 0..3, with -1 where the row is divisible by its
    modulus.  Computed as ``a^((Q^d - 1)/4) mod pi`` exactly like the scalar
    definition.
    """
    M = _moduli(M)
    d = M.shape[1] - 1
    R = reduce_rows(ctx, A, M)
    zero = ~R.any(axis=1)
    Y = powmod_rows(ctx, R, (ctx.Q ** d - 1) // 4, M)
    out = omega_log_table(ctx)[Y[:, 0]]
    out[zero] = -1
    bad = (~zero) & ((out < 0) | (Y[:, 1:].any(axis=1) if d > 1 else False))
    if np.any(bad):
        raise ArithmeticError("power residue is not a quartic root of unity; modulus not prime?")
    return out
