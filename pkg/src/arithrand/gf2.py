"""Polynomials over GF(2) encoded as integer bitmasks.

Bit ``j`` of the mask holds the coefficient of ``X**j``, so index ``k`` encodes
the polynomial ``F_k(X) = sum_j k_j X**(j-1)`` with ``k = sum_j k_j 2**(j-1)``.
The zero mask is the zero polynomial.
"""

from __future__ import annotations

import numpy as np


def degree(a: int) -> int:
    """Degree of ``a``; raises for the zero polynomial, which has none."""
    if a <= 0:
        raise ValueError("the zero polynomial has no degree")
    return a.bit_length() - 1


def mul(a: int, b: int) -> int:
    """Carry-less product of two polynomials."""
    if a < b:
        a, b = b, a
    out = 0
    shift = 0
    while b:
        if b & 1:
            out ^= a << shift
        b >>= 1
        shift += 1
    return out


def power(a: int, e: int) -> int:
    out = 1
    while e:
        if e & 1:
            out = mul(out, a)
        a = mul(a, a)
        e >>= 1
    return out


def divmod_(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of ``a`` by ``b``."""
    db = degree(b)
    q = 0
    while a and a.bit_length() - 1 >= db:
        s = a.bit_length() - 1 - db
        q |= 1 << s
        a ^= b << s
    return q, a


def to_string(a: int) -> str:
    """Human-readable form, e.g. ``X^2 + X + 1``."""
    if a == 0:
        return "0"
    terms = []
    for j in range(a.bit_length() - 1, -1, -1):
        if (a >> j) & 1:
            terms.append("1" if j == 0 else "X" if j == 1 else f"X^{j}")
    return " + ".join(terms)


def mul_array(q: np.ndarray, a: int) -> np.ndarray:
    """Carry-less product of every entry of ``q`` with the fixed polynomial ``a``."""
    out = np.zeros_like(q)
    shift = 0
    while a:
        if a & 1:
            out ^= q << shift
        a >>= 1
        shift += 1
    return out


def outer_mul(a: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Carry-less products ``a[i] * q[j]`` as a flat array."""
    out = np.zeros((a.size, q.size), dtype=q.dtype)
    width = int(q.max()).bit_length() if q.size else 0
    for j in range(width):
        bit = ((q >> j) & 1).astype(bool)
        out[:, bit] ^= (a << j)[:, None]
    return out.ravel()
