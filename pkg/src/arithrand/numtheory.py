"""Sieves, the Legendre symbol and the two Liouville functions.

Three binary arithmetic functions ``f: N -> {-1, +1}`` are provided:

* ``legendre(p)``: the Legendre symbol modulo an odd prime ``p`` with the
  value ``+1`` at multiples of ``p``;
* ``LIOUVILLE``: the Liouville function of the integers;
* ``F2_LIOUVILLE``: the Liouville function of GF(2)[X], where ``n`` stands for
  the polynomial whose coefficient vector is the binary expansion of ``n``.

Sequences use ``s_n = 0`` where ``f(n) = +1`` and ``s_n = 1`` where
``f(n) = -1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import gf2
from .exceptions import CapacityError
from .sequence import BitSequence

# Largest polynomial degree the GF(2) sieve will build (2**25 one-byte entries).
F2_MAX_DEGREE = 24
LIOUVILLE_MAX = 10**8


def sieve_primes(limit: int) -> np.ndarray:
    """Primes ``<= limit`` in ascending order (sieve of Eratosthenes)."""
    if limit < 2:
        raise ValueError(f"no primes below {limit}: limit must be at least 2")
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    return np.flatnonzero(is_p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def _check_modulus(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")


def legendre_symbol(n: int, p: int) -> int:
    """Legendre symbol ``(n / p)`` by Euler's criterion."""
    _check_modulus(p)
    n %= p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


def least_qnr(p: int) -> int:
    """Least quadratic non-residue ``N(p)`` modulo the odd prime ``p``."""
    _check_modulus(p)
    return _least_qnr_unchecked(p)


def _least_qnr_unchecked(p: int) -> int:
    n = 2
    while pow(n, (p - 1) // 2, p) == 1:
        n += 1
    return n


def nonresidue_table(p: int) -> np.ndarray:
    """Bitmap over residues ``0 .. p-1``: 1 exactly at quadratic non-residues."""
    _check_modulus(p)
    table = np.ones(p, dtype=np.uint8)
    x = np.arange(1, (p + 1) // 2, dtype=np.int64)
    table[(x * x) % p] = 0
    table[0] = 0
    return table


# -- integer Liouville ----------------------------------------------------

_liouville_cache: np.ndarray | None = None


def smallest_prime_factor(limit: int) -> np.ndarray:
    """``spf[n]`` for ``0 <= n <= limit`` (``spf[0] = spf[1] = 0``)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 2:
        spf[2::2] = 2
    for p in range(3, isqrt(limit) + 1, 2):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def liouville_sieve(limit: int) -> np.ndarray:
    """``lambda(n)`` for ``n = 1 .. limit`` as int8; entry ``i`` holds ``lambda(i + 1)``."""
    global _liouville_cache
    if limit <= 0:
        return np.zeros(0, dtype=np.int8)
    if limit > LIOUVILLE_MAX:
        raise CapacityError(f"Liouville sieve limit {limit} exceeds {LIOUVILLE_MAX}")
    if _liouville_cache is None or _liouville_cache.size < limit:
        size = max(limit, 1 << 16)
        spf = smallest_prime_factor(size)
        rest = np.arange(1, size + 1, dtype=np.int64)
        parity = np.zeros(size, dtype=np.uint8)
        active = np.flatnonzero(rest > 1)
        while active.size:
            parity[active] ^= 1
            rest[active] //= spf[rest[active]]
            active = active[rest[active] > 1]
        table = (1 - 2 * parity.astype(np.int8)).astype(np.int8)
        table.setflags(write=False)
        _liouville_cache = table
    return _liouville_cache[:limit]


def liouville(n: int) -> int:
    """``lambda(n)`` by trial division; independent of the sieve."""
    if n < 1:
        raise ValueError("Liouville function is defined for n >= 1")
    count = 0
    d = 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            count += 1
        d += 1
    if n > 1:
        count += 1
    return -1 if count % 2 else 1


# -- Liouville over GF(2)[X] ----------------------------------------------

_f2_cache: np.ndarray | None = None


def _f2_parity_table(max_degree: int) -> np.ndarray:
    """Parity of the irreducible factor count for every index below ``2**(D+1)``.

    Irreducibles are found by marking all products ``P * Q`` with ``deg P``
    at most ``D / 2``.  Then every irreducible power ``P**e`` flips the parity
    of each of its multiples, which counts factors with multiplicity.
    """
    size = 1 << (max_degree + 1)
    dtype = np.uint32
    composite = np.zeros(size, dtype=bool)
    for d in range(1, max_degree // 2 + 1):
        block = np.arange(1 << d, 1 << (d + 1), dtype=dtype)
        for P in block[~composite[block]]:
            q = np.arange(2, 1 << (max_degree - d + 1), dtype=dtype)
            composite[gf2.mul_array(q, int(P))] = True

    parity = np.zeros(size, dtype=np.uint8)
    for d in range(1, max_degree + 1):
        block = np.arange(1 << d, 1 << (d + 1), dtype=dtype)
        irreducible = block[~composite[block]]
        e = 1
        while e * d <= max_degree:
            q = np.arange(1, 1 << (max_degree - e * d + 1), dtype=dtype)
            powers = np.array([gf2.power(int(P), e) for P in irreducible], dtype=dtype)
            if 2 * e * d > max_degree:
                # cofactors are too small to contain a second such power: no collisions
                parity[gf2.outer_mul(powers, q)] ^= 1
            else:
                for Pe in powers:
                    parity[gf2.mul_array(q, int(Pe))] ^= 1
            e += 1
    return parity


def f2_liouville_sieve(max_index: int) -> np.ndarray:
    """``lambda(F_k)`` for ``k = 1 .. max_index``; entry ``i`` holds ``lambda(F_{i+1})``."""
    global _f2_cache
    if max_index <= 0:
        return np.zeros(0, dtype=np.int8)
    max_degree = max_index.bit_length() - 1
    if max_degree > F2_MAX_DEGREE:
        raise CapacityError(
            f"index {max_index} needs degree {max_degree} > sieve capacity {F2_MAX_DEGREE}"
        )
    if _f2_cache is None or _f2_cache.size < max_index:
        parity = _f2_parity_table(max(max_degree, 12))
        table = (1 - 2 * parity[1:].astype(np.int8)).astype(np.int8)
        table.setflags(write=False)
        _f2_cache = table
    return _f2_cache[:max_index]


def f2_factor(a: int) -> list[int]:
    """Irreducible factors of ``a`` with multiplicity, by trial division."""
    if a <= 0:
        raise ValueError("cannot factor the zero polynomial")
    factors = []
    d = 2
    while a > 1 and gf2.degree(d) * 2 <= gf2.degree(a):
        q, r = gf2.divmod_(a, d)
        if r == 0:
            factors.append(d)
            a = q
        else:
            d += 1
    if a > 1:
        factors.append(a)
    return factors


def f2_liouville(a: int) -> int:
    """``lambda(F)`` for a single polynomial; independent of the sieve."""
    return -1 if len(f2_factor(a)) % 2 else 1


def carlitz_sum(d: int) -> int:
    """Sum of ``lambda(F)`` over the ``2**d`` polynomials of degree exactly ``d``."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    if d > F2_MAX_DEGREE:
        raise CapacityError(f"degree {d} exceeds sieve capacity {F2_MAX_DEGREE}")
    table = f2_liouville_sieve((1 << (d + 1)) - 1)
    return int(table[(1 << d) - 1 :].sum(dtype=np.int64))


# -- arithmetic functions and their sequences ------------------------------


@dataclass(frozen=True)
class ArithFn:
    """One of the three binary arithmetic functions.

    ``kind`` is ``"legendre"`` (then ``p`` is the odd prime modulus),
    ``"liouville"`` or ``"f2-liouville"``.
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "legendre":
            if self.p is None:
                raise ValueError("Legendre kind requires a modulus p")
            _check_modulus(self.p)
        elif self.kind in ("liouville", "f2-liouville"):
            if self.p is not None:
                raise ValueError(f"{self.kind} takes no modulus")
        else:
            raise ValueError(f"unknown arithmetic function kind {self.kind!r}")

    def __str__(self) -> str:
        return f"legendre-{self.p}" if self.kind == "legendre" else self.kind

    def values(self, length: int) -> np.ndarray:
        """``f(1) .. f(length)`` as int8 values in {-1, +1}."""
        return (1 - 2 * self.bits(length).astype(np.int8)).astype(np.int8)

    def bits(self, length: int) -> np.ndarray:
        """``s_1 .. s_length`` as a uint8 array."""
        if length <= 0:
            return np.zeros(0, dtype=np.uint8)
        if self.kind == "legendre":
            table = nonresidue_table(self.p)
            return table[np.arange(1, length + 1, dtype=np.int64) % self.p]
        if self.kind == "liouville":
            return (liouville_sieve(length) < 0).astype(np.uint8)
        return (f2_liouville_sieve(length) < 0).astype(np.uint8)


def legendre(p: int) -> ArithFn:
    return ArithFn("legendre", p)


LIOUVILLE = ArithFn("liouville")
F2_LIOUVILLE = ArithFn("f2-liouville")


def parse_kind(name: str, p: int | None = None) -> ArithFn:
    """Build an :class:`ArithFn` from a CLI-style name."""
    aliases = {
        "legendre": "legendre",
        "liouville": "liouville",
        "liouville-int": "liouville",
        "f2-liouville": "f2-liouville",
        "liouville-f2": "f2-liouville",
    }
    if name not in aliases:
        raise ValueError(f"unknown kind {name!r}; choose from {sorted(aliases)}")
    return ArithFn(aliases[name], p)


def generate_sequence(kind: ArithFn, length: int) -> BitSequence:
    """The first ``length`` terms of the sequence attached to ``kind``."""
    if length < 1:
        raise ValueError("sequence length must be at least 1")
    return BitSequence(kind.bits(length), str(kind))


def patched_legendre_sequence(p: int, length: int) -> BitSequence:
    """Legendre sequence with ``s_{2kp} = 1 - s_{kp}`` forced at multiples of ``2p``.

    For ``p = 3, 5 mod 8`` the result satisfies ``s_{2n} = 1 - s_n`` for every
    ``n`` and agrees with the Legendre sequence on its first ``2p - 1`` terms.
    """
    _check_modulus(p)
    if p % 8 not in (3, 5):
        raise ValueError(f"patched sequence needs p = 3 or 5 mod 8, got p = {p} ({p % 8} mod 8)")
    bits = legendre(p).bits(length).copy()
    for n in range(2 * p, length + 1, 2 * p):
        bits[n - 1] = 1 - bits[n // 2 - 1]
    return BitSequence(bits, f"patched-legendre-{p}")
