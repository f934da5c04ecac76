"""Boolean functions attached to binary arithmetic functions.

A truth table in ``r`` variables is a 0/1 array of length ``2**r`` whose entry
at ``n = sum_j n_j 2**(j-1)`` holds ``B(n_1, ..., n_r)``.  The algebraic normal
form (ANF) uses the same layout: the entry at subset bitmask ``I`` holds the
coefficient ``a_I`` of the monomial ``prod_{j in I} X_j``.  Bit ``j - 1`` of an
index corresponds to variable ``X_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .exceptions import CapacityError, ConditionViolation, ConstructionOverflow
from .numtheory import ArithFn, least_qnr

MAX_VARIABLES = 24


def _check_table(values: np.ndarray) -> int:
    n = values.shape[-1]
    r = n.bit_length() - 1
    if n != 1 << r:
        raise ValueError(f"table length {n} is not a power of two")
    if r > MAX_VARIABLES:
        raise CapacityError(f"{r} variables exceeds capacity {MAX_VARIABLES}")
    return r


@lru_cache(maxsize=None)
def _popcounts(r: int) -> np.ndarray:
    idx = np.arange(1 << r, dtype=np.uint32)
    counts = np.zeros(1 << r, dtype=np.uint8)
    for j in range(r):
        counts += ((idx >> j) & 1).astype(np.uint8)
    counts.setflags(write=False)
    return counts


def mobius(values: np.ndarray) -> np.ndarray:
    """GF(2) Moebius transform along the last axis (an involution).

    Maps a truth table to its ANF coefficients and back.  Leading axes are
    treated as a batch.
    """
    a = np.array(values, dtype=np.uint8, copy=True)
    r = _check_table(a)
    lead = a.shape[:-1]
    for i in range(r):
        view = a.reshape(*lead, -1, 2, 1 << i)
        view[..., 1, :] ^= view[..., 0, :]
    return a


@dataclass(frozen=True, eq=False)
class TruthTable:
    r: int
    values: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.uint8)
        if values.shape != (1 << self.r,):
            raise ValueError(f"truth table in {self.r} variables needs {1 << self.r} entries")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.r == other.r and np.array_equal(self.values, other.values)

    def with_origin(self, c: int) -> "TruthTable":
        """Copy with ``B(0, ..., 0)`` replaced by ``c``."""
        values = self.values.copy()
        values[0] = c
        return TruthTable(self.r, values)


@dataclass(frozen=True, eq=False)
class Anf:
    r: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.ascontiguousarray(self.coeffs, dtype=np.uint8)
        if coeffs.shape != (1 << self.r,):
            raise ValueError(f"ANF in {self.r} variables needs {1 << self.r} coefficients")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def __eq__(self, other):
        if not isinstance(other, Anf):
            return NotImplemented
        return self.r == other.r and np.array_equal(self.coeffs, other.coeffs)

    @property
    def degree(self) -> int:
        return degree(self)

    @property
    def sparsity(self) -> int:
        return sparsity(self)

    def monomials(self) -> list[int]:
        """Subset bitmasks ``I`` with ``a_I = 1``, ascending."""
        return [int(i) for i in np.flatnonzero(self.coeffs)]

    def evaluate(self, point: int) -> int:
        """Value at the input whose bit ``j - 1`` is ``n_j``: XOR of ``a_I`` over ``I`` within the support."""
        out = 0
        for mask in self.monomials():
            if mask & point == mask:
                out ^= 1
        return out

    def truth_table(self) -> TruthTable:
        return TruthTable(self.r, mobius(self.coeffs))

    def dump(self, header: str = "") -> str:
        """Text form: an optional header line, then one ``<hex bitmask> 1`` line per monomial."""
        lines = [header] if header else []
        lines.extend(f"{mask:x} 1" for mask in self.monomials())
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> tuple["Anf", dict]:
        """Inverse of :meth:`dump` for dumps whose header carries ``r=``."""
        meta = {}
        masks = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if "=" in line:
                meta.update(field.split("=", 1) for field in line.split())
                continue
            mask, value = line.split()
            if value != "1":
                raise ValueError(f"bad ANF dump line {line!r}")
            masks.append(int(mask, 16))
        if "r" not in meta:
            raise ValueError("ANF dump header lacks r=")
        r = int(meta["r"])
        coeffs = np.zeros(1 << r, dtype=np.uint8)
        coeffs[masks] = 1
        return cls(r, coeffs), meta


def truth_table_from_arith(kind: ArithFn, r: int, c: int = 0) -> TruthTable:
    """Truth table of ``B`` with ``(-1)**B(n) = f(n)`` for ``1 <= n < 2**r`` and ``B(0) = c``."""
    if r < 1:
        raise ValueError("need at least one variable")
    if r > MAX_VARIABLES:
        raise CapacityError(f"{r} variables exceeds capacity {MAX_VARIABLES}")
    if c not in (0, 1):
        raise ValueError("c must be 0 or 1")
    if kind.kind == "legendre" and (1 << r) > kind.p:
        raise ValueError(
            f"2**{r} > p = {kind.p}: table would reach multiples of p"
        )
    values = np.empty(1 << r, dtype=np.uint8)
    values[0] = c
    values[1:] = kind.bits((1 << r) - 1)
    return TruthTable(r, values)


def legendre_variables(p: int) -> int:
    """The default number of variables ``floor(log2 p)`` for modulus ``p``."""
    return p.bit_length() - 1


def anf(table: TruthTable) -> Anf:
    return Anf(table.r, mobius(table.values))


def degree(a: Anf) -> int:
    """Algebraic degree; the zero function has degree 0."""
    idx = np.flatnonzero(a.coeffs)
    if idx.size == 0:
        return 0
    return int(_popcounts(a.r)[idx].max())


def sparsity(a: Anf) -> int:
    return int(np.count_nonzero(a.coeffs))


def min_even_extremal(r: int) -> Anf:
    """ANF with ``a_I = 1`` exactly for nonempty ``I`` whose least element is even.

    Its sparsity is ``floor(2**r / 3)``, the least possible under
    ``f(2n) = -f(n)``.
    """
    if r < 1:
        raise ValueError("need at least one variable")
    idx = np.arange(1 << r, dtype=np.int64)
    lowest = idx & -idx
    # variable j sits at bit j-1, so an even least index is an odd bit position
    least_bit = np.zeros(1 << r, dtype=np.int64)
    nz = idx > 0
    least_bit[nz] = np.log2(lowest[nz]).astype(np.int64)
    coeffs = (nz & (least_bit % 2 == 1)).astype(np.uint8)
    return Anf(r, coeffs)


def theorem1_derived_F(table: TruthTable) -> Anf:
    """ANF of ``F(x) = B(x, 0) + B(0, x)`` in ``r - 1`` variables.

    Under ``f(2n) = -f(n)`` for ``1 <= n < 2**(r-1)``, ``F`` is 1 everywhere
    except the origin.  Otherwise :class:`ConditionViolation` is raised with
    the first offending ``n`` as witness.
    """
    r = table.r
    if r < 2:
        raise ValueError("need at least two variables")
    half = 1 << (r - 1)
    low = table.values[:half]                   # B(n_1..n_{r-1}, 0): index n
    doubled = table.values[0 : 2 * half : 2]    # B(0, n_1..n_{r-1}): index 2n
    F = low ^ doubled
    bad = np.flatnonzero(F[1:] != 1)
    if bad.size:
        n = int(bad[0]) + 1
        raise ConditionViolation(
            f"f(2n) = -f(n) fails at n = {n}: B({n}) = B({2 * n}) = {int(low[n])}",
            witness=n,
        )
    return Anf(r - 1, mobius(F))


def theorem3_restriction(table: TruthTable, p: int) -> Anf:
    """Restriction of ``B`` along spread points and their ``N(p)``-multiples.

    With ``s = ceil(log2 N(p))`` and ``m = floor(r / s)``, the point
    ``(x_1, .., x_m)`` is sent to ``n = sum_i x_i 2**((i-1) s)``; the result is
    ``B(n) + B(N(p) n)``, returned as an ANF in ``m`` variables.
    """
    if p % 8 not in (1, 7):
        raise ValueError(f"restriction needs p = +-1 mod 8, got {p % 8} mod 8")
    q = least_qnr(p)
    s = (q - 1).bit_length()
    r = table.r
    m = r // s
    if m < 1:
        raise ConstructionOverflow(f"r = {r} < s = {s}: no variables remain")
    x = np.arange(1 << m, dtype=np.int64)
    spread = np.zeros_like(x)
    for i in range(m):
        spread |= ((x >> i) & 1) << (i * s)
    scaled = q * spread
    top = int(scaled.max())
    if top >= 1 << r:
        raise ConstructionOverflow(
            f"N(p) * {int(spread.max())} = {top} exceeds table size 2**{r}"
        )
    F = table.values[spread] ^ table.values[scaled]
    return Anf(m, mobius(F))


def exhaustive_expected_values(r: int) -> tuple[Fraction, Fraction]:
    """Mean sparsity and mean degree over all ``2**(2**r)`` functions, exactly."""
    if r < 1:
        raise ValueError("need at least one variable")
    if r > 4:
        raise CapacityError(f"exhaustive enumeration supports r <= 4, got {r}")
    size = 1 << r
    codes = np.arange(1 << size, dtype=np.uint32)
    tables = ((codes[:, None] >> np.arange(size, dtype=np.uint32)) & 1).astype(np.uint8)
    coeffs = mobius(tables)
    total = 1 << size
    spr = int(coeffs.sum(dtype=np.int64))
    deg = int((coeffs * _popcounts(r)).max(axis=1).sum(dtype=np.int64))
    return Fraction(spr, total), Fraction(deg, total)


def expected_degree_closed_form(r: int) -> Fraction:
    """``2**(-2**r) sum_d d (2**C(r,d) - 1) 2**(sum_{j<d} C(r,j))``."""
    total = 0
    for d in range(1, r + 1):
        below = sum(comb(r, j) for j in range(d))
        total += d * ((1 << comb(r, d)) - 1) * (1 << below)
    return Fraction(total, 1 << (1 << r))


def expected_degree_lower_bound(r: int) -> Fraction:
    """``r - 1/2 - (r - 1) / 2**(r+1)``, which is at least ``r - 5/8``."""
    return Fraction(r) - Fraction(1, 2) - Fraction(r - 1, 1 << (r + 1))
