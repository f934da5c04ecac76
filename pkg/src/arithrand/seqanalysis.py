"""Linear complexity profiles, lattice levels and correlation measures.

Sequences are indexed from 1.  ``L(S, N)`` is the length of the shortest
linear recurrence generating ``s_1 .. s_N``, with ``L = 0`` for an all-zero
prefix and ``L = N`` when only ``s_N`` is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .exceptions import BudgetError
from .numtheory import ArithFn, generate_sequence, liouville_sieve, patched_legendre_sequence
from .sequence import BitSequence

DEFAULT_CORRELATION_BUDGET = 10**8


@dataclass
class CheckReport:
    """Outcome of one verification check.

    ``witness`` describes the first failure (or is ``None``); ``stats`` holds
    any extra quantities worth reporting.
    """

    name: str
    passed: bool
    checked: int = 0
    witness: dict | None = None
    stats: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "witness": self.witness,
            "stats": self.stats,
        }


# -- linear complexity -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class LCProfile:
    """``values[N - 1] = L(S, N)`` for ``N = 1 .. len(values)``.

    ``connection`` is a minimal connection polynomial for the full prefix as a
    GF(2) bitmask: bit ``i`` holds ``c_i`` in ``s_n = sum_{i>=1} c_i s_{n-i}``
    and bit 0 is always set.
    """

    values: np.ndarray
    connection: int

    def __len__(self):
        return int(self.values.size)

    def at(self, N: int) -> int:
        return int(self.values[N - 1])

    @property
    def deviation_x2(self) -> np.ndarray:
        """``2 L(S, N) - N``, i.e. twice the deviation from ``N / 2``."""
        n = np.arange(1, self.values.size + 1, dtype=np.int64)
        return 2 * self.values - n

    def max_deviation(self, upto: int | None = None) -> tuple[Fraction, int]:
        """``max |L(S, N) - N/2|`` over ``N <= upto`` and the first ``N`` attaining it."""
        dev = np.abs(self.deviation_x2[:upto])
        if dev.size == 0:
            return Fraction(0), 0
        i = int(np.argmax(dev))
        return Fraction(int(dev[i]), 2), i + 1

    def to_csv(self) -> str:
        lines = ["N,L,deviation_x2"]
        lines.extend(
            f"{n},{l},{d}"
            for n, (l, d) in enumerate(zip(self.values.tolist(), self.deviation_x2.tolist()), 1)
        )
        return "\n".join(lines) + "\n"


def bm_profile(seq: BitSequence, n_max: int | None = None) -> LCProfile:
    """Berlekamp-Massey over GF(2) with Python integers as bit vectors.

    ``window`` holds ``s_n, s_{n-1}, ...`` in bits ``0, 1, ...`` so that the
    discrepancy is the parity of ``connection & window``.
    """
    if n_max is None:
        n_max = len(seq)
    if n_max > len(seq):
        raise ValueError(f"profile length {n_max} exceeds sequence length {len(seq)}")
    bits = seq.bits[:n_max].tolist()
    out = [0] * n_max
    C, B = 1, 1
    L, m = 0, 1
    window = 0
    for n, s in enumerate(bits):
        window = (window << 1) | s
        if (C & window).bit_count() & 1:
            if 2 * L <= n:
                C, B = C ^ (B << m), C
                L = n + 1 - L
                m = 1
            else:
                C ^= B << m
                m += 1
        else:
            m += 1
        out[n] = L
    return LCProfile(np.array(out, dtype=np.int64), C)


def linear_complexity(seq: BitSequence) -> int:
    """``L(S, N)`` for the whole sequence."""
    if len(seq) == 0:
        return 0
    return bm_profile(seq).at(len(seq))


def linear_complexity_periodic(seq: BitSequence, period: int) -> int:
    """Linear complexity of a ``period``-periodic sequence from its first ``2 * period`` terms."""
    if period < 1:
        raise ValueError("period must be positive")
    if len(seq) < 2 * period:
        raise ValueError(
            f"need at least {2 * period} terms for period {period}, got {len(seq)}"
        )
    return bm_profile(seq, 2 * period).at(2 * period)


def legendre_linear_complexity(p: int) -> int:
    """Known linear complexity of the period-``p`` Legendre sequence, by ``p mod 8``."""
    return {1: (p - 1) // 2, 3: p, 5: p - 1, 7: (p + 1) // 2}[p % 8]


def exhaustive_mean_linear_complexity(N: int) -> Fraction:
    """Mean of ``L(S, N)`` over all ``2**N`` sequences of length ``N``."""
    if not 1 <= N <= 20:
        raise ValueError("exhaustive mean supports 1 <= N <= 20")
    total = 0
    for code in range(1 << N):
        bits = np.array([(code >> i) & 1 for i in range(N)], dtype=np.uint8)
        total += linear_complexity(BitSequence(bits))
    return Fraction(total, 1 << N)


# -- lattice test ------------------------------------------------------------


@dataclass(frozen=True)
class LatticeResult:
    N: int
    level: int


def _spans(packed: int, N: int, dim: int) -> bool:
    """Do the difference vectors for ``n = 2 .. N - dim + 1`` span GF(2)**dim?"""
    if N - dim < dim:
        return False
    mask = (1 << dim) - 1
    first = packed & mask
    basis: dict[int, int] = {}
    for start in range(1, N - dim + 1):
        v = ((packed >> start) & mask) ^ first
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                if len(basis) == dim:
                    return True
                break
    return False


def lattice_level(seq: BitSequence, N: int) -> LatticeResult:
    """Greatest ``S`` such that ``seq`` passes the ``S``-dimensional ``N``-lattice test.

    Passing in dimension ``S`` implies passing in ``S - 1``, so the search
    runs downward from ``floor(N / 2)`` and stops at the first pass.
    """
    if N > len(seq):
        raise ValueError(f"N = {N} exceeds sequence length {len(seq)}")
    if N < 1:
        return LatticeResult(N, 0)
    packed = seq.prefix(N).to_int()
    for dim in range(N // 2, 0, -1):
        if _spans(packed, N, dim):
            return LatticeResult(N, dim)
    return LatticeResult(N, 0)


# -- correlation measure -----------------------------------------------------


@dataclass(frozen=True)
class CorrelationQuery:
    """Parameters of ``C_k(S, N)``; ``shifts`` fixes ``D = (d_1, .., d_k)``."""

    k: int
    N: int
    budget: int = DEFAULT_CORRELATION_BUDGET
    shifts: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("order k must be at least 1")
        if self.N < 1:
            raise ValueError("window N must be at least 1")
        if self.shifts is not None:
            d = tuple(self.shifts)
            if len(d) != self.k:
                raise ValueError(f"expected {self.k} shifts, got {len(d)}")
            if any(a >= b for a, b in zip(d, d[1:])) or d[0] < 0:
                raise ValueError("shifts must be strictly increasing and non-negative")
            if d[-1] > self.N - 1:
                raise ValueError(f"largest shift {d[-1]} leaves no room in window {self.N}")

    def work(self) -> int:
        """Elementary operations needed, the unit of ``budget``."""
        if self.shifts is not None or self.k == 1:
            return self.N
        return comb(self.N - 1, self.k - 1) * self.N


def _max_abs_window(prod: np.ndarray) -> int:
    """Largest ``|sum|`` over contiguous windows along the last axis."""
    cs = np.cumsum(prod, axis=-1, dtype=np.int64)
    hi = np.maximum(cs.max(axis=-1), 0)
    lo = np.minimum(cs.min(axis=-1), 0)
    return int((hi - lo).max())


def correlation_measure(seq: BitSequence, query: CorrelationQuery) -> int:
    """``C_k(S, N) = max_{M, D} |sum_{n=1}^{M} (-1)**(s_{n+d_1} + ... + s_{n+d_k})|``.

    The maximum runs over ``0 <= d_1 < ... < d_k <= N - M``.  Writing
    ``D = d_1 + (0, e_2, .., e_k)``, each admissible ``(M, d_1)`` is a window of
    the product sequence for ``(0, e_2, .., e_k)`` inside ``1 .. N - e_k``, so
    only shift patterns with ``d_1 = 0`` are enumerated, each by a
    maximum-subarray scan.  A fixed ``D`` maximises over ``M`` alone.
    """
    N, k = query.N, query.k
    if N > len(seq):
        raise ValueError(f"window {N} exceeds sequence length {len(seq)}")
    need = query.work()
    if need > query.budget:
        raise BudgetError(
            f"C_{k} over N = {N} needs {need} operations, budget is {query.budget}",
            required=need,
        )
    x = seq.signs()[:N].astype(np.int64)

    if query.shifts is not None:
        d = query.shifts
        length = N - d[-1]
        prod = np.ones(length, dtype=np.int64)
        for dj in d:
            prod *= x[dj : dj + length]
        return int(np.abs(np.cumsum(prod)).max())

    if k == 1:
        return _max_abs_window(x)

    padded = np.concatenate([x, np.zeros(N, dtype=np.int64)])
    windows = sliding_window_view(padded, N)  # windows[d, n] = x[n + d]
    best = 0
    for middle in combinations(range(1, N), k - 2):
        base = x.copy()
        for d in middle:
            base *= windows[d]
        start = (middle[-1] if middle else 0) + 1
        if start >= N:
            continue
        best = max(best, _max_abs_window(base[None, :] * windows[start:N]))
    return best


# -- sums ----------------------------------------------------------------------


def balance_sum(kind: ArithFn, N: int) -> int:
    """``sum_{n=1}^N f(n)``; Legendre terms at multiples of ``p`` count as 0."""
    if N < 1:
        return 0
    values = kind.values(N).astype(np.int64)
    if kind.kind == "legendre":
        values[kind.p - 1 :: kind.p] = 0
    return int(values.sum())


def chowla_sum(limit: int, shifts) -> int:
    """``sum_{n=1}^{limit} prod_j lambda(n + h_j)`` for distinct non-negative shifts."""
    shifts = sorted(set(int(h) for h in shifts))
    if not shifts or shifts[0] < 0:
        raise ValueError("shifts must be distinct non-negative integers")
    if limit < 1:
        return 0
    lam = liouville_sieve(limit + shifts[-1]).astype(np.int64)
    prod = np.ones(limit, dtype=np.int64)
    for h in shifts:
        prod *= lam[h : h + limit]
    return int(prod.sum())


# -- theorem checks ------------------------------------------------------------


def check_corollary3(seq: BitSequence) -> CheckReport:
    """Check ``floor(N/2) <= L(S, N) <= floor(N/2) + 1`` for every ``N``.

    The hypothesis ``s_{2n} = 1 - s_n`` is checked first; a violation is
    reported as a failure with the offending ``n``.
    """
    name = f"corollary3[{seq.origin}]"
    bits = seq.bits
    half = len(seq) // 2
    bad = np.flatnonzero(bits[1 : 2 * half : 2] == bits[:half])
    if bad.size:
        n = int(bad[0]) + 1
        return CheckReport(
            name, False, 0,
            {"precondition": "s_2n = 1 - s_n", "n": n, "s_n": int(bits[n - 1]), "s_2n": int(bits[2 * n - 1])},
        )
    prof = bm_profile(seq)
    N = np.arange(1, len(seq) + 1)
    low, high = N // 2, N // 2 + 1
    out = np.flatnonzero((prof.values < low) | (prof.values > high))
    if out.size:
        i = int(out[0])
        return CheckReport(
            name, False, len(seq),
            {"N": i + 1, "L": int(prof.values[i]), "low": int(low[i]), "high": int(high[i])},
        )
    return CheckReport(name, True, len(seq))


def theorem4_bounds(p: int, N: int) -> tuple[int, int]:
    """Lower and upper bound on ``L(L_p, N)`` for ``p = 3, 5 mod 8``."""
    a = min(N, 2 * p - 1)
    b = min(N, 2 * p - 2)
    return a // 2, b // 2 + 1  # ceil((a - 1) / 2) == a // 2


def check_theorem4(p: int, extra: int = 5, seq: BitSequence | None = None) -> CheckReport:
    """Two-sided band for ``L(L_p, N)``, ``N = 1 .. 2p + extra``.

    From ``N = 2p`` on the profile must equal the full linear complexity
    (``p`` or ``p - 1``).  ``seq`` substitutes the generated sequence, which
    lets fault-injection tests feed a corrupted one.
    """
    from .numtheory import legendre

    if p % 8 not in (3, 5):
        raise ValueError(f"p = {p} is {p % 8} mod 8; the band needs p = 3 or 5 mod 8")
    n_max = 2 * p + extra
    if seq is None:
        seq = generate_sequence(legendre(p), n_max)
    prof = bm_profile(seq, n_max)
    full = legendre_linear_complexity(p)
    for N in range(1, n_max + 1):
        L = prof.at(N)
        low, high = theorem4_bounds(p, N)
        if not low <= L <= high or (N >= 2 * p and L != full):
            return CheckReport(
                f"theorem4[p={p}]", False, N,
                {"p": p, "N": N, "L": L, "low": low, "high": high, "full": full},
            )
    return CheckReport(f"theorem4[p={p}]", True, n_max)


def check_patched_sequence(p: int, length: int) -> CheckReport:
    """The patched Legendre sequence stays in the half-length band up to ``length``."""
    seq = patched_legendre_sequence(p, length)
    return check_corollary3(seq)

