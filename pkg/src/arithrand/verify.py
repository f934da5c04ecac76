"""Verification suites: each checks one proved or numerically claimed property.

``verify_all`` runs a selection of suites and returns a JSON-serialisable
report with per-check pass/fail and a witness for the first failure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .boolfun import (
    anf,
    degree,
    exhaustive_expected_values,
    expected_degree_closed_form,
    expected_degree_lower_bound,
    legendre_variables,
    min_even_extremal,
    sparsity,
    theorem1_derived_F,
    theorem3_restriction,
    truth_table_from_arith,
)
from .exceptions import ConditionViolation, ConstructionOverflow
from .numtheory import (
    F2_LIOUVILLE,
    LIOUVILLE,
    carlitz_sum,
    generate_sequence,
    least_qnr,
    legendre,
    sieve_primes,
)
from .sequence import BitSequence
from .seqanalysis import (
    CheckReport,
    bm_profile,
    check_corollary3,
    check_theorem4,
    exhaustive_mean_linear_complexity,
    lattice_level,
    legendre_linear_complexity,
    linear_complexity_periodic,
)


def carlitz_expected(d: int) -> int:
    """Observed closed form ``(-1)**d * 2**floor((d + 1) / 2)``.

    The unsigned value ``2**floor((d + 1) / 2)`` is attained for even ``d``;
    for odd ``d`` the sum is its negative.
    """
    return (-1) ** d * (1 << ((d + 1) // 2))


def _odd_primes(p_max: int, classes=(1, 3, 5, 7)) -> list[int]:
    if p_max < 4:
        return []
    return [int(p) for p in sieve_primes(p_max - 1) if p > 2 and p % 8 in classes]


def _all_passed(name: str, reports: list[CheckReport], **stats) -> CheckReport:
    failed = next((r for r in reports if not r.passed), None)
    return CheckReport(
        name,
        failed is None,
        sum(r.checked for r in reports),
        None if failed is None else {"check": failed.name, **(failed.witness or {})},
        stats,
    )


# -- individual suites ---------------------------------------------------------


def suite_lc_exact(p_max: int = 2000, generator: Callable | None = None) -> CheckReport:
    """Periodic linear complexity of ``L_p`` equals the value fixed by ``p mod 8``."""
    generator = generator or (lambda p, n: generate_sequence(legendre(p), n))
    classes = set()
    for p in _odd_primes(p_max):
        got = linear_complexity_periodic(generator(p, 2 * p), p)
        want = legendre_linear_complexity(p)
        classes.add(p % 8)
        if got != want:
            return CheckReport("lc-exact", False, 0, {"p": p, "L": got, "expected": want})
    n = len(_odd_primes(p_max))
    return CheckReport("lc-exact", True, n, stats={"classes": sorted(classes)})


def suite_theorem4(p_max: int = 1000, generator: Callable | None = None) -> CheckReport:
    """Two-sided band on ``L(L_p, N)`` for ``p = +-3 mod 8`` and ``N <= 2p + 5``."""
    reports = []
    for p in _odd_primes(p_max, (3, 5)):
        seq = generator(p, 2 * p + 5) if generator else None
        rep = check_theorem4(p, seq=seq)
        reports.append(rep)
        if not rep.passed:
            break
    return _all_passed("theorem4", reports, primes=len(reports))


def suite_corollary3(length: int = 10**5) -> CheckReport:
    """``floor(N/2) <= L(S, N) <= floor(N/2) + 1`` for both Liouville sequences."""
    reports = [check_corollary3(generate_sequence(kind, length)) for kind in (LIOUVILLE, F2_LIOUVILLE)]
    return _all_passed("corollary3", reports, length=length)


def _bool_bounds(kind, r: int, c: int) -> CheckReport | None:
    table = truth_table_from_arith(kind, r, c)
    a = anf(table)
    deg, spr = degree(a), sparsity(a)
    name = f"theorem1[{kind},r={r},c={c}]"
    if deg < r - 1 or spr < (1 << r) // 3:
        return CheckReport(name, False, 1, {"r": r, "c": c, "deg": deg, "spr": spr,
                                            "deg_bound": r - 1, "spr_bound": (1 << r) // 3})
    try:
        F = theorem1_derived_F(table)
    except ConditionViolation as exc:
        return CheckReport(name, False, 1, {"r": r, "c": c, "n": exc.witness})
    if degree(F) != r - 1 or sparsity(F) != (1 << (r - 1)) - 1:
        return CheckReport(name, False, 1, {"r": r, "c": c, "F_deg": degree(F),
                                            "F_spr": sparsity(F)})
    return None


def suite_theorem1(p_max: int = 10000, r_max: int = 16, r_min: int = 4) -> CheckReport:
    """``deg >= r - 1`` and ``spr >= floor(2**r / 3)`` under ``f(2n) = -f(n)``, both ``c``.

    Covers both Liouville kinds for ``r_min <= r <= r_max`` and the Legendre
    symbol for ``p = +-3 mod 8``, ``p < p_max`` with ``r = floor(log2 p)``.
    Also checks that the extremal ANF attains the sparsity bound.
    """
    checked = 0
    for kind in (LIOUVILLE, F2_LIOUVILLE):
        for r in range(r_min, r_max + 1):
            for c in (0, 1):
                checked += 1
                if (fail := _bool_bounds(kind, r, c)) is not None:
                    return CheckReport("theorem1", False, checked, {"check": fail.name, **fail.witness})
    for p in _odd_primes(p_max, (3, 5)):
        r = legendre_variables(p)
        if r < 2:
            continue
        for c in (0, 1):
            checked += 1
            if (fail := _bool_bounds(legendre(p), r, c)) is not None:
                return CheckReport("theorem1", False, checked,
                                   {"check": fail.name, "p": p, **fail.witness})
    for r in range(1, r_max + 1):
        extremal = min_even_extremal(r)
        if sparsity(extremal) != (1 << r) // 3:
            return CheckReport("theorem1", False, checked,
                               {"check": "extremal", "r": r, "spr": sparsity(extremal)})
        values = extremal.truth_table().values
        n = np.arange(1, 1 << (r - 1))
        if np.any(values[2 * n] == values[n]):
            return CheckReport("theorem1", False, checked, {"check": "extremal-halving", "r": r})
    return CheckReport("theorem1", True, checked)


def suite_corollary2(p_max: int = 10000) -> CheckReport:
    """``floor(2**r / 3) > floor(p / 6)`` for ``p = +-3 mod 8``.

    All failing primes are listed.  ``stats`` also records where the sparsity
    of ``B`` itself fails to exceed ``floor(p / 6)``, for either ``c``.
    """
    primes = _odd_primes(p_max, (3, 5))
    failures, spr_failures = [], []
    for p in primes:
        r = legendre_variables(p)
        if not (1 << r) // 3 > p // 6:
            failures.append({"p": p, "r": r, "floor_2r_3": (1 << r) // 3, "floor_p_6": p // 6})
        for c in (0, 1):
            spr = sparsity(anf(truth_table_from_arith(legendre(p), r, c)))
            if not spr > p // 6:
                spr_failures.append({"p": p, "c": c, "spr": spr})
    return CheckReport(
        "corollary2", not failures, len(primes),
        {"first": failures[0], "all": failures} if failures else None,
        {"spr_not_above_p_6": spr_failures},
    )


def suite_theorem3(p_max: int = 10000) -> CheckReport:
    """``deg >= floor(r/s)`` and ``spr >= 2**(floor(r/s) - 1)`` for ``p = +-1 mod 8``, both ``c``."""
    checked = skipped = 0
    for p in _odd_primes(p_max, (1, 7)):
        r = legendre_variables(p)
        q = least_qnr(p)
        s = (q - 1).bit_length()
        m = r // s
        for c in (0, 1):
            table = truth_table_from_arith(legendre(p), r, c)
            try:
                F = theorem3_restriction(table, p)
            except ConstructionOverflow:
                skipped += 1
                continue
            a = anf(table)
            ones = np.ones(1 << m, dtype=np.uint8)
            ones[0] = 0
            checked += 1
            if not np.array_equal(F.truth_table().values, ones):
                return CheckReport("theorem3", False, checked, {"p": p, "c": c, "check": "restriction"})
            if degree(a) < m or sparsity(a) < 1 << (m - 1):
                return CheckReport("theorem3", False, checked, {
                    "p": p, "c": c, "deg": degree(a), "spr": sparsity(a),
                    "deg_bound": m, "spr_bound": 1 << (m - 1)})
    return CheckReport("theorem3", True, checked, stats={"skipped_overflow": skipped})


def suite_degree_claim(p_max: int = 10000) -> CheckReport:
    """``min_c deg(B) >= r - 2`` for every odd prime ``p < p_max``."""
    primes = _odd_primes(p_max)
    for p in primes:
        r = legendre_variables(p)
        degs = [degree(anf(truth_table_from_arith(legendre(p), r, c))) for c in (0, 1)]
        if min(degs) < r - 2:
            return CheckReport("deg-claim", False, 0, {"p": p, "r": r, "deg": min(degs)})
    return CheckReport("deg-claim", True, len(primes))


def suite_carlitz(d_max: int = 20) -> CheckReport:
    """``sum_{deg F = d} lambda(F) = (-1)**d 2**floor((d + 1) / 2)``."""
    for d in range(1, d_max + 1):
        got = carlitz_sum(d)
        if got != carlitz_expected(d):
            return CheckReport("carlitz", False, d - 1, {"d": d, "sum": got,
                                                         "expected": carlitz_expected(d)})
    return CheckReport("carlitz", True, d_max)


def suite_expected_values(r_max: int = 4, n_max: int = 14) -> CheckReport:
    """Exhaustive means: sparsity ``2**(r-1)``, degree by its closed form, ``L`` near ``N / 2``."""
    for r in range(1, r_max + 1):
        spr, deg = exhaustive_expected_values(r)
        if spr != 2 ** (r - 1) or deg != expected_degree_closed_form(r) \
                or deg < expected_degree_lower_bound(r):
            return CheckReport("expected-values", False, r, {"r": r, "spr": str(spr), "deg": str(deg)})
    for N in range(1, n_max + 1):
        mean = exhaustive_mean_linear_complexity(N)
        if abs(mean - N / 2) >= 1:
            return CheckReport("expected-values", False, r_max + N, {"N": N, "mean": str(mean)})
    return CheckReport("expected-values", True, r_max + n_max)


def suite_prop_cross(n_random: int = 10**4, n_constrained: int = 10**3, seed: int = 2024) -> CheckReport:
    """Lattice level (GF(2) rank) against linear complexity (Berlekamp-Massey).

    Random sequences of length 64 at a random ``N``: level is ``m`` or ``m - 1``
    with ``m = min(L, N + 1 - L)``.  Sequences with ``s_{2n} = 1 - s_n`` at a
    random ``N <= 200``: level is ``floor(N / 2)``.
    """
    rng = random.Random(seed)
    for i in range(n_random):
        bits = np.array([rng.getrandbits(1) for _ in range(64)], dtype=np.uint8)
        seq = BitSequence(bits)
        N = rng.randint(1, 64)
        L = bm_profile(seq, N).at(N)
        m = min(L, N + 1 - L)
        level = lattice_level(seq, N).level
        if level not in (m, m - 1):
            return CheckReport("prop-cross", False, i, {"bits": seq.to_ascii(), "N": N,
                                                        "L": L, "level": level})
    for i in range(n_constrained):
        seq = constrained_random_sequence(200, rng)
        N = rng.randint(1, 200)
        level = lattice_level(seq, N).level
        if level != N // 2:
            return CheckReport("prop-cross", False, n_random + i,
                               {"bits": seq.to_ascii(), "N": N, "level": level})
    return CheckReport("prop-cross", True, n_random + n_constrained)


def constrained_random_sequence(length: int, rng: random.Random) -> BitSequence:
    """Random odd-index terms, even-index terms forced by ``s_{2n} = 1 - s_n``."""
    bits = np.zeros(length, dtype=np.uint8)
    for n in range(1, length + 1):
        bits[n - 1] = rng.getrandbits(1) if n % 2 else 1 - bits[n // 2 - 1]
    return BitSequence(bits, "constrained-random")


@dataclass(frozen=True)
class Suite:
    name: str
    claim: str
    run: Callable[[dict], CheckReport]


SUITES = {
    s.name: s
    for s in [
        Suite("lc-exact", "periodic linear complexity of L_p: (p-1)/2, p, p-1, (p+1)/2 "
              "for p = 1, 3, 5, 7 mod 8",
              lambda o: suite_lc_exact(o["p_max"])),
        Suite("theorem4", "ceil((min(N,2p-1)-1)/2) <= L(L_p,N) <= floor(min(N,2p-2)/2)+1 "
              "for p = +-3 mod 8",
              lambda o: suite_theorem4(o["p_max"])),
        Suite("corollary3", "floor(N/2) <= L(S,N) <= floor(N/2)+1 for both Liouville sequences",
              lambda o: suite_corollary3(o["length"])),
        Suite("theorem1", "deg(B) >= r-1 and spr(B) >= floor(2^r/3) when f(2n) = -f(n)",
              lambda o: suite_theorem1(o["p_max"], o["r_max"])),
        Suite("corollary2", "floor(2^r/3) > floor(p/6) for p = +-3 mod 8",
              lambda o: suite_corollary2(o["p_max"])),
        Suite("theorem3", "deg(B) >= floor(r/s), spr(B) >= 2^(floor(r/s)-1) for p = +-1 mod 8",
              lambda o: suite_theorem3(o["p_max"])),
        Suite("deg-claim", "min over c of deg(B) >= r-2 for odd primes p < p_max",
              lambda o: suite_degree_claim(o["p_max"])),
        Suite("carlitz", "sum over deg F = d of lambda(F) = (-1)^d 2^floor((d+1)/2), d <= 20",
              lambda o: suite_carlitz(min(20, o["d_max"]))),
        Suite("expected-values", "exhaustive mean sparsity, mean degree and mean L(S,N)",
              lambda o: suite_expected_values()),
        Suite("prop-cross", "lattice level vs linear complexity, random and s_2n = 1 - s_n families",
              lambda o: suite_prop_cross(o["n_random"], o["n_constrained"])),
    ]
}

DEFAULTS = {"p_max": 10000, "r_max": 16, "length": 10**5, "d_max": 20,
            "n_random": 10**4, "n_constrained": 10**3}


def verify_all(suites=None, **options) -> dict:
    """Run the named suites (all by default); ``report["passed"]`` is the overall verdict."""
    opts = {**DEFAULTS, **{k: v for k, v in options.items() if v is not None}}
    names = list(SUITES) if not suites or suites == ["all"] else list(suites)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    results = []
    for name in names:
        start = time.perf_counter()
        rep = SUITES[name].run(opts)
        entry = rep.as_dict()
        entry["name"] = name
        entry["claim"] = SUITES[name].claim
        entry["seconds"] = round(time.perf_counter() - start, 3)
        results.append(entry)
    return {
        "passed": all(r["passed"] for r in results),
        "options": opts,
        "suites": results,
    }
