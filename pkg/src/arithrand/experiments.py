"""Figure regeneration, prime sweeps and the least-non-residue distribution.

Every run writes ``<out_dir>/<experiment>/<param-hash>/`` containing
``data.csv``, ``plot.svg`` (when the experiment has one) and ``meta.json``.
CSV output depends only on the parameters, never on timing or worker count.
A run whose ``meta.json`` records the current code version is reused, after a
recomputation of a 1% sample of its rows.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, svg
from .boolfun import anf, degree, legendre_variables, sparsity, truth_table_from_arith
from .numtheory import (
    _check_modulus,
    _least_qnr_unchecked,
    generate_sequence,
    legendre,
    sieve_primes,
)
from .seqanalysis import (
    CorrelationQuery,
    bm_profile,
    correlation_measure,
    legendre_linear_complexity,
)

RESULTS_ENV = "ARITHRAND_RESULTS_DIR"

FIGURE1_COLUMNS = ["p", "r", "class_mod8", "nqr", "spr_c0", "spr_c1", "deg_c0", "deg_c1",
                   "spr_dev_c0", "spr_dev_c1", "distance"]
FIGURE2_COLUMNS = ["p", "class_mod8", "nqr", "max_dev", "argmax_N", "lc_2p", "lc_formula",
                   "lb2_ratio_min"]
NQR_COLUMNS = ["k", "p_k", "count", "observed", "predicted"]


def default_results_dir() -> Path:
    return Path(os.environ.get(RESULTS_ENV, "results"))


def code_version() -> str:
    """Package version plus a digest of the package sources."""
    digest = hashlib.sha256()
    for path in sorted(Path(__file__).parent.glob("*.py")):
        digest.update(path.name.encode())
        digest.update(path.read_bytes())
    return f"{__version__}+{digest.hexdigest()[:12]}"


def param_hash(params: dict) -> str:
    return hashlib.sha256(json.dumps(params, sort_keys=True).encode()).hexdigest()[:12]


def _pmap(func, items, jobs: int | None):
    items = list(items)
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (8 * jobs))))


@dataclass
class ExperimentRun:
    id: str
    params: dict
    directory: Path
    runtime: float
    code_version: str
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    cached: bool = False

    @property
    def csv_path(self) -> Path:
        return self.directory / "data.csv"

    @property
    def svg_path(self) -> Path:
        return self.directory / "plot.svg"

    @property
    def meta_path(self) -> Path:
        return self.directory / "meta.json"


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[c] for c in columns])
    return buf.getvalue()


def _run_dir(experiment: str, params: dict, out_dir) -> Path:
    base = Path(out_dir) if out_dir is not None else default_results_dir()
    return base / experiment / param_hash(params)


def _load_cached(directory: Path, version: str):
    meta_path = directory / "meta.json"
    data_path = directory / "data.csv"
    if not (meta_path.exists() and data_path.exists()):
        return None
    meta = json.loads(meta_path.read_text())
    if meta.get("code_version") != version:
        return None
    with data_path.open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    return meta, rows


def _write_run(run: ExperimentRun, csv_text: str, svg_text: str | None) -> None:
    run.directory.mkdir(parents=True, exist_ok=True)
    run.csv_path.write_text(csv_text)
    if svg_text is not None:
        run.svg_path.write_text(svg_text)
    meta = {
        "id": run.id,
        "params": run.params,
        "runtime_seconds": round(run.runtime, 3),
        "code_version": run.code_version,
        "summary": run.summary,
        "files": sorted(p.name for p in run.directory.iterdir() if p.name != "meta.json")
        + ["meta.json"],
    }
    run.meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _spot_sample(items: list, fraction: float = 0.01) -> list:
    if not items:
        return []
    step = max(1, round(1 / fraction))
    return items[::step]


# -- per-prime records ----------------------------------------------------------


@dataclass(frozen=True)
class PrimeRecord:
    """Boolean-function statistics of the Legendre symbol modulo ``p``."""

    p: int
    r: int
    residue_class: int
    nqr: int
    spr_c0: int
    spr_c1: int
    deg_c0: int
    deg_c1: int
    max_lc_dev: Fraction | None = None

    @property
    def spr_deviation(self) -> int:
        """``spr(B) - 2**(r-1)`` for ``c = 0``."""
        return self.spr_c0 - (1 << (self.r - 1))


def prime_record(p: int) -> PrimeRecord:
    r = legendre_variables(p)
    kind = legendre(p)
    stats = []
    for c in (0, 1):
        a = anf(truth_table_from_arith(kind, r, c))
        stats.append((sparsity(a), degree(a)))
    return PrimeRecord(p, r, p % 8, _least_qnr_unchecked(p), stats[0][0], stats[1][0],
                       stats[0][1], stats[1][1])


def _figure1_row(p: int) -> dict:
    rec = prime_record(p)
    half = 1 << (rec.r - 1)
    dev0, dev1 = rec.spr_c0 - half, rec.spr_c1 - half
    return {
        "p": rec.p, "r": rec.r, "class_mod8": rec.residue_class, "nqr": rec.nqr,
        "spr_c0": rec.spr_c0, "spr_c1": rec.spr_c1, "deg_c0": rec.deg_c0, "deg_c1": rec.deg_c1,
        "spr_dev_c0": dev0, "spr_dev_c1": dev1, "distance": abs(dev0),
    }


def _as_str_rows(rows, columns):
    return [{c: str(row[c]) for c in columns} for row in rows]


def run_figure1(p_max: int = 10000, out_dir=None, jobs: int | None = None,
                use_cache: bool = True) -> ExperimentRun:
    """Distance of ``spr(B)`` from ``2**(r-1)`` for every odd prime ``p < p_max``."""
    if p_max < 4:
        raise ValueError("p_max must be at least 4 to include an odd prime")
    params = {"p_max": p_max}
    directory = _run_dir("figure1", params, out_dir)
    version = code_version()
    primes = [int(p) for p in sieve_primes(p_max - 1) if p > 2]

    if use_cache and (hit := _load_cached(directory, version)) is not None:
        meta, rows = hit
        sample = _spot_sample(rows)
        if all(_as_str_rows([_figure1_row(int(r["p"]))], FIGURE1_COLUMNS)[0] == r for r in sample):
            return ExperimentRun("figure1", params, directory, meta["runtime_seconds"], version,
                                 rows, meta["summary"], cached=True)

    start = time.perf_counter()
    rows = _pmap(_figure1_row, primes, jobs)
    c_independent = all(abs(r["spr_dev_c0"]) == abs(r["spr_dev_c1"]) for r in rows)
    ratios = [r["distance"] / math.sqrt(r["p"]) for r in rows]
    worst = int(np.argmax(ratios))
    summary = {
        "rows": len(rows),
        "c_independent": c_independent,
        "max_distance": max(r["distance"] for r in rows),
        "max_distance_over_sqrt_p": round(ratios[worst], 6),
        "argmax_p": rows[worst]["p"],
        "min_deg_minus_r": min(min(r["deg_c0"], r["deg_c1"]) - r["r"] for r in rows),
    }
    xs = [r["p"] for r in rows]
    ys = [r["spr_dev_c0"] for r in rows]
    gx = list(range(3, p_max, max(1, p_max // 400)))
    plot = svg.scatter(
        xs, ys,
        title="spr(B) - 2^(r-1) for the Legendre symbol, c = 0",
        xlabel="p", ylabel="spr(B) - 2^(r-1)",
        guides=[(gx, [math.sqrt(x) for x in gx], "+-sqrt(p)"),
                (gx, [-math.sqrt(x) for x in gx], "")],
    )
    run = ExperimentRun("figure1", params, directory, time.perf_counter() - start, version,
                        _as_str_rows(rows, FIGURE1_COLUMNS), summary)
    _write_run(run, _csv_text(FIGURE1_COLUMNS, rows), plot)
    return run


def _figure2_row(p: int) -> dict:
    seq = generate_sequence(legendre(p), 2 * p)
    prof = bm_profile(seq)
    dev, arg = prof.max_deviation(p + 1)
    # ratio of L(N) to min(N, p) log p / sqrt(p) for sqrt(p) <= N <= p + 1
    n = np.arange(1, p + 2)
    keep = n >= math.sqrt(p)
    scale = np.minimum(n[keep], p) * math.log(p) / math.sqrt(p)
    ratio = float(np.min(prof.values[: p + 1][keep] / scale))
    return {
        "p": p, "class_mod8": p % 8, "nqr": _least_qnr_unchecked(p),
        "max_dev": str(float(dev)), "argmax_N": arg,
        "lc_2p": prof.at(2 * p), "lc_formula": legendre_linear_complexity(p),
        "lb2_ratio_min": f"{ratio:.6f}",
    }


def _least_squares_log(ps, ys) -> float:
    logs = np.log(np.asarray(ps, dtype=float))
    return float(np.dot(logs, ys) / np.dot(logs, logs))


def run_figure2(p_max: int = 10000, out_dir=None, jobs: int | None = None,
                use_cache: bool = True) -> ExperimentRun:
    """Maximum of ``|L(L_p, N) - N/2|`` over ``N <= p + 1`` for ``p = +-1 mod 8``."""
    if p_max < 8:
        raise ValueError("p_max must be at least 8 to include p = 7")
    params = {"p_max": p_max}
    directory = _run_dir("figure2", params, out_dir)
    version = code_version()
    primes = [int(p) for p in sieve_primes(p_max - 1) if p % 8 in (1, 7)]

    if use_cache and (hit := _load_cached(directory, version)) is not None:
        meta, rows = hit
        sample = _spot_sample(rows)
        if all(_as_str_rows([_figure2_row(int(r["p"]))], FIGURE2_COLUMNS)[0] == r for r in sample):
            return ExperimentRun("figure2", params, directory, meta["runtime_seconds"], version,
                                 rows, meta["summary"], cached=True)

    start = time.perf_counter()
    rows = _pmap(_figure2_row, primes, jobs)
    ps = [r["p"] for r in rows]
    devs = [float(r["max_dev"]) for r in rows]
    c = _least_squares_log(ps, devs)
    summary = {
        "rows": len(rows),
        "endpoints_match": all(r["lc_2p"] == r["lc_formula"] for r in rows),
        "max_dev": max(devs),
        "argmax_p": ps[int(np.argmax(devs))],
        "max_dev_over_log_p": round(max(d / math.log(p) for p, d in zip(ps, devs)), 6),
        "guide_constant": round(c, 6),
        "min_lb2_ratio": min(float(r["lb2_ratio_min"]) for r in rows),
    }
    gx = list(range(7, p_max, max(1, p_max // 400)))
    plot = svg.scatter(
        ps, devs,
        title="max |L(L_p, N) - N/2|, N <= p+1, p = +-1 mod 8",
        xlabel="p", ylabel="max deviation",
        guides=[(gx, [c * math.log(x) for x in gx], f"{c:.3f} log p (least squares)")],
    )
    run = ExperimentRun("figure2", params, directory, time.perf_counter() - start, version,
                        _as_str_rows(rows, FIGURE2_COLUMNS), summary)
    _write_run(run, _csv_text(FIGURE2_COLUMNS, rows), plot)
    return run


def _decimate(n: np.ndarray, y: np.ndarray, dense_until: int = 10**4, stride: int = 16):
    keep = (n <= dense_until) | ((n - dense_until) % stride == 0)
    keep[-1] = True
    return n[keep], y[keep]


def run_figure3(p: int = 100049, out_dir=None, use_cache: bool = True) -> ExperimentRun:
    """``L(L_p, N) - N/2`` for ``N = 1 .. p + 1`` and the periodic linear complexity."""
    _check_modulus(p)
    if p % 8 in (3, 5):
        warnings.warn(f"p = {p} is +-3 mod 8: the curve stays within [-1, 1]", stacklevel=2)
    params = {"p": p}
    directory = _run_dir("figure3", params, out_dir)
    version = code_version()
    columns = ["N", "L", "deviation_x2"]

    if use_cache and (hit := _load_cached(directory, version)) is not None:
        meta, rows = hit
        check = min(len(rows), 1000)
        fresh = bm_profile(generate_sequence(legendre(p), check))
        if all(int(rows[i]["L"]) == fresh.at(i + 1) for i in range(check)):
            return ExperimentRun("figure3", params, directory, meta["runtime_seconds"], version,
                                 rows, meta["summary"], cached=True)

    start = time.perf_counter()
    prof = bm_profile(generate_sequence(legendre(p), 2 * p))
    n = np.arange(1, p + 2)
    L = prof.values[: p + 1]
    dev2 = 2 * L - n
    signs = np.sign(dev2[dev2 != 0])
    dev, arg = prof.max_deviation(p + 1)
    summary = {
        "p": p,
        "lc_periodic": prof.at(2 * p),
        "lc_formula": legendre_linear_complexity(p),
        "max_dev": float(dev),
        "argmax_N": arg,
        "sign_changes": int(np.count_nonzero(np.diff(signs))),
        "final_L": int(L[-1]),
    }
    rows = [{"N": int(a), "L": int(b), "deviation_x2": int(c)} for a, b, c in zip(n, L, dev2)]
    xs, ys = _decimate(n, dev2 / 2)
    plot = svg.polyline(xs.tolist(), ys.tolist(),
                        title=f"L(L_p, N) - N/2 for p = {p}",
                        xlabel="N", ylabel="L(L_p, N) - N/2")
    csv_text = "N,L,deviation_x2\n" + "".join(f"{a},{b},{c}\n" for a, b, c in zip(n, L, dev2))
    run = ExperimentRun("figure3", params, directory, time.perf_counter() - start, version,
                        rows, summary)
    _write_run(run, csv_text, plot)
    return run


# -- least quadratic non-residue distribution -------------------------------------


@dataclass(frozen=True)
class NqrDistRow:
    k: int | str
    p_k: int | str
    count: int
    observed: float
    predicted: float


def nqr_distribution(x: int = 10**6, k_max: int = 10) -> tuple[list[NqrDistRow], dict]:
    """Observed share of odd primes ``p <= x`` with ``N(p) = p_k`` against ``2**-k``.

    The last row (``k = "tail"``) collects ``N(p) > p_{k_max}``, so the
    observed column sums to one.
    """
    if x < 100:
        raise ValueError("x must be at least 100")
    primes = sieve_primes(x)
    odd = [int(p) for p in primes if p > 2]
    small = [int(p) for p in primes[:k_max]]
    index = {q: i for i, q in enumerate(small)}
    counts = [0] * (k_max + 1)
    le17 = 0
    for p in odd:
        q = _least_qnr_unchecked(p)
        counts[index.get(q, k_max)] += 1
        le17 += q <= 17
    total = len(odd)
    rows = [NqrDistRow(i + 1, small[i], counts[i], counts[i] / total, 2.0 ** -(i + 1))
            for i in range(k_max)]
    rows.append(NqrDistRow("tail", f">{small[-1]}", counts[k_max], counts[k_max] / total,
                           2.0 ** -k_max))
    summary = {
        "x": x,
        "primes": total,
        "fraction_nqr_2": counts[0] / total,
        "fraction_nqr_le_17": le17 / total,
        "limit_nqr_le_17": 127 / 128,
    }
    return rows, summary


def run_nqr_distribution(x: int = 10**6, out_dir=None) -> ExperimentRun:
    params = {"x": x}
    start = time.perf_counter()
    rows, summary = nqr_distribution(x)
    dict_rows = [{c: (f"{getattr(r, c):.8f}" if c in ("observed", "predicted") else getattr(r, c))
                  for c in NQR_COLUMNS} for r in rows]
    run = ExperimentRun("nqr-dist", params, _run_dir("nqr-dist", params, out_dir),
                        time.perf_counter() - start, code_version(), dict_rows, summary)
    _write_run(run, _csv_text(NQR_COLUMNS, dict_rows), None)
    return run


# -- correlation measure versus linear complexity -----------------------------------


def correlation_report(p_max: int = 500, k_max: int = 2) -> list[dict]:
    """Correlation measures of ``L_p`` over ``N = p`` and the ratio ``L / (K log N)``.

    ``K`` is the largest order ``<= k_max`` with ``K**2 < N`` such that every
    ``C_k`` for ``k <= K`` is below ``N / 2``.  Report-only: the complexity
    lower bound in terms of ``K log N`` carries an unspecified constant.
    """
    rows = []
    for p in (int(q) for q in sieve_primes(p_max - 1) if q > 2):
        N = p
        seq = generate_sequence(legendre(p), N)
        measures = {}
        K = 0
        for k in range(1, k_max + 1):
            measures[k] = correlation_measure(seq, CorrelationQuery(k, N))
            if K == k - 1 and measures[k] < N / 2 and k * k < N:
                K = k
        L = bm_profile(seq).at(N)
        rows.append({
            "p": p, "N": N, "L": L,
            **{f"C_{k}": v for k, v in measures.items()},
            "K": K,
            "ratio": (L / (K * math.log(N))) if K else None,
        })
    return rows

