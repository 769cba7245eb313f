"""Random instances and the modified-vs-baseline iteration/time experiments."""

from __future__ import annotations

import csv
import io
import json
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .decomposition import SolveMode, solve_weight
from .graph import BipartiteGraph

GENERATOR_METHODS = ("assign", "unit")
COLUMNS = ("n", "W", "mode", "iterations", "w_prime", "weight", "time", "seed")


def rng_identity() -> str:
    return f"numpy.random.PCG64 via SeedSequence (numpy {np.__version__})"


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    total_weight: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.total_weight < 1:
            raise ValueError(f"total weight must be >= 1, got {self.total_weight}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")


@dataclass(frozen=True)
class BenchRow:
    n: int
    W: int
    mode: str
    iterations: float
    w_prime: float
    weight: float
    time: float
    seed: int

    def key(self) -> tuple:
        """Row contents without the timing column."""
        return tuple(getattr(self, c) for c in COLUMNS if c != "time")


def gen_random_graph(spec: InstanceSpec, method: str = "assign") -> BipartiteGraph:
    """Random ``n x n`` graph whose edge weights sum to exactly ``spec.total_weight``.

    ``assign``: pick a uniform pair and give it a uniform weight in
    ``[1, W - (weight held by the other edges)]``, overwriting any earlier
    value, until the total reaches ``W``.

    ``unit``: ``W`` times, pick a uniform pair and add 1 to its weight.
    """
    n, big_w = spec.n, spec.total_weight
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed)))
    weights: dict[tuple[int, int], int] = {}
    if method == "assign":
        total = 0
        while total < big_w:
            u, v = (int(x) for x in rng.integers(0, n, size=2))
            old = weights.get((u, v), 0)
            w = int(rng.integers(1, big_w - (total - old), endpoint=True))
            weights[(u, v)] = w
            total += w - old
    elif method == "unit":
        draws = rng.integers(0, n, size=(big_w, 2))
        for u, v in draws.tolist():
            weights[(u, v)] = weights.get((u, v), 0) + 1
    else:
        raise ValueError(f"unknown generator method {method!r}; expected one of {GENERATOR_METHODS}")
    return BipartiteGraph(n, n, [(u, v, w) for (u, v), w in sorted(weights.items())])


def derive_seed(base: int, n: int, total_weight: int, repeat: int) -> int:
    """Independent 64-bit seed for one repeat of one ``(n, W)`` cell."""
    ss = np.random.SeedSequence([base, n, total_weight, repeat])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _run_cell(args: tuple[InstanceSpec, tuple[str, ...], str, bool]) -> list[BenchRow]:
    spec, modes, method, warmup = args
    g = gen_random_graph(spec, method)
    rows = []
    for mode in modes:
        if warmup:
            solve_weight(g, mode)
        t0 = time.perf_counter()
        weight, trace = solve_weight(g, mode)
        elapsed = time.perf_counter() - t0
        rows.append(
            BenchRow(spec.n, spec.total_weight, SolveMode(mode).value, trace.p, trace.w_prime,
                     weight, elapsed, spec.seed)
        )
    return rows


def run_experiment(
    specs: Sequence[InstanceSpec],
    modes: Iterable[SolveMode | str] = (SolveMode.MODIFIED, SolveMode.BASELINE),
    repeats: int = 1,
    *,
    average: bool = False,
    method: str = "assign",
    warmup: bool = True,
    jobs: int = 1,
) -> list[BenchRow]:
    """Solve every spec in every mode.

    With ``repeats > 1`` each spec is expanded into ``repeats`` instances
    using seeds from :func:`derive_seed`; ``average=True`` collapses them
    back into one mean row per ``(spec, mode)`` carrying the base seed.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    modes = tuple(SolveMode(m).value for m in modes)
    cells = []
    for spec in specs:
        if repeats == 1:
            cells.append(spec)
        else:
            cells.extend(
                InstanceSpec(spec.n, spec.total_weight, derive_seed(spec.seed, spec.n, spec.total_weight, r))
                for r in range(repeats)
            )
    work = [(c, modes, method, warmup) for c in cells]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_cell = list(pool.map(_run_cell, work))
    else:
        per_cell = [_run_cell(w) for w in work]
    rows = [r for cell_rows in per_cell for r in cell_rows]
    for cell_rows in per_cell:
        if len({r.weight for r in cell_rows}) > 1:
            raise AssertionError(f"modes disagree on solved weight: {cell_rows}")
    if average and repeats > 1:
        return _average(specs, modes, rows, repeats)
    return rows


def _average(specs, modes, rows, repeats) -> list[BenchRow]:
    out = []
    per_spec = len(modes) * repeats
    for k, spec in enumerate(specs):
        block = rows[k * per_spec:(k + 1) * per_spec]
        for mode in modes:
            sel = [r for r in block if r.mode == mode]
            out.append(BenchRow(
                spec.n, spec.total_weight, mode,
                float(np.mean([r.iterations for r in sel])),
                float(np.mean([r.w_prime for r in sel])),
                float(np.mean([r.weight for r in sel])),
                float(np.mean([r.time for r in sel])),
                spec.seed,
            ))
    return out


def emit(rows: Sequence[BenchRow], fmt: str = "csv") -> str:
    """Render rows as csv, tsv or a json array with a fixed column order."""
    if fmt == "json":
        return json.dumps([{c: getattr(r, c) for c in COLUMNS} for r in rows], indent=1) + "\n"
    if fmt not in ("csv", "tsv"):
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="," if fmt == "csv" else "\t", lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in rows:
        writer.writerow([_fmt(getattr(r, c)) for c in COLUMNS])
    return buf.getvalue()


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(int(x)) if x.is_integer() and abs(x) < 2**53 else repr(x)
    return str(x)


def parse_rows(text: str, fmt: str = "csv") -> list[BenchRow]:
    """Inverse of :func:`emit`."""
    if fmt == "json":
        return [BenchRow(**d) for d in json.loads(text)]
    reader = csv.DictReader(io.StringIO(text), delimiter="," if fmt == "csv" else "\t")
    types = {f.name: f.type for f in fields(BenchRow)}
    out = []
    for rec in reader:
        vals = {}
        for k, v in rec.items():
            t = types[k]
            vals[k] = v if t == "str" else (int(v) if t == "int" else float(v))
        out.append(BenchRow(**vals))
    return out


def metadata(method: str, **extra) -> dict:
    return {"generator": method, "rng": rng_identity(), "columns": list(COLUMNS), **extra}
