"""Batch pipeline execution: run a job, emit artifacts, benchmark.

Artifacts per run: ``blocks.txt`` (block report), ``spectrum.csv``
(columnar eigenvalues with block labels), ``timing.csv`` (per-stage wall
times).  Timing uses a monotonic clock; benchmark statistics exclude one
warm-up run.
"""

from __future__ import annotations

import statistics
import time
from contextlib import contextmanager
from pathlib import Path

from . import matkernel as mk
from . import reduction
from .chartable import catalog_character_table, catalog_irreps
from .errors import JobError
from .jobfile import build_context
from .problems import build_problem
from .reps import is_equivariant


@contextmanager
def _timed(timings, stage):
    start = time.perf_counter()
    yield
    timings[stage] = time.perf_counter() - start


def emit_spectrum(rows):
    """Columnar text for per-block eigenvalues: real, imag, label, copy."""
    lines = ["real,imag,block_label,copy"]
    for value, label, copy in rows:
        z = complex(value)
        lines.append(f"{z.real!r},{z.imag!r},{label},{copy}")
    return "\n".join(lines) + "\n"


def parse_spectrum(text):
    rows = []
    lines = [ln for ln in text.splitlines() if ln.strip()]
    for ln in lines[1:]:
        re_s, im_s, label, copy = ln.split(",")
        rows.append((complex(float(re_s), float(im_s)), label, int(copy)))
    return rows


def run_job(spec, out_dir, base_dir="."):
    """Run the full reduction pipeline for a job and write artifacts.

    Returns a summary dict (blocks, residuals, spectrum, timings).
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    timings = {}

    with _timed(timings, "setup"):
        ctx = build_context(spec, base_dir=base_dir)

    if spec.check_equivariance:
        with _timed(timings, "equivariance_check"):
            verdict = is_equivariant(
                ctx.operator, ctx.representation,
                tol=spec.tolerance("equivariance", 1e-10))
            if not verdict.ok:
                from .errors import NotEquivariant
                raise NotEquivariant(
                    f"operator fails equivariance at generator "
                    f"{verdict.witness} (residual {verdict.residual:.3e})")

    with _timed(timings, "multiplicities"):
        mult = reduction.multiplicities(ctx.representation, ctx.table)
    with _timed(timings, "basis"):
        basis = reduction.symmetry_adapted_basis(
            ctx.representation, ctx.irreps, ctx.table,
            tol=spec.tolerance("rank", 1e-9))
    with _timed(timings, "block_diagonalize"):
        form = reduction.block_diagonalize(
            ctx.operator, basis, phi=None, check_equivariance=False)
    with _timed(timings, "spectrum"):
        spectrum_rows = []
        merged = []
        for i, block in enumerate(form.blocks):
            vals = mk.sort_spectrum(mk.eig_general(form.get_block(i)))
            merged.extend(vals)
            spectrum_rows.extend(
                (v, block.label, block.copy) for v in vals)
        merged = mk.sort_spectrum(merged)

    (out_dir / "blocks.txt").write_text(form.report())
    (out_dir / "spectrum.csv").write_text(emit_spectrum(spectrum_rows))
    timing_lines = ["stage,seconds"]
    timing_lines += [f"{stage},{seconds:.6f}"
                     for stage, seconds in timings.items()]
    (out_dir / "timing.csv").write_text("\n".join(timing_lines) + "\n")

    return {
        "multiplicities": mult.entries,
        "blocks": [(b.label, b.copy, b.offset, b.size) for b in form.blocks],
        "off_block_residual": form.off_block_residual,
        "copy_deviation": form.copy_deviation,
        "spectrum": merged,
        "timings": timings,
    }


# ---------------------------------------------------------------------------
# benchmark harness

def _symmetry_pass(problem, spec):
    """One timed symmetry-method pass: (T_p, T_b, spectrum)."""
    start = time.perf_counter()
    table = catalog_character_table(problem.group, problem.family)
    irreps = catalog_irreps(problem.group, problem.family,
                            backend=problem.backend)
    basis = reduction.symmetry_adapted_basis(
        problem.representation, irreps, table,
        tol=spec.tolerance("rank", 1e-9))
    t_p = time.perf_counter() - start

    start = time.perf_counter()
    form = reduction.block_diagonalize(
        problem.operator, basis, phi=None, check_equivariance=False)
    spectrum = reduction.block_spectrum(
        form,
        exploit_identical_copies=bool(
            spec.flags.get("exploit_identical_copies", False)),
        workers=spec.workers)
    t_b = time.perf_counter() - start
    return t_p, t_b, spectrum


def benchmark(spec, sizes, runs, out_dir, base_dir="."):
    """Timing table in the shape T_p / T_b / T_s / T_f / speedup.

    Requires a problem-generator job (the size must be steerable).  One
    warm-up run per size is excluded from the statistics.  Both the block
    path and the baseline use the general dense eigensolver, so the
    comparison is uniform (the baseline is not Hermitian-specialized even
    for Hermitian operators).
    """
    if spec.problem_doc is None:
        raise JobError("benchmark requires a problem-generator job")
    if runs < 1:
        raise JobError("benchmark needs at least one run")
    baseline = bool(spec.flags.get("baseline_comparison", True))
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    records = []  # (size, run, t_p, t_b, t_s, t_f, speedup)
    for size in sizes:
        doc = dict(spec.problem_doc)
        doc["n"] = size
        problem = build_problem(doc)

        _symmetry_pass(problem, spec)  # warm-up, excluded
        if baseline:
            mk.eig_general(problem.operator)

        for run in range(runs):
            t_p, t_b, _ = _symmetry_pass(problem, spec)
            t_s = t_p + t_b
            if baseline:
                start = time.perf_counter()
                mk.eig_general(problem.operator)
                t_f = time.perf_counter() - start
                speedup = t_f / t_s
            else:
                t_f = float("nan")
                speedup = float("nan")
            records.append((size, run, t_p, t_b, t_s, t_f, speedup))

    lines = ["size,run,T_p,T_b,T_s,T_f,speedup"]
    for rec in records:
        lines.append(",".join(str(x) for x in rec))
    aggregates = {}
    for size in sizes:
        rows = [r for r in records if r[0] == size]
        cols = list(zip(*rows))[2:]
        means = [statistics.fmean(c) for c in cols]
        stds = [statistics.stdev(c) if len(c) > 1 else 0.0 for c in cols]
        aggregates[size] = (means, stds)
        lines.append(",".join(["%s" % size, "mean"] + [str(x) for x in means]))
        lines.append(",".join(["%s" % size, "std"] + [str(x) for x in stds]))
    (out_dir / "timing.csv").write_text("\n".join(lines) + "\n")

    return TimingReport(sizes=list(sizes), runs=runs, records=records,
                        aggregates=aggregates, baseline=baseline)


class TimingReport:
    """Per-run timings plus mean/std aggregates for each size."""

    def __init__(self, sizes, runs, records, aggregates, baseline):
        self.sizes = sizes
        self.runs = runs
        self.records = records
        self.aggregates = aggregates
        self.baseline = baseline

    def table(self):
        header = (f"{'Grid':>10} {'T_p (s)':>16} {'T_b (s)':>16} "
                  f"{'T_s (s)':>16} {'T_f (s)':>16} {'Speedup':>16}")
        rows = [
            "# baseline uses the general dense eigensolver for all "
            "operators (uniform methodology)",
            header,
        ]
        for size in self.sizes:
            means, stds = self.aggregates[size]
            cells = [f"{size}x{size}"]
            for m, s in zip(means, stds):
                cells.append(f"{m:.2f} +/- {s:.2f}")
            rows.append(f"{cells[0]:>10} " + " ".join(
                f"{c:>16}" for c in cells[1:]))
        return "\n".join(rows)
