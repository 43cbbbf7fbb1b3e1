"""Command-line front end: ``symred run | bench | check``.

Exit codes: 0 on success, 1 on a mathematical failure (non-equivariant
operator, rank defect, eigensolver breakdown, ...), 2 on malformed input
(unreadable or invalid job file, bad parameters).
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import jobfile, runner
from .errors import JobError, SymredError


def _apply_overrides(spec, backend, tol, no_equivariance_check, seed):
    if backend is not None:
        spec.backend = backend
    if tol is not None:
        spec.tolerances = dict(spec.tolerances)
        spec.tolerances.setdefault("rank", tol)
        spec.tolerances.setdefault("equivariance", tol)
    flags = dict(spec.flags)
    if no_equivariance_check:
        flags["check_equivariance"] = False
    if seed is not None:
        flags["seed"] = seed
    spec.flags = flags
    return spec


def _load(job_path):
    spec = jobfile.load_job(job_path)
    return spec, str(Path(job_path).parent)


backend_option = click.option(
    "--backend", type=click.Choice(["exact", "float"]), default=None,
    help="Override the job's scalar backend.")
tol_option = click.option(
    "--tol", type=float, default=None,
    help="Override rank/equivariance tolerances.")
equiv_option = click.option(
    "--no-equivariance-check", is_flag=True,
    help="Skip the operator commutation check.")
seed_option = click.option(
    "--seed", type=int, default=None, help="Seed for randomized steps.")
out_option = click.option(
    "--out", type=click.Path(file_okay=False), default="out",
    show_default=True, help="Output directory for artifacts.")


@click.group()
def main():
    """Block-diagonalize group-equivariant operators from job files."""


@main.command()
@click.argument("job", type=click.Path(exists=False))
@backend_option
@tol_option
@equiv_option
@seed_option
@out_option
def run(job, backend, tol, no_equivariance_check, seed, out):
    """Run the reduction pipeline and write blocks/spectrum/timing files."""
    try:
        spec, base_dir = _load(job)
        _apply_overrides(spec, backend, tol, no_equivariance_check, seed)
        summary = runner.run_job(spec, out, base_dir=base_dir)
    except JobError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(2)
    except SymredError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo("multiplicities: " + ", ".join(
        f"{label}:{c}" for label, n, c in summary["multiplicities"]))
    click.echo("blocks: " + ", ".join(
        f"{label}[{size}x{size}] copy {copy}"
        for label, copy, offset, size in summary["blocks"]))
    click.echo(f"off_block_residual: {summary['off_block_residual']}")
    click.echo(f"copy_deviation: {summary['copy_deviation']}")
    click.echo(f"artifacts written to {out}")


@main.command()
@click.argument("job", type=click.Path(exists=False))
@click.option("--sizes", default=None,
              help="Comma-separated problem sizes (default: the job's own).")
@click.option("--runs", type=int, default=3, show_default=True,
              help="Timed repetitions per size (one warm-up excluded).")
@seed_option
@out_option
def bench(job, sizes, runs, seed, out):
    """Time the block path against the full-matrix eigensolve."""
    try:
        spec, base_dir = _load(job)
        _apply_overrides(spec, None, None, False, seed)
        if sizes is not None:
            size_list = [int(s) for s in sizes.split(",") if s.strip()]
        elif spec.problem_doc and "n" in spec.problem_doc:
            size_list = [int(spec.problem_doc["n"])]
        else:
            raise JobError("no sizes given and the job fixes none")
        report = runner.benchmark(spec, size_list, runs, out,
                                  base_dir=base_dir)
    except JobError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(2)
    except SymredError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(report.table())
    click.echo(f"raw timings written to {out}/timing.csv")


@main.command()
@click.argument("job", type=click.Path(exists=False))
@backend_option
@tol_option
@seed_option
def check(job, backend, tol, seed):
    """Validate a job: build everything, verify equivariance, print the
    predicted block structure, but do not diagonalize."""
    try:
        spec, base_dir = _load(job)
        _apply_overrides(spec, backend, tol, False, seed)
        ctx = jobfile.build_context(spec, base_dir=base_dir)
        from .reduction import multiplicities, quick_block_prevision
        from .reps import is_equivariant
        verdict = is_equivariant(ctx.operator, ctx.representation,
                                 tol=spec.tolerance("equivariance", 1e-10))
        if not verdict.ok:
            raise SymredError(
                f"operator is not equivariant (generator {verdict.witness}, "
                f"residual {verdict.residual:.3e})")
        mult = multiplicities(ctx.representation, ctx.table)
        prevision = quick_block_prevision(ctx.representation, ctx.table)
    except JobError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(2)
    except SymredError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(f"group order: {len(ctx.group)}")
    click.echo(f"degree: {ctx.representation.degree}")
    click.echo("multiplicities: " + ", ".join(
        f"{label}:{c}" for label, n, c in mult.entries))
    click.echo("predicted blocks: " + ", ".join(
        f"{n} x ({c}x{c}) [{label}]" for c, n, label in prevision))
    click.echo("job ok")


if __name__ == "__main__":  # pragma: no cover
    main()
