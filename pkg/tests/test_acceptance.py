"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``[criterion N] ... PASS``/``FAIL`` line (run
pytest with ``-s`` to see them live).
"""

import random
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from conftest import GROUP_FACTORIES
from symred import matkernel as mk
from symred.chartable import (
    catalog_character_table,
    catalog_irreps,
    match_tables,
    numeric_character_table,
)
from symred.cli import main as cli_main
from symred.jobfile import load_job
from symred.problems import (
    gen_laplacian2d,
    gen_schrodinger2d,
    gen_water_gf,
    laplacian2d_exact_spectrum,
)
from symred.reduction import (
    block_diagonalize,
    block_spectrum,
    group_average,
    multiplicities,
    projector,
    quick_block_prevision,
    symmetry_adapted_basis,
)
from symred.reps import (
    direct_sum,
    is_equivariant,
    natural_representation,
    regular_representation,
    tensor_product,
)
from symred.runner import benchmark

JOBS = Path(__file__).resolve().parents[1] / "jobs"


@contextmanager
def criterion(num, name):
    try:
        yield
    except Exception:
        print(f"[criterion {num}] {name}: FAIL")
        raise
    print(f"[criterion {num}] {name}: PASS")


def _residual_gate(value, backend):
    if backend == mk.EXACT:
        assert value == 0
    else:
        assert value < 1e-8


# ---------------------------------------------------------------------------

def test_criterion_1_water_gf_exact():
    with criterion(1, "water GF reproduction (exact)"):
        rng = random.Random(20260823)
        beta = [(2, 2, 0), (0, 0, 4), (2, -2, 0)]
        for _ in range(20):
            p = {name: Fraction(rng.randint(-20, 20), rng.randint(1, 12))
                 for name in ("f11", "f12", "f33", "g11", "g21", "g13",
                              "g33")}
            problem, F, G = gen_water_gf(**p)
            table = catalog_character_table(problem.group, problem.family)
            irreps = catalog_irreps(problem.group, problem.family)
            prevision = quick_block_prevision(problem.representation, table)
            assert prevision == [(2, 1, "A1"), (1, 1, "B1")]

            basis = symmetry_adapted_basis(problem.representation, irreps,
                                           table)
            # columnwise match with the reference basis up to scaling
            B = np.asarray(basis.matrix)
            for j, ref in enumerate(beta):
                col = B[:, j]
                anchor = next(i for i, r in enumerate(ref) if r != 0)
                scale = col[anchor] / Fraction(ref[anchor])
                assert scale != 0
                assert all(col[i] == scale * ref[i] for i in range(3))

            form = block_diagonalize(problem.operator, basis,
                                     phi=problem.representation)
            assert form.off_block_residual == 0
            two = form.get_block(0)
            one = form.get_block(1)
            f11, f12, f33 = p["f11"], p["f12"], p["f33"]
            g11, g12, g13, g33 = p["g11"], p["g21"], p["g13"], p["g33"]
            assert two[0, 0] == (f11 + f12) * (g11 + g12)
            assert two[0, 1] == 2 * (f11 + f12) * g13
            assert two[1, 0] == f33 * g13
            assert two[1, 1] == f33 * g33
            assert one[0, 0] == (f11 - f12) * (g11 - g12)


def test_criterion_2_d4_walkthrough():
    with criterion(2, "D4 ring operator walkthrough"):
        group, family = GROUP_FACTORIES["D4"]()
        phi = natural_representation(group)
        table = catalog_character_table(group, family)
        irreps = catalog_irreps(group, family)
        mult = multiplicities(phi, table)
        assert {lab: c for lab, _, c in mult.entries} == {
            "A1": 1, "A2": 0, "B1": 1, "B2": 0, "E": 1}

        M = mk.exact_matrix([[10, 2, 1, 2],
                             [2, 10, 2, 1],
                             [1, 2, 10, 2],
                             [2, 1, 2, 10]])
        basis = symmetry_adapted_basis(phi, irreps, table)
        form = block_diagonalize(M, basis, phi=phi)
        assert form.off_block_residual == 0

        block_vals = sorted(z.real for z in block_spectrum(form))
        oracle = sorted(np.linalg.eigvals(mk.to_float(M)).real)
        assert max(abs(a - b) for a, b in zip(block_vals, oracle)) < 1e-10
        assert block_vals == [7, 9, 9, 15]


def test_criterion_3_laplacian_spectrum():
    with criterion(3, "2D Laplacian spectrum agreement (n=10)"):
        problem = gen_laplacian2d(10)
        table = catalog_character_table(problem.group, problem.family)
        irreps = catalog_irreps(problem.group, problem.family,
                                backend=mk.FLOAT)
        basis = symmetry_adapted_basis(problem.representation, irreps, table)
        form = block_diagonalize(problem.operator, basis,
                                 phi=problem.representation)
        block_vals = np.array([z.real for z in block_spectrum(form)])
        block_vals.sort()
        full = np.sort(np.linalg.eigvals(
            problem.operator.toarray()).real)
        closed = np.array(laplacian2d_exact_spectrum(10))
        assert np.abs(block_vals - full).max() < 1e-8
        assert np.abs(block_vals - closed).max() < 1e-8
        assert np.abs(full - closed).max() < 1e-8


def test_criterion_4_schrodinger_and_benchmark(tmp_path):
    with criterion(4, "non-Hermitian Schrodinger agreement + benchmark"):
        problem = gen_schrodinger2d(30, v0=10.0)
        verdict = is_equivariant(problem.operator, problem.representation,
                                 tol=1e-12)
        assert verdict.ok and verdict.residual < 1e-12

        table = catalog_character_table(problem.group, problem.family)
        irreps = catalog_irreps(problem.group, problem.family,
                                backend=mk.FLOAT)
        mult = multiplicities(problem.representation, table)
        assert mult.total_dimension == 900

        basis = symmetry_adapted_basis(problem.representation, irreps, table)
        form = block_diagonalize(problem.operator, basis,
                                 phi=problem.representation)
        assert max(b.size for b in form.blocks) < 900

        block_vals = block_spectrum(form)
        full = mk.sort_spectrum(np.linalg.eigvals(
            problem.operator.toarray()))
        assert max(abs(a - b) for a, b in zip(block_vals, full)) < 1e-6

        spec = load_job(JOBS / "schrodinger30.json")
        report = benchmark(spec, sizes=[30], runs=3, out_dir=tmp_path)
        means, stds = report.aggregates[30]
        assert len(means) == 5 and len(stds) == 5  # T_p T_b T_s T_f speedup
        assert all(m > 0 for m in means[:4])
        text = report.table()
        for heading in ("T_p", "T_b", "T_s", "T_f", "Speedup", "+/-"):
            assert heading in text


def _grid_representations(group):
    nat = natural_representation(group, backend=mk.EXACT)
    reg = regular_representation(group)
    yield nat
    yield reg
    yield direct_sum(nat, nat)
    yield tensor_product(nat, nat)
    yield natural_representation(group, backend=mk.FLOAT)


def test_criterion_5_projector_algebra():
    with criterion(5, "projector algebra property suite"):
        for name in ("C2", "C2v", "S3", "D4"):
            group, family = GROUP_FACTORIES[name]()
            table = catalog_character_table(group, family)
            for phi in _grid_representations(group):
                backend = phi.backend
                irreps = catalog_irreps(group, family, backend=backend)
                mult = multiplicities(phi, table)
                total = mk.zeros(phi.degree, phi.degree, backend)
                for label in irreps.labels:
                    w = irreps.by_label(label)
                    P11 = projector(phi, irreps, label, 1, 1).matrix
                    P11 = mk.to_dense(P11)
                    _residual_gate(
                        mk.max_abs(mk.matmul(P11, P11) - P11), backend)
                    # rank of the k=1 projector equals the multiplicity
                    if backend == mk.EXACT:
                        rank = mk.rank_exact(P11)
                    else:
                        rank = len(mk.column_space_basis(P11, 1e-8)[0])
                    assert rank == mult[label]
                    for k in range(1, w.degree + 1):
                        total = total + mk.to_dense(
                            projector(phi, irreps, label, k, k).matrix)
                    if w.degree >= 2:
                        P21 = mk.to_dense(
                            projector(phi, irreps, label, 2, 1).matrix)
                        P12 = mk.to_dense(
                            projector(phi, irreps, label, 1, 2).matrix)
                        # P_21 P_11 = P_21, P_11 P_21 = 0, P_12 P_21 = P_11
                        _residual_gate(
                            mk.max_abs(mk.matmul(P21, P11) - P21), backend)
                        _residual_gate(
                            mk.max_abs(mk.matmul(P11, P21)), backend)
                        _residual_gate(
                            mk.max_abs(mk.matmul(P12, P21) - P11), backend)
                _residual_gate(
                    mk.max_abs(total - mk.eye(phi.degree, backend)), backend)


def test_criterion_6_multiplicity_modes_agree():
    with criterion(6, "class-sum and full-sum multiplicities identical"):
        for name in ("C2", "C2v", "S3", "D4"):
            group, family = GROUP_FACTORIES[name]()
            table = catalog_character_table(group, family)
            for phi in _grid_representations(group):
                a = multiplicities(phi, table, mode="class_sum")
                b = multiplicities(phi, table, mode="full_sum")
                assert a.entries == b.entries


def test_criterion_7_random_equivariant_fuzzing():
    with criterion(7, "random group-averaged operator fuzzing"):
        for name in ("D4", "S3"):
            group, family = GROUP_FACTORIES[name]()
            phi = natural_representation(group, backend=mk.FLOAT)
            table = catalog_character_table(group, family)
            irreps = catalog_irreps(group, family, backend=mk.FLOAT)
            basis = symmetry_adapted_basis(phi, irreps, table)
            rng = np.random.default_rng(42)
            for _ in range(50):
                R = (rng.standard_normal((phi.degree, phi.degree))
                     + 1j * rng.standard_normal((phi.degree, phi.degree)))
                M = group_average(phi, R)
                norm = mk.max_abs(M)
                form = block_diagonalize(M, basis, phi=None,
                                         check_equivariance=False)
                assert form.off_block_residual < 1e-9 * norm
                assert form.copy_deviation < 1e-8 * norm
                block_vals = block_spectrum(form)
                full = mk.sort_spectrum(np.linalg.eigvals(mk.to_dense(M)))
                scale = max(1.0, norm)
                assert max(abs(a - b) for a, b in
                           zip(block_vals, full)) < 1e-8 * scale


def test_criterion_8_character_table_integrity():
    with criterion(8, "character table integrity (catalog vs numeric)"):
        for name in ("C2", "C2v", "S3", "D4"):
            group, family = GROUP_FACTORIES[name]()
            catalog = catalog_character_table(group, family)
            numeric = numeric_character_table(group, seed=0)
            assert catalog.orthogonality_residual() == 0
            assert numeric.orthogonality_residual() < 1e-9
            assert match_tables(catalog, numeric) is not None
            assert sum(d * d for d in catalog.degrees) == len(group)


def test_criterion_9_deterministic_runs(tmp_path):
    with criterion(9, "byte-identical repeated runs (exact backend)"):
        runner = CliRunner()
        for job in ("water_gf.json", "d4_ring.json"):
            outputs = []
            for attempt in range(2):
                out = tmp_path / f"{job}.{attempt}"
                result = runner.invoke(cli_main, [
                    "run", str(JOBS / job), "--out", str(out)])
                assert result.exit_code == 0, result.output
                outputs.append({
                    name: (out / name).read_bytes()
                    for name in ("blocks.txt", "spectrum.csv")})
            assert outputs[0] == outputs[1]
