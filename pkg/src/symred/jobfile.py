"""Job file schema (versioned JSON) and validation.

A job describes one reduction: group, representation, irrep source,
operator, scalar backend, tolerances and flags.  Operators above ~100x100
should be referenced by file path rather than written inline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import matkernel as mk
from . import problems
from .chartable import (
    CharacterTable,
    Family,
    IrrepSet,
    catalog_character_table,
    catalog_irreps,
    irreps_from_table,
    numeric_character_table,
)
from .errors import JobError, SymredError
from .permgroup import close
from .reps import natural_representation, regular_representation, representation

SCHEMA_VERSION = 1


@dataclass
class JobSpec:
    backend: str
    group_doc: dict | None
    representation_doc: dict
    irreps_doc: dict
    operator_doc: dict
    problem_doc: dict | None
    tolerances: dict
    flags: dict

    @property
    def check_equivariance(self):
        return bool(self.flags.get("check_equivariance", True))

    @property
    def seed(self):
        return int(self.flags.get("seed", 0))

    @property
    def runs(self):
        return int(self.flags.get("runs", 1))

    @property
    def workers(self):
        return self.flags.get("workers")

    def tolerance(self, name, default):
        return float(self.tolerances.get(name, default))


def load_job(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise JobError(f"cannot read job file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobError(f"job file {path} is not valid JSON: {exc}") from exc
    return job_from_dict(doc)


def job_from_dict(doc):
    if not isinstance(doc, dict):
        raise JobError("job document must be a JSON object")
    version = doc.get("version")
    if version != SCHEMA_VERSION:
        raise JobError(f"unsupported job schema version {version!r}")
    backend = doc.get("backend", "float")
    if backend not in (mk.EXACT, mk.FLOAT):
        raise JobError(f"backend must be 'exact' or 'float', got {backend!r}")
    problem_doc = doc.get("problem")
    group_doc = doc.get("group")
    if problem_doc is None and group_doc is None:
        raise JobError("job needs either a 'group' or a 'problem' section")
    spec = JobSpec(
        backend=backend,
        group_doc=group_doc,
        representation_doc=doc.get("representation", {}),
        irreps_doc=doc.get("irreps", {}),
        operator_doc=doc.get("operator", {}),
        problem_doc=problem_doc,
        tolerances=doc.get("tolerances", {}),
        flags=doc.get("flags", {}),
    )
    _validate(spec)
    return spec


def _validate(spec):
    if spec.problem_doc is not None:
        if "name" not in spec.problem_doc:
            raise JobError("problem section needs a 'name'")
        return
    gens = spec.group_doc.get("generators") if spec.group_doc else None
    if not gens:
        raise JobError("group section needs a non-empty 'generators' list")
    source = spec.representation_doc.get("source")
    if source not in ("natural", "regular", "explicit"):
        raise JobError(
            f"representation source must be natural/regular/explicit, "
            f"got {source!r}")
    if source == "explicit" and "matrices" not in spec.representation_doc:
        raise JobError("explicit representation needs 'matrices'")
    irr_source = spec.irreps_doc.get("source")
    if irr_source not in ("catalog", "file", "numeric"):
        raise JobError(
            f"irreps source must be catalog/file/numeric, got {irr_source!r}")
    if irr_source == "catalog" and "family" not in spec.irreps_doc:
        raise JobError("catalog irreps need a 'family'")
    if irr_source == "file" and "path" not in spec.irreps_doc:
        raise JobError("file irreps need a 'path'")
    op_source = spec.operator_doc.get("source")
    if op_source not in ("inline", "file"):
        raise JobError(f"operator source must be inline/file, got {op_source!r}")
    if op_source == "inline" and not (
            "matrix" in spec.operator_doc or "triplets" in spec.operator_doc):
        raise JobError("inline operator needs 'matrix' or 'triplets'")
    if op_source == "file" and "path" not in spec.operator_doc:
        raise JobError("file operator needs a 'path'")


# ---------------------------------------------------------------------------
# materialization

@dataclass
class JobContext:
    """Fully built inputs for the reduction pipeline."""

    spec: JobSpec
    group: object
    representation: object
    table: CharacterTable
    irreps: IrrepSet
    operator: object


def _build_operator(doc, backend, base_dir):
    if "triplets" in doc:
        if backend == mk.EXACT:
            raise JobError("sparse triplet operators require the float backend")
        shape = doc.get("shape")
        if not shape:
            raise JobError("triplet operator needs a 'shape'")
        return mk.sparse_from_triplets(doc["triplets"], tuple(shape))
    rows = doc["matrix"]
    try:
        return mk.matrix(rows, backend)
    except Exception as exc:
        raise JobError(f"bad operator matrix: {exc}") from exc


def _read_operator_file(path, backend):
    """Operator text file: dense row-major rows, or '(row, col, value)'
    triplet lines introduced by a 'sparse ROWS COLS' header."""
    try:
        lines = [ln.strip() for ln in Path(path).read_text().splitlines()
                 if ln.strip() and not ln.strip().startswith("#")]
    except OSError as exc:
        raise JobError(f"cannot read operator file {path}: {exc}") from exc
    if not lines:
        raise JobError(f"operator file {path} is empty")
    if lines[0].startswith("sparse"):
        if backend == mk.EXACT:
            raise JobError("sparse operators require the float backend")
        _, r, c = lines[0].split()
        triplets = []
        for ln in lines[1:]:
            row, col, val = ln.strip("()").split(",")
            triplets.append((int(row), int(col), val.strip()))
        return mk.sparse_from_triplets(triplets, (int(r), int(c)))
    rows = [ln.split() for ln in lines]
    return mk.matrix(rows, backend)


def build_context(spec, base_dir="."):
    """Materialize group, representation, table, irreps and operator."""
    base_dir = Path(base_dir)
    if spec.problem_doc is not None:
        problem = problems.build_problem(spec.problem_doc)
        if spec.backend != problem.backend:
            raise JobError(
                f"problem {spec.problem_doc['name']!r} runs on the "
                f"{problem.backend!r} backend, job requests {spec.backend!r}")
        irr_doc = spec.irreps_doc or {"source": "catalog"}
        family = (Family.from_dict(irr_doc["family"])
                  if "family" in irr_doc else problem.family)
        table = catalog_character_table(problem.group, family)
        irreps = catalog_irreps(problem.group, family, backend=spec.backend)
        return JobContext(spec, problem.group, problem.representation,
                          table, irreps, problem.operator)

    group = close(spec.group_doc["generators"])
    rep_doc = spec.representation_doc
    if rep_doc["source"] == "natural":
        rep = natural_representation(group, backend=spec.backend)
    elif rep_doc["source"] == "regular":
        rep = regular_representation(group, backend=spec.backend)
    else:
        rep = representation(group, rep_doc["matrices"], backend=spec.backend)

    irr_doc = spec.irreps_doc
    if irr_doc["source"] == "catalog":
        family = Family.from_dict(irr_doc["family"])
        table = catalog_character_table(group, family)
        irreps = catalog_irreps(group, family, backend=spec.backend)
    elif irr_doc["source"] == "file":
        irreps = IrrepSet.load(base_dir / irr_doc["path"], group=group)
        if irreps.backend != spec.backend:
            raise JobError(
                f"irrep file backend {irreps.backend!r} != job backend "
                f"{spec.backend!r}")
        table = irreps.character_table().verify()
    else:
        if spec.backend == mk.EXACT:
            raise JobError("numeric irreps require the float backend")
        table = numeric_character_table(group, seed=spec.seed)
        # matrices can be read off the table only when all irreps are
        # one-dimensional; otherwise catalog or user irreps are required
        irreps = irreps_from_table(table)

    op_doc = spec.operator_doc
    if op_doc["source"] == "inline":
        operator = _build_operator(op_doc, spec.backend, base_dir)
    else:
        operator = _read_operator_file(base_dir / op_doc["path"], spec.backend)

    shape = operator.shape
    if shape != (rep.degree, rep.degree):
        raise JobError(
            f"operator shape {shape} incompatible with representation "
            f"degree {rep.degree}")
    return JobContext(spec, group, rep, table, irreps, operator)
