"""Symmetry reduction of equivariant linear operators.

Given a finite permutation group, a matrix representation, and an
operator commuting with it, this package computes a symmetry-adapted
basis from character-theoretic projection operators and rewrites the
operator in block-diagonal form, so spectra can be computed block by
block.  Two scalar backends are available: exact rationals and complex
floating point (dense or sparse).
"""

from .chartable import (
    CharacterTable,
    Family,
    Irrep,
    IrrepSet,
    catalog_character_table,
    catalog_irreps,
    irreps_from_table,
    match_tables,
    numeric_character_table,
    user_irreps,
)
from .errors import JobError, SymredError
from .jobfile import build_context, job_from_dict, load_job
from .permgroup import FiniteGroup, Permutation, close, parse_permutation
from .problems import (
    gen_laplacian2d,
    gen_schrodinger2d,
    gen_water_gf,
    laplacian2d_exact_spectrum,
)
from .reduction import (
    BlockDiagonalForm,
    SymmetryAdaptedBasis,
    block_diagonalize,
    block_spectrum,
    group_average,
    isotypic_component,
    multiplicities,
    projector,
    quick_block_prevision,
    symmetry_adapted_basis,
)
from .reps import (
    Representation,
    character_of,
    direct_sum,
    is_equivariant,
    is_representation,
    natural_representation,
    regular_representation,
    representation,
    tensor_product,
)
from .runner import benchmark, run_job

__version__ = "0.1.0"

__all__ = [
    "BlockDiagonalForm",
    "CharacterTable",
    "Family",
    "FiniteGroup",
    "Irrep",
    "IrrepSet",
    "JobError",
    "Permutation",
    "Representation",
    "SymmetryAdaptedBasis",
    "SymredError",
    "benchmark",
    "block_diagonalize",
    "block_spectrum",
    "build_context",
    "catalog_character_table",
    "catalog_irreps",
    "character_of",
    "close",
    "direct_sum",
    "gen_laplacian2d",
    "gen_schrodinger2d",
    "gen_water_gf",
    "group_average",
    "irreps_from_table",
    "is_equivariant",
    "is_representation",
    "isotypic_component",
    "job_from_dict",
    "laplacian2d_exact_spectrum",
    "load_job",
    "match_tables",
    "multiplicities",
    "natural_representation",
    "numeric_character_table",
    "parse_permutation",
    "projector",
    "quick_block_prevision",
    "regular_representation",
    "representation",
    "run_job",
    "symmetry_adapted_basis",
    "tensor_product",
    "user_irreps",
]
