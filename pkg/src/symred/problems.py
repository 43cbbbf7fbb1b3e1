"""Builtin problem generators: 2D Laplacian, non-Hermitian Schrodinger
operator, and the water-molecule GF secular problem.

Grid points are indexed row-major; the square-symmetry action on an n x n
grid is derived from coordinate maps ((i,j) -> (j, n-1-i) for the quarter
turn, (i,j) -> (j,i) for the diagonal reflection).  Odd and even n are
both supported (the center point is fixed when n is odd).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse

from . import matkernel as mk
from .chartable import Family
from .errors import JobError
from .permgroup import FiniteGroup, Permutation
from .reps import Representation, natural_representation


@dataclass
class Problem:
    """Everything a job needs: operator, group, representation, family."""

    operator: object
    group: FiniteGroup
    representation: Representation
    family: Family
    backend: str


def _grid_group(n):
    size = n * n

    def idx(i, j):
        return i * n + j

    rotation = [0] * size
    reflection = [0] * size
    for i in range(n):
        for j in range(n):
            rotation[idx(i, j)] = idx(j, n - 1 - i)
            reflection[idx(i, j)] = idx(j, i)
    return FiniteGroup([Permutation(tuple(rotation)),
                        Permutation(tuple(reflection))])


def _laplacian_matrix(n):
    """5-point stencil with Dirichlet boundary: diagonal 4, neighbors -1."""
    size = n * n
    main = np.full(size, 4.0)
    rows, cols, vals = [], [], []
    for i in range(n):
        for j in range(n):
            p = i * n + j
            for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                qi, qj = i + di, j + dj
                if 0 <= qi < n and 0 <= qj < n:
                    rows.append(p)
                    cols.append(qi * n + qj)
                    vals.append(-1.0)
    A = scipy.sparse.csr_matrix(
        (np.array(vals), (rows, cols)), shape=(size, size), dtype=complex)
    return A + scipy.sparse.diags(main.astype(complex), format="csr")


def gen_laplacian2d(n):
    """Dirichlet Laplacian on an n x n grid with its square-symmetry action."""
    if n < 2:
        raise JobError("laplacian2d needs n >= 2")
    group = _grid_group(n)
    rep = natural_representation(group, backend=mk.FLOAT)
    return Problem(
        operator=_laplacian_matrix(n),
        group=group,
        representation=rep,
        family=Family(kind="dihedral", n=4),
        backend=mk.FLOAT,
    )


def laplacian2d_exact_spectrum(n):
    """Closed-form Dirichlet eigenvalues 4 - 2cos(p pi/(n+1)) - 2cos(q pi/(n+1))."""
    angles = np.pi * np.arange(1, n + 1) / (n + 1)
    c = 2 * np.cos(angles)
    return sorted(float(4 - a - b) for a in c for b in c)


def gen_schrodinger2d(n, v0=10.0, potential="quadratic"):
    """H = -laplacian + i V(x, y) with a square-symmetric potential.

    The grid is centered (x, y run over a symmetric range) so the
    potential is invariant under the quarter-turn and reflections.
    ``potential`` selects V0 (x^2 + y^2) or V0 (x^4 + y^4).
    """
    if n < 2:
        raise JobError("schrodinger2d needs n >= 2")
    if potential not in ("quadratic", "quartic"):
        raise JobError(f"unknown potential {potential!r}")
    base = gen_laplacian2d(n)
    center = (n - 1) / 2.0
    coords = np.arange(n) - center
    X, Y = np.meshgrid(coords, coords, indexing="ij")
    if potential == "quadratic":
        V = v0 * (X ** 2 + Y ** 2)
    else:
        V = v0 * (X ** 4 + Y ** 4)
    H = base.operator + scipy.sparse.diags(
        1j * V.reshape(-1).astype(complex), format="csr")
    return Problem(
        operator=H,
        group=base.group,
        representation=base.representation,
        family=base.family,
        backend=mk.FLOAT,
    )


WATER_DEFAULTS = {
    "f11": Fraction(1), "f12": Fraction(1, 10), "f33": Fraction(3, 4),
    "g11": Fraction(21, 20), "g21": Fraction(-1, 16), "g13": Fraction(-3, 40),
    "g33": Fraction(11, 10),
}


def gen_water_gf(f11=None, f12=None, f33=None, g11=None, g21=None,
                 g13=None, g33=None):
    """Water-molecule GF secular problem under the C2v atom action.

    Returns (problem, F, G); the problem's operator is F*G.  The two-atom
    swap acts on the three internal coordinates; the parameter g21 plays
    the role of the symmetric off-diagonal G entry.
    """
    params = dict(WATER_DEFAULTS)
    for name, value in (("f11", f11), ("f12", f12), ("f33", f33),
                        ("g11", g11), ("g21", g21), ("g13", g13),
                        ("g33", g33)):
        if value is not None:
            params[name] = mk.parse_scalar(value, mk.EXACT)
    p = params
    F = mk.exact_matrix([[p["f11"], p["f12"], 0],
                         [p["f12"], p["f11"], 0],
                         [0, 0, p["f33"]]])
    G = mk.exact_matrix([[p["g11"], p["g21"], p["g13"]],
                         [p["g21"], p["g11"], p["g13"]],
                         [p["g13"], p["g13"], p["g33"]]])
    # abstract C2v on 4 points; the atom action is non-faithful
    group = FiniteGroup([Permutation.from_one_line([2, 1, 4, 3]),
                         Permutation.from_one_line([1, 2, 4, 3]),
                         Permutation.from_one_line([2, 1, 3, 4])])
    identity3 = mk.eye(3, mk.EXACT)
    swap3 = mk.exact_matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    rep = Representation(group, [swap3, identity3, swap3])
    family = Family(kind="product", factors=(
        (Family(kind="cyclic", n=2), (1,)),
        (Family(kind="cyclic", n=2), (2,)),
    ))
    problem = Problem(
        operator=F.dot(G),
        group=group,
        representation=rep,
        family=family,
        backend=mk.EXACT,
    )
    return problem, F, G


GENERATORS = {
    "laplacian2d": lambda doc: gen_laplacian2d(int(doc["n"])),
    "schrodinger2d": lambda doc: gen_schrodinger2d(
        int(doc["n"]), float(doc.get("v0", 10.0)),
        doc.get("potential", "quadratic")),
    "water_gf": lambda doc: gen_water_gf(
        **{k: v for k, v in doc.items() if k in WATER_DEFAULTS})[0],
}


def build_problem(doc):
    """Instantiate a generator from its job-file description."""
    name = doc.get("name")
    if name not in GENERATORS:
        raise JobError(f"unknown problem generator {name!r}")
    try:
        return GENERATORS[name](doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise JobError(f"bad parameters for problem {name!r}: {exc}") from exc
