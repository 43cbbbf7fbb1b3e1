"""Young's seminormal representations of the symmetric group.

All matrices have exact rational entries.  Irreps are indexed by
partitions of n; the basis of an irrep is the list of standard Young
tableaux of the shape, in the deterministic order produced by
``standard_tableaux``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import matkernel as mk


def partitions(n):
    """Partitions of n in descending lexicographic order ([n] first)."""
    if n == 0:
        return [()]
    out = []

    def extend(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(largest, remaining), 0, -1):
            extend(remaining - part, part, prefix + [part])

    extend(n, n, [])
    return out


def standard_tableaux(shape):
    """All standard tableaux of a partition shape.

    A tableau is a tuple of row tuples holding 1..n, increasing along rows
    and down columns.  The output order is deterministic (backtracking
    fills the smallest admissible cell first).
    """
    n = sum(shape)
    out = []
    rows = [[] for _ in shape]

    def place(k):
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for ri, row in enumerate(rows):
            if len(row) >= shape[ri]:
                continue
            ci = len(row)
            if ri > 0 and len(rows[ri - 1]) <= ci:
                continue  # cell above must already be filled
            row.append(k)
            place(k + 1)
            row.pop()

    place(1)
    return out


def _position(tableau, value):
    for ri, row in enumerate(tableau):
        for ci, x in enumerate(row):
            if x == value:
                return ri, ci
    raise ValueError(f"{value} not in tableau")


def seminormal_transposition(shape, i, tableaux=None):
    """Matrix of the adjacent transposition s_i = (i, i+1), 1-based i."""
    tableaux = tableaux if tableaux is not None else standard_tableaux(shape)
    index = {t: ti for ti, t in enumerate(tableaux)}
    f = len(tableaux)
    D = mk.zeros(f, f, mk.EXACT)
    for ti, T in enumerate(tableaux):
        (r1, c1), (r2, c2) = _position(T, i), _position(T, i + 1)
        if r1 == r2:
            D[ti, ti] = Fraction(1)
            continue
        if c1 == c2:
            D[ti, ti] = Fraction(-1)
            continue
        d = (c2 - r2) - (c1 - r1)  # axial distance between i and i+1
        D[ti, ti] = Fraction(1, d)
        swapped = tuple(
            tuple(i + 1 if x == i else i if x == i + 1 else x for x in row)
            for row in T)
        tj = index[swapped]
        D[tj, ti] = Fraction(1) if d > 0 else 1 - Fraction(1, d * d)
    return D


def adjacent_word(perm):
    """Write a permutation as a product of adjacent transpositions.

    Returns indices [i1, ..., im] (1-based) with
    perm = s_{i1} * s_{i2} * ... * s_{im} under the package convention
    (g*h)(x) = g(h(x)).
    """
    line = list(perm.images)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(line) - 1):
            if line[i] > line[i + 1]:
                line[i], line[i + 1] = line[i + 1], line[i]
                word.append(i + 1)
                changed = True
    # line * s_{w1} * ... * s_{wm} = id  =>  perm = s_{wm} * ... * s_{w1}
    return word[::-1]


class SeminormalIrrep:
    """One seminormal irrep: evaluates D(g) for arbitrary permutations."""

    def __init__(self, shape):
        self.shape = shape
        self.tableaux = standard_tableaux(shape)
        self.degree = len(self.tableaux)
        n = sum(shape)
        self._adjacent = [
            seminormal_transposition(shape, i, self.tableaux)
            for i in range(1, n)
        ]

    def matrix(self, perm):
        D = mk.eye(self.degree, mk.EXACT)
        for i in adjacent_word(perm):
            D = D.dot(self._adjacent[i - 1])
        return D


def symmetric_irrep_images(n, group_generators):
    """Per-partition generator images for a symmetric group on n points.

    Returns list of (partition, degree, [D(g) for g in generators]).
    """
    out = []
    for shape in partitions(n):
        irrep = SeminormalIrrep(shape)
        images = [irrep.matrix(g) for g in group_generators]
        out.append((shape, irrep.degree, images))
    return out


def symmetric_character(shape, perm):
    """chi_lambda(perm) as an exact rational (an integer in lowest terms)."""
    return SeminormalIrrep(shape).matrix(perm).trace()
