"""Character tables and irreducible representation matrices.

Exact catalog constructions cover the group families exercised here
(cyclic, dihedral, symmetric n <= 5, and direct products of these); a
generic numeric fallback computes character tables for arbitrary groups
via class-multiplication matrices.  Irrep *matrices* come from the
catalog or from the user; there is no generic numeric irrep algorithm.

Row labels follow Mulliken conventions where cataloged (A1/A2/B1/B2/E for
dihedral-type groups, with B1 carrying +1 on the declared reflection
generator); numeric tables use synthetic "irr_j" labels.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import matkernel as mk
from . import young
from .errors import (
    DegenerateRandomCombination,
    FamilyMismatch,
    IncompleteSet,
    NotARepresentation,
    NotIrreducible,
    VerificationFailed,
)
from .permgroup import FiniteGroup, close
from .reps import Representation, is_representation, representation

NUMERIC_CLASS_CAP = 64

# denominators n for which 2*cos(2*pi*k/n) is rational for every k
_RATIONAL_COS = {1, 2, 3, 4, 6}
# n for which both cos and sin of 2*pi*k/n are rational for every k
_RATIONAL_ROTATION = {1, 2, 4}


def _conj(x):
    return x.conjugate() if isinstance(x, complex) else x


@dataclass
class CharacterTable:
    """chi_j(g_k) over the conjugacy classes of a group.

    ``values[j][k]`` is the character of irrep j on class k; entries are
    Fractions when ``exact`` and complex floats otherwise.  Class order is
    the group's own class order.
    """

    group: FiniteGroup
    degrees: list
    values: list
    labels: list
    exact: bool

    @property
    def n_irreps(self):
        return len(self.values)

    @property
    def class_order(self):
        return [c.representative_index for c in self.group.classes]

    def row_inner(self, chi_a, chi_b):
        """(1/|G|) sum_k |C_k| chi_a(g_k) conj(chi_b(g_k))."""
        total = sum(
            cls.size * a * _conj(b)
            for cls, a, b in zip(self.group.classes, chi_a, chi_b))
        if self.exact and not isinstance(total, complex):
            return Fraction(total, self.group.order)
        return total / self.group.order

    def orthogonality_residual(self):
        """Max deviation of row orthogonality from the identity."""
        worst = 0.0
        for i in range(self.n_irreps):
            for j in range(self.n_irreps):
                inner = self.row_inner(self.values[i], self.values[j])
                target = 1 if i == j else 0
                worst = max(worst, abs(complex(inner) - target))
        return worst

    def verify(self, tol=1e-9):
        if self.n_irreps != len(self.group.classes):
            raise VerificationFailed("table is not square")
        if sum(d * d for d in self.degrees) != self.group.order:
            raise VerificationFailed("sum of squared degrees != |G|")
        residual = self.orthogonality_residual()
        if residual > (0 if self.exact else tol):
            raise VerificationFailed(
                f"row orthogonality residual {residual:.3e}")
        return self

    def row(self, label):
        return self.values[self.labels.index(label)]


@dataclass
class Irrep:
    """One irreducible representation with explicit matrices."""

    label: str
    rep: Representation

    @property
    def degree(self):
        return self.rep.degree

    def image(self, element_index):
        return self.rep.image(element_index)

    def entry(self, element_index, k, l):
        """d^j_{kl}(g), 1-based matrix indices as in the projector formula."""
        return mk.to_dense(self.rep.image(element_index))[k - 1, l - 1]

    def character(self):
        return self.rep.character()


@dataclass
class IrrepSet:
    """A (usually complete) set of irreps sharing one scalar backend."""

    group: FiniteGroup
    irreps: list
    complete: bool = True

    @property
    def backend(self):
        return self.irreps[0].rep.backend

    @property
    def labels(self):
        return [w.label for w in self.irreps]

    def by_label(self, label):
        for w in self.irreps:
            if w.label == label:
                return w
        raise KeyError(label)

    def character_table(self):
        """Table assembled from the traces of the stored matrices."""
        exact = self.backend == mk.EXACT
        values = [w.character() for w in self.irreps]
        if not exact:
            values = [[complex(x) for x in row] for row in values]
        return CharacterTable(
            group=self.group,
            degrees=[w.degree for w in self.irreps],
            values=values,
            labels=self.labels,
            exact=exact,
        )

    # -- serialization ------------------------------------------------------

    def save(self, path):
        doc = {
            "version": 1,
            "backend": self.backend,
            "group_generators": [g.to_cycles() for g in self.group.generators],
            "degree": self.group.degree,
            "complete": self.complete,
            "irreps": [
                {
                    "label": w.label,
                    "degree": w.degree,
                    "generator_images": [
                        [[mk.format_scalar(x) for x in row]
                         for row in mk.to_dense(A)]
                        for A in w.rep.generator_images
                    ],
                }
                for w in self.irreps
            ],
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)

    @staticmethod
    def load(path, group=None):
        with open(path) as fh:
            doc = json.load(fh)
        if group is None:
            from .permgroup import Permutation, parse_permutation
            gens = [parse_permutation(t, doc["degree"])
                    for t in doc["group_generators"]]
            group = close(gens)
        backend = doc["backend"]
        irreps = [
            Irrep(item["label"],
                  representation(group, item["generator_images"], backend=backend))
            for item in doc["irreps"]
        ]
        return IrrepSet(group, irreps, complete=doc.get("complete", True))


# ---------------------------------------------------------------------------
# family declarations

@dataclass(frozen=True)
class Family:
    """Declared structure of a group, steering the exact catalog.

    kind: "cyclic" | "dihedral" | "symmetric" | "product".
    Generator roles are indices into the group's generator list; product
    factors carry their own sub-family plus the generator indices that
    span the factor subgroup.
    """

    kind: str
    n: int = 0
    generator: int = 0      # cyclic
    rotation: int = 0       # dihedral
    reflection: int = 1     # dihedral
    factors: tuple = ()     # product: ((Family, (gen indices, ...)), ...)

    @staticmethod
    def from_dict(doc):
        kind = doc["kind"]
        if kind == "product":
            factors = tuple(
                (Family.from_dict(f), tuple(f.get("generators", ())))
                for f in doc["factors"])
            return Family(kind="product", factors=factors)
        return Family(
            kind=kind,
            n=int(doc.get("n", 0)),
            generator=int(doc.get("generator", 0)),
            rotation=int(doc.get("rotation", 0)),
            reflection=int(doc.get("reflection", 1)),
        )


def _powers_of(group, gen_index):
    """element index -> exponent map for a cyclic group; None on failure."""
    gen = group.generators[gen_index]
    mapping = {}
    p = gen
    k = 1
    mapping[0] = 0
    while not p.is_identity():
        mapping[group.index_of(p)] = k
        p = p * gen
        k += 1
    return mapping if len(mapping) == group.order else None


def _dihedral_structure(group, fam):
    """element index -> (k, m) with g = r^k s^m; raises FamilyMismatch."""
    n = fam.n
    if group.order != 2 * n:
        raise FamilyMismatch(f"|G|={group.order}, dihedral n={n} needs {2*n}")
    r = group.generators[fam.rotation]
    s = group.generators[fam.reflection]
    if r.order() != n or s.order() != 2:
        raise FamilyMismatch("rotation/reflection generator orders wrong")
    mapping = {}
    rk = group.elements[0] * group.elements[0]  # identity
    from .permgroup import Permutation
    rk = Permutation.identity(group.degree)
    for k in range(n):
        mapping[group.index_of(rk)] = (k, 0)
        mapping[group.index_of(rk * s)] = (k, 1)
        rk = r * rk
    if len(mapping) != group.order:
        raise FamilyMismatch("generators do not give a dihedral structure")
    return mapping


def _product_structure(group, fam):
    """Per-factor subgroup data for a direct product declaration."""
    if len(fam.factors) != 2:
        raise FamilyMismatch("product family needs exactly two factors")
    subs = []
    for sub_fam, gen_indices in fam.factors:
        gens = [group.generators[i] for i in gen_indices]
        sub = close(gens)
        subs.append((sub_fam, sub))
    (fam_a, sub_a), (fam_b, sub_b) = subs
    if sub_a.order * sub_b.order != group.order:
        raise FamilyMismatch(
            f"|A|*|B| = {sub_a.order * sub_b.order} != |G| = {group.order}")
    for a in sub_a.generators:
        for b in sub_b.generators:
            if (a * b).images != (b * a).images:
                raise FamilyMismatch("factors do not commute")
    decomposition = {}
    for ai, a in enumerate(sub_a.elements):
        for bi, b in enumerate(sub_b.elements):
            gi = group.index_of(a * b)
            if gi in decomposition:
                raise FamilyMismatch("factor products are not unique")
            decomposition[gi] = (ai, bi)
    return fam_a, sub_a, fam_b, sub_b, decomposition


def _dihedral_labels(n):
    labels = ["A1", "A2"]
    if n % 2 == 0:
        labels += ["B1", "B2"]
    two_dim = (n - 1) // 2 if n % 2 else n // 2 - 1
    if two_dim == 1:
        labels.append("E")
    else:
        labels += [f"E{h}" for h in range(1, two_dim + 1)]
    return labels


def _two_cos(h, k, n):
    """2*cos(2*pi*h*k/n), exact when rational."""
    if n in _RATIONAL_COS:
        return Fraction(round(2 * math.cos(2 * math.pi * h * k / n)))
    return 2 * math.cos(2 * math.pi * h * k / n)


def _dihedral_char_rows(n):
    """List of (label, function (k, m) -> value)."""
    rows = [("A1", lambda k, m: Fraction(1)),
            ("A2", lambda k, m: Fraction((-1) ** m))]
    if n % 2 == 0:
        rows += [("B1", lambda k, m: Fraction((-1) ** k)),
                 ("B2", lambda k, m: Fraction((-1) ** (k + m)))]
    labels = _dihedral_labels(n)
    two_dim = len(labels) - len(rows)
    for h in range(1, two_dim + 1):
        label = labels[len(rows)]

        def chi(k, m, h=h):
            return _two_cos(h, k, n) if m == 0 else (
                Fraction(0) if n in _RATIONAL_COS else 0.0)

        rows.append((label, chi))
    return rows


# ---------------------------------------------------------------------------
# catalog character tables

def catalog_character_table(group, family):
    """Exact character table from a declared family."""
    if isinstance(family, dict):
        family = Family.from_dict(family)
    builder = {
        "cyclic": _cyclic_table,
        "dihedral": _dihedral_table,
        "symmetric": _symmetric_table,
        "product": _product_table,
    }.get(family.kind)
    if builder is None:
        raise FamilyMismatch(f"unknown family kind {family.kind!r}")
    return builder(group, family).verify()


def _cyclic_table(group, fam):
    n = fam.n
    if group.order != n:
        raise FamilyMismatch(f"|G|={group.order}, cyclic n={n}")
    powers = _powers_of(group, fam.generator)
    if powers is None:
        raise FamilyMismatch("declared generator does not generate the group")
    exact = n <= 2
    reps_k = [powers[c.representative_index] for c in group.classes]
    values, labels = [], []
    for j in range(n):
        if exact:
            row = [Fraction((-1) ** (j * k) if n == 2 else 1) for k in reps_k]
        else:
            row = [cmath.exp(2j * cmath.pi * j * k / n) for k in reps_k]
        values.append(row)
        labels.append("A" if j == 0 else ("B" if n == 2 else f"irr_{j}"))
    return CharacterTable(group, [1] * n, values, labels, exact)


def _dihedral_table(group, fam):
    mapping = _dihedral_structure(group, fam)
    n = fam.n
    exact = n in _RATIONAL_COS
    reps_km = [mapping[c.representative_index] for c in group.classes]
    values, labels, degrees = [], [], []
    for label, chi in _dihedral_char_rows(n):
        row = [chi(k, m) for k, m in reps_km]
        if not exact:
            row = [float(x) for x in row]
        values.append(row)
        labels.append(label)
        degrees.append(1 if label[0] in "AB" else 2)
    return CharacterTable(group, degrees, values, labels, exact)


def _symmetric_table(group, fam):
    n = fam.n
    if group.order != math.factorial(n) or group.degree != n:
        raise FamilyMismatch(
            f"group is not the natural symmetric group on {n} points")
    values, labels, degrees = [], [], []
    for shape in young.partitions(n):
        irrep = young.SeminormalIrrep(shape)
        row = [irrep.matrix(group.elements[c.representative_index]).trace()
               for c in group.classes]
        values.append(row)
        labels.append("[" + ",".join(map(str, shape)) + "]")
        degrees.append(irrep.degree)
    return CharacterTable(group, degrees, values, labels, True)


def _product_labels(fam_a, sub_a, fam_b, sub_b, labels_a, labels_b):
    # Two commuting involutions: C2v-style Mulliken labels, with the first
    # factor playing sigma_v.  (s1, s2) = characters on the two factor
    # generators: (+,+)=A1, (-,-)=A2, (+,-)=B1 ... mapped below per row pair.
    return None


def _product_table(group, fam):
    fam_a, sub_a, fam_b, sub_b, decomposition = _product_structure(group, fam)
    table_a = catalog_character_table(sub_a, fam_a)
    table_b = catalog_character_table(sub_b, fam_b)
    exact = table_a.exact and table_b.exact
    reps_ab = [decomposition[c.representative_index] for c in group.classes]
    class_a, class_b = sub_a.class_of, sub_b.class_of
    values, labels, degrees = [], [], []
    c2_pair = sub_a.order == 2 and sub_b.order == 2
    for ja, row_a in enumerate(table_a.values):
        for jb, row_b in enumerate(table_b.values):
            row = [row_a[class_a[ai]] * row_b[class_b[bi]]
                   for ai, bi in reps_ab]
            values.append(row)
            degrees.append(table_a.degrees[ja] * table_b.degrees[jb])
            if c2_pair:
                # C2 x C2: factor generators play sigma_v / sigma_v'; their
                # product is C2.  Signs (+,+), (-,-), (+,-), (-,+) map to
                # the Mulliken labels A1, A2, B1, B2.
                sa, sb = ja == 0, jb == 0
                labels.append({(True, True): "A1", (False, False): "A2",
                               (True, False): "B1", (False, True): "B2"}[(sa, sb)])
            else:
                labels.append(f"{table_a.labels[ja]}*{table_b.labels[jb]}")
    if c2_pair:
        order = ["A1", "A2", "B1", "B2"]
        perm = sorted(range(4), key=lambda i: order.index(labels[i]))
        values = [values[i] for i in perm]
        labels = [labels[i] for i in perm]
        degrees = [degrees[i] for i in perm]
    return CharacterTable(group, degrees, values, labels, exact)


# ---------------------------------------------------------------------------
# catalog irreps

def catalog_irreps(group, family, backend=mk.EXACT):
    """Explicit irrep matrices for a declared family.

    Matrices are exact whenever the family admits rational entries
    (dihedral with 90-degree-multiple rotations, symmetric seminormal,
    C2 powers); otherwise float.  ``backend="float"`` forces the float
    tier regardless.
    """
    if isinstance(family, dict):
        family = Family.from_dict(family)
    builder = {
        "cyclic": _cyclic_irreps,
        "dihedral": _dihedral_irreps,
        "symmetric": _symmetric_irreps,
        "product": _product_irreps,
    }.get(family.kind)
    if builder is None:
        raise FamilyMismatch(f"unknown family kind {family.kind!r}")
    irreps = builder(group, family)
    if backend == mk.FLOAT:
        irreps = [
            Irrep(w.label, Representation(
                group, [mk.to_float(A) for A in w.rep.generator_images],
                check_invertible=False))
            for w in irreps
        ]
    elif any(w.rep.backend != mk.EXACT for w in irreps):
        raise FamilyMismatch(
            "family needs irrational matrix entries; use backend='float'")
    return IrrepSet(group, irreps)


def _make_irrep(group, label, images):
    return Irrep(label, Representation(group, images, check_invertible=False))


def _cyclic_irreps(group, fam):
    n = fam.n
    powers = _powers_of(group, fam.generator)
    if powers is None or group.order != n:
        raise FamilyMismatch("declared generator does not generate the group")
    gen_powers = [powers[group.index_of(g)] for g in group.generators]
    out = []
    for j in range(n):
        if n <= 2:
            images = [mk.exact_matrix([[(-1) ** (j * k) if n == 2 else 1]])
                      for k in gen_powers]
        else:
            images = [mk.float_matrix([[cmath.exp(2j * cmath.pi * j * k / n)]])
                      for k in gen_powers]
        out.append(_make_irrep(group, "A" if j == 0 else
                               ("B" if n == 2 else f"irr_{j}"), images))
    return out


def _dihedral_irreps(group, fam):
    mapping = _dihedral_structure(group, fam)
    n = fam.n
    exact = n in _RATIONAL_ROTATION
    gen_km = [mapping[group.index_of(g)] for g in group.generators]
    out = []
    for label, chi in _dihedral_char_rows(n):
        if label[0] in "AB":
            images = [np.array([[chi(k, m)]], dtype=object if n in _RATIONAL_COS
                               else float) for k, m in gen_km]
            if n in _RATIONAL_COS and not exact:
                images = [mk.to_float(A) for A in images]
            out.append(_make_irrep(group, label, images))
            continue
        h = 1 if label == "E" else int(label[1:])
        theta = 2 * math.pi * h / n
        if exact:
            c = Fraction(round(math.cos(theta)))
            s = Fraction(round(math.sin(theta)))
            R = mk.exact_matrix([[c, -s], [s, c]])
            S = mk.exact_matrix([[1, 0], [0, -1]])
        else:
            c, s = math.cos(theta), math.sin(theta)
            R = mk.float_matrix([[c, -s], [s, c]])
            S = mk.float_matrix([[1, 0], [0, -1]])
        images = []
        for k, m in gen_km:
            D = mk.eye(2, mk.EXACT if exact else mk.FLOAT)
            for _ in range(k):
                D = mk.matmul(D, R)
            if m:
                D = mk.matmul(D, S)
            images.append(D)
        out.append(_make_irrep(group, label, images))
    return out


def _symmetric_irreps(group, fam):
    n = fam.n
    if group.order != math.factorial(n) or group.degree != n:
        raise FamilyMismatch(
            f"group is not the natural symmetric group on {n} points")
    out = []
    for shape, _, images in young.symmetric_irrep_images(n, group.generators):
        label = "[" + ",".join(map(str, shape)) + "]"
        out.append(_make_irrep(group, label, images))
    return out


def _product_irreps(group, fam):
    fam_a, sub_a, fam_b, sub_b, decomposition = _product_structure(group, fam)
    irreps_a = _build_factor_irreps(sub_a, fam_a)
    irreps_b = _build_factor_irreps(sub_b, fam_b)
    table = _product_table(group, fam)
    gen_ab = [decomposition[group.index_of(g)] for g in group.generators]
    out = []
    idx = 0
    c2_pair = sub_a.order == 2 and sub_b.order == 2
    pairs = [(wa, wb) for wa in irreps_a for wb in irreps_b]
    if c2_pair:
        # keep the A1, A2, B1, B2 row order of the table
        keyed = {}
        for wa in irreps_a:
            for wb in irreps_b:
                sa, sb = wa.label == irreps_a[0].label, wb.label == irreps_b[0].label
                keyed[{(True, True): "A1", (False, False): "A2",
                       (True, False): "B1", (False, True): "B2"}[(sa, sb)]] = (wa, wb)
        pairs = [keyed[l] for l in ["A1", "A2", "B1", "B2"]]
    for wa, wb in pairs:
        exact = wa.rep.backend == mk.EXACT and wb.rep.backend == mk.EXACT
        images = []
        for ai, bi in gen_ab:
            A = mk.to_dense(wa.rep.image(ai))
            B = mk.to_dense(wb.rep.image(bi))
            if not exact:
                A, B = mk.to_float(A), mk.to_float(B)
            images.append(np.kron(A, B))
        out.append(_make_irrep(group, table.labels[idx], images))
        idx += 1
    return out


def _build_factor_irreps(sub, fam):
    return {
        "cyclic": _cyclic_irreps,
        "dihedral": _dihedral_irreps,
        "symmetric": _symmetric_irreps,
        "product": _product_irreps,
    }[fam.kind](sub, fam)


# ---------------------------------------------------------------------------
# user-supplied irreps

def user_irreps(group, generator_images_per_irrep, labels=None,
                declared_complete=True, backend=None):
    """Validate and wrap user-supplied irrep matrices.

    Each candidate must be an actual representation and have character
    norm 1; a declared-complete set must satisfy sum n_j^2 = |G|.
    """
    irreps = []
    for j, images in enumerate(generator_images_per_irrep):
        label = labels[j] if labels else f"irr_{j}"
        rep = representation(group, images, backend=backend)
        check = is_representation(rep)
        if not check.ok:
            raise NotARepresentation(
                f"irrep {label}: images violate multiplication at pair "
                f"{check.witness}")
        chi = rep.character()
        norm = sum(c.size * x * _conj(x if isinstance(x, complex) else x)
                   for c, x in zip(group.classes, chi))
        norm = norm / group.order
        if abs(complex(norm) - 1) > (0 if rep.backend == mk.EXACT else 1e-8):
            raise NotIrreducible(
                f"irrep {label}: character norm {complex(norm).real:g} != 1")
        irreps.append(Irrep(label, rep))
    if declared_complete:
        total = sum(w.degree ** 2 for w in irreps)
        if total != group.order:
            raise IncompleteSet(
                f"sum of squared degrees {total} != |G| = {group.order}")
    return IrrepSet(group, irreps, complete=declared_complete)


def irreps_from_table(table):
    """Degree-1 irreps read directly off a character table (abelian only)."""
    if any(d != 1 for d in table.degrees):
        raise FamilyMismatch(
            "irreps can be read off the table only when all degrees are 1; "
            "supply catalog or user irrep matrices")
    group = table.group
    class_of = group.class_of
    irreps = []
    for label, row in zip(table.labels, table.values):
        images = [np.array([[row[class_of[group.index_of(g)]]]],
                           dtype=object if table.exact else complex)
                  for g in group.generators]
        irreps.append(Irrep(label, Representation(
            group, images, check_invertible=False)))
    return IrrepSet(group, irreps)


# ---------------------------------------------------------------------------
# numeric character table (Burnside/Dixon class-matrix method)

def numeric_character_table(group, seed=0, max_attempts=5, tol=1e-9,
                            class_cap=NUMERIC_CLASS_CAP):
    """Character table from simultaneous diagonalization of class matrices.

    Builds the class-multiplication coefficients, diagonalizes a random
    real linear combination of the class matrices, and recovers the
    characters from the eigenvectors.  Values within 1e-6 of integers are
    snapped only when that does not worsen the orthogonality residual.
    """
    classes = group.classes
    k = len(classes)
    if k > class_cap:
        raise VerificationFailed(f"{k} classes exceeds cap {class_cap}")
    class_of = group.class_of
    # a[r, s, t]: number of x in C_r with x^-1 g_t in C_s
    a = np.zeros((k, k, k), dtype=float)
    for t, cls in enumerate(classes):
        g_t = group.elements[cls.representative_index]
        for xi in range(group.order):
            x = group.elements[xi]
            y = x.inverse() * g_t
            a[class_of[xi], class_of[group.index_of(y)], t] += 1

    sizes = np.array([c.size for c in classes], dtype=float)
    rng = np.random.default_rng(seed)
    for attempt in range(max_attempts):
        coeff = rng.standard_normal(k)
        M = np.tensordot(coeff, a, axes=(0, 0))  # sum_r c_r N_r, N_r[s,t]
        vals, vecs = np.linalg.eig(M)
        scale = max(np.abs(vals).max(), 1.0)
        gaps = np.abs(vals[:, None] - vals[None, :]) + np.eye(k) * scale
        if gaps.min() > 1e-8 * scale:
            break
    else:
        raise DegenerateRandomCombination(
            f"no separating combination in {max_attempts} attempts")

    rows, degrees = [], []
    for idx in range(k):
        u = vecs[:, idx]
        if abs(u[0]) < 1e-12:
            raise VerificationFailed("eigenvector vanishes at identity class")
        omega = u / u[0]
        denom = np.sum(np.abs(omega) ** 2 / sizes)
        n_j = math.sqrt(group.order / denom.real)
        chi = n_j * omega / sizes
        degrees.append(n_j)
        rows.append(chi)

    order = sorted(
        range(k),
        key=lambda i: (round(degrees[i], 6),
                       tuple((round(z.real, 8), round(z.imag, 8))
                             for z in rows[i])))
    rows = [rows[i] for i in order]
    degrees = [degrees[i] for i in order]

    int_degrees = [int(round(d)) for d in degrees]
    if any(abs(d - r) > 1e-6 for d, r in zip(degrees, int_degrees)):
        raise VerificationFailed("non-integer irrep degree")
    if sum(d * d for d in int_degrees) != group.order:
        raise VerificationFailed("sum of squared degrees != |G|")

    table = CharacterTable(
        group, int_degrees, [list(map(complex, r)) for r in rows],
        [f"irr_{j}" for j in range(k)], exact=False)
    residual = table.orthogonality_residual()

    snapped_rows = []
    for row in table.values:
        snapped_rows.append([
            complex(round(z.real))
            if (abs(z.real - round(z.real)) < 1e-6 and abs(z.imag) < 1e-6)
            else z
            for z in row
        ])
    snapped = CharacterTable(group, int_degrees, snapped_rows,
                             table.labels, exact=False)
    if snapped.orthogonality_residual() <= residual + 1e-12:
        table = snapped
        residual = snapped.orthogonality_residual()

    if residual > tol:
        raise VerificationFailed(f"orthogonality residual {residual:.3e}")
    return table


def match_tables(table_a, table_b, tol=1e-8):
    """Row permutation aligning two tables of the same group.

    Matches by degree then lexicographic character values; returns the
    list ``perm`` with table_a.values[j] ~ table_b.values[perm[j]], or
    None when no alignment exists within tolerance.
    """
    if table_a.n_irreps != table_b.n_irreps:
        return None

    def key(degrees, row, j):
        return (degrees[j],) + tuple(
            (round(complex(x).real, 6), round(complex(x).imag, 6))
            for x in row)

    used = set()
    perm = []
    for j in range(table_a.n_irreps):
        found = None
        for i in range(table_b.n_irreps):
            if i in used:
                continue
            if table_a.degrees[j] != table_b.degrees[i]:
                continue
            if all(abs(complex(x) - complex(y)) <= tol
                   for x, y in zip(table_a.values[j], table_b.values[i])):
                found = i
                break
        if found is None:
            return None
        used.add(found)
        perm.append(found)
    return perm
