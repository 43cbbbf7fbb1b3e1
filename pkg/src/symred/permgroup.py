"""Finite permutation groups from generators.

Elements are stored as images-of-points tuples (0-based internally; the
cycle-notation parser/printer at the I/O boundary is 1-based).  The
composition convention is fixed throughout the package:

    (g * h)(i) = g(h(i))        (right-to-left action)

Group enumeration is a plain breadth-first closure: desk-scale groups here
are at most order ~10^3, so simplicity wins over stabilizer chains.  The
element order is BFS discovery order, which makes every downstream basis
and block ordering reproducible across runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import DegreeMismatch, IndexOutOfRange, OrderCapExceeded

DEFAULT_ORDER_CAP = 20_000


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0, ..., degree-1}, stored as a tuple of images."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection: {self.images}")

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i]

    def __mul__(self, other):
        """(g * h)(i) = g(h(i))."""
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"degrees {self.degree} and {other.degree} differ")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def order(self):
        k, p = 1, self
        while not p.is_identity():
            p = p * self
            k += 1
        return k

    def fixed_points(self):
        return sum(1 for i, j in enumerate(self.images) if i == j)

    @staticmethod
    def identity(degree):
        return Permutation(tuple(range(degree)))

    @staticmethod
    def from_cycles(text, degree=None):
        """Parse 1-based cycle notation, e.g. "(1,2,3,4)(5,6)" or "()"."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+\s*(,\s*\d+\s*)*)?\))+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            body = body.strip()
            if body:
                cycles.append([int(x) - 1 for x in body.split(",")])
        points = [p for c in cycles for p in c]
        if len(points) != len(set(points)):
            raise ValueError(f"repeated point in cycles: {text!r}")
        deg = degree if degree is not None else (max(points) + 1 if points else 1)
        if points and max(points) >= deg:
            raise ValueError(f"point exceeds degree {deg}: {text!r}")
        images = list(range(deg))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return Permutation(tuple(images))

    @staticmethod
    def from_one_line(images_1based):
        """Parse a 1-based image array, e.g. [2,1,4,3]."""
        return Permutation(tuple(int(i) - 1 for i in images_1based))

    def to_cycles(self):
        """1-based cycle notation; identity prints as "()"."""
        seen, cycles = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                seen.add(start)
                continue
            cycle, p = [], start
            while p not in seen:
                seen.add(p)
                cycle.append(p)
                p = self.images[p]
            cycles.append("(" + ",".join(str(x + 1) for x in cycle) + ")")
        return "".join(cycles) or "()"

    def __repr__(self):
        return f"Permutation({self.to_cycles()!r})"


def parse_permutation(text, degree=None):
    """Accept cycle notation "(1,2)(3,4)" or a one-line image list "[2,1,4,3]"."""
    text = text.strip()
    if text.startswith("["):
        body = text.strip("[]")
        return Permutation.from_one_line(int(x) for x in body.split(","))
    return Permutation.from_cycles(text, degree)


@dataclass(frozen=True)
class ConjugacyClass:
    representative_index: int
    member_indices: tuple

    @property
    def size(self):
        return len(self.member_indices)


class FiniteGroup:
    """A finite permutation group, fully enumerated from its generators.

    Immutable after construction; safe for unrestricted concurrent reads.
    ``elements[0]`` is always the identity (empty word); every element
    carries a shortest-found word over the generator indices such that
    multiplying the generators in word order reproduces it.
    """

    def __init__(self, generators, order_cap=DEFAULT_ORDER_CAP):
        parsed = []
        for g in generators:
            if isinstance(g, Permutation):
                parsed.append((g, False))
            else:
                parsed.append((parse_permutation(g), True))
        if not parsed:
            raise ValueError("generator list must be non-empty")
        degrees = {g.degree for g, _ in parsed}
        if len(degrees) > 1:
            # Textual generators get their degree inferred from the largest
            # moved point; pad those to the common degree.  Explicit
            # Permutation objects must agree exactly.
            if any(not textual for _, textual in parsed):
                raise DegreeMismatch(
                    f"generator degrees differ: {sorted(degrees)}")
            deg = max(degrees)
            parsed = [
                (Permutation(g.images + tuple(range(g.degree, deg))), True)
                for g, _ in parsed
            ]
            degrees = {deg}
        generators = [g for g, _ in parsed]
        self.degree = degrees.pop()
        self.generators = list(generators)
        self._enumerate(order_cap)

    def _enumerate(self, order_cap):
        identity = Permutation.identity(self.degree)
        elements = [identity]
        words = [()]
        index = {identity.images: 0}
        frontier = [identity]
        while frontier:
            new_frontier = []
            for g in frontier:
                base_word = words[index[g.images]]
                for gi, gen in enumerate(self.generators):
                    h = g * gen
                    if h.images not in index:
                        index[h.images] = len(elements)
                        elements.append(h)
                        words.append(base_word + (gi,))
                        if len(elements) > order_cap:
                            raise OrderCapExceeded(
                                f"group order exceeds cap {order_cap}")
                        new_frontier.append(h)
            frontier = new_frontier
        self.elements = elements
        self.words = words
        self._index = index
        self.order = len(elements)
        self.inverse_index = [index[g.inverse().images] for g in elements]

    def index_of(self, perm):
        try:
            return self._index[perm.images]
        except KeyError:
            raise IndexOutOfRange(f"{perm!r} is not a group element") from None

    def __contains__(self, perm):
        return perm.images in self._index

    def element(self, i):
        if not 0 <= i < self.order:
            raise IndexOutOfRange(f"element index {i} out of range")
        return self.elements[i]

    def multiply(self, i, j):
        return self.index_of(self.element(i) * self.element(j))

    def inverse(self, i):
        if not 0 <= i < self.order:
            raise IndexOutOfRange(f"element index {i} out of range")
        return self.inverse_index[i]

    @cached_property
    def classes(self):
        """Conjugacy classes, ordered by minimal member index; the
        representative of each class is its minimal element index."""
        assigned = [None] * self.order
        classes = []
        for i in range(self.order):
            if assigned[i] is not None:
                continue
            g = self.elements[i]
            members = set()
            for h in self.elements:
                members.add(self.index_of(h * g * h.inverse()))
            for m in members:
                assigned[m] = len(classes)
            classes.append(ConjugacyClass(min(members), tuple(sorted(members))))
        return classes

    @cached_property
    def class_of(self):
        """Element index -> conjugacy class index."""
        out = [None] * self.order
        for ci, cls in enumerate(self.classes):
            for m in cls.member_indices:
                out[m] = ci
        return out

    @property
    def n_classes(self):
        return len(self.classes)

    def __len__(self):
        return self.order

    def __repr__(self):
        gens = ", ".join(g.to_cycles() for g in self.generators)
        return f"FiniteGroup(<{gens}>, order={self.order})"


def close(generators, order_cap=DEFAULT_ORDER_CAP):
    """Breadth-first closure of a generator list into a FiniteGroup."""
    return FiniteGroup(generators, order_cap=order_cap)
