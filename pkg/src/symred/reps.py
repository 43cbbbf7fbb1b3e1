"""Linear representations of a finite group over a scalar backend.

A Representation stores only the generator images; the image of an
arbitrary element is computed by multiplying generator images along the
element's stored generator word, and memoized.  The cache is guarded by a
lock so concurrent read-through population is safe.

Non-faithful representations are allowed throughout (the group object is
always the abstract permutation group; the images need not be injective).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np
import scipy.sparse

from . import matkernel as mk
from .errors import (
    DimensionMismatch,
    GroupMismatch,
    OrderCapExceeded,
    SingularImage,
)

# Below this degree float-backend matrices stay dense; at or above they are
# stored compressed sparse row.  Permutation images are always sparse on the
# float backend.
SPARSE_THRESHOLD = 64

REGULAR_ORDER_CAP = 4096


@dataclass(frozen=True)
class CheckResult:
    """Boolean verdict plus a certificate naming the first failure."""

    ok: bool
    witness: object = None
    residual: float = 0.0

    def __bool__(self):
        return self.ok


class Representation:
    """A map from a FiniteGroup into invertible matrices."""

    def __init__(self, group, generator_images, check_invertible=True):
        if len(generator_images) != len(group.generators):
            raise DimensionMismatch(
                f"{len(generator_images)} images for "
                f"{len(group.generators)} generators")
        images = list(generator_images)
        dims = set()
        for A in images:
            shape = A.shape
            if shape[0] != shape[1]:
                raise DimensionMismatch(f"non-square image {shape}")
            dims.add(shape[0])
        if len(dims) > 1:
            raise DimensionMismatch(f"image dimensions differ: {sorted(dims)}")
        self.group = group
        self.degree = dims.pop() if dims else 0
        self.generator_images = images
        backends = {mk.backend_of(A) for A in images}
        if len(backends) > 1:
            raise DimensionMismatch("generator images mix scalar backends")
        self.backend = backends.pop() if backends else mk.FLOAT
        if check_invertible:
            self._check_invertible()
        self._cache = {0: self._identity()}
        self._lock = threading.Lock()

    def _identity(self):
        if self.backend == mk.FLOAT and any(
                mk.is_sparse(A) for A in self.generator_images):
            return scipy.sparse.identity(self.degree, dtype=complex, format="csr")
        return mk.eye(self.degree, self.backend)

    def _check_invertible(self):
        for gi, A in enumerate(self.generator_images):
            if mk.is_sparse(A) or self.degree > 512:
                continue  # large/sparse images: trust the caller
            if self.backend == mk.EXACT:
                if mk.rank_exact(A) != self.degree:
                    raise SingularImage(f"generator {gi} image is singular")
            else:
                s = np.linalg.svd(mk.to_dense(A), compute_uv=False)
                if s.size and s[-1] <= 1e-13 * max(s[0], 1.0):
                    raise SingularImage(f"generator {gi} image is singular")

    def image(self, element_index):
        """Matrix of the element, computed along its generator word."""
        with self._lock:
            hit = self._cache.get(element_index)
        if hit is not None:
            return hit
        word = self.group.words[element_index]
        out = self._identity()
        for gi in word:
            out = mk.matmul(out, self.generator_images[gi])
        with self._lock:
            return self._cache.setdefault(element_index, out)

    def character(self):
        """Trace at the conjugacy-class representatives only."""
        return [mk.trace(self.image(c.representative_index))
                for c in self.group.classes]

    def character_all_elements(self):
        """Trace at every element (the honest full-group character)."""
        return [mk.trace(self.image(i)) for i in range(self.group.order)]

    def __repr__(self):
        return (f"Representation(degree={self.degree}, "
                f"backend={self.backend!r}, group={self.group!r})")


def representation(group, generator_images, backend=None):
    """Build a representation from per-generator matrices.

    Matrix entries may be scalars or literals ("3/4", "1+2i"); pass
    ``backend`` to force a scalar tier, otherwise exact rationals are used
    when every entry parses as rational.
    """
    parsed = []
    for A in generator_images:
        if isinstance(A, np.ndarray) or mk.is_sparse(A):
            parsed.append(A)
            continue
        if backend is None:
            try:
                parsed.append(mk.exact_matrix(A))
                continue
            except Exception:
                parsed.append(mk.float_matrix(A))
                continue
        parsed.append(mk.matrix(A, backend))
    if backend is not None:
        parsed = [_cast(A, backend) for A in parsed]
    return Representation(group, parsed)


def _cast(A, backend):
    if backend == mk.FLOAT:
        return mk.to_float(A)
    if mk.backend_of(A) == mk.EXACT:
        return A
    raise DimensionMismatch("cannot cast float matrix to the exact backend")


def _perm_matrix(perm, backend, sparse):
    n = perm.degree
    if sparse:
        rows = np.fromiter((perm(i) for i in range(n)), dtype=int, count=n)
        cols = np.arange(n)
        data = np.ones(n, dtype=complex)
        return scipy.sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
    out = mk.zeros(n, n, backend)
    one = mk.parse_scalar(1, backend)
    for i in range(n):
        out[perm(i), i] = one
    return out


def natural_representation(group, backend=None):
    """Permutation representation on the points the group acts on.

    Column convention matches the product rule: phi(g) e_i = e_{g(i)}, so
    phi(g)phi(h) = phi(g*h).  On the float backend the matrices are sparse.
    """
    if backend is None:
        backend = mk.EXACT if group.degree < SPARSE_THRESHOLD else mk.FLOAT
    sparse = backend == mk.FLOAT
    images = [_perm_matrix(g, backend, sparse) for g in group.generators]
    return Representation(group, images, check_invertible=False)


def regular_representation(group, backend=mk.EXACT, order_cap=REGULAR_ORDER_CAP):
    """Left multiplication of the group on its own element basis."""
    if group.order > order_cap:
        raise OrderCapExceeded(
            f"regular representation of order {group.order} exceeds cap {order_cap}")
    sparse = backend == mk.FLOAT
    images = []
    for gen in group.generators:
        # phi(g) e_h = e_{g h}
        perm_images = tuple(
            group.index_of(gen * h) for h in group.elements)
        from .permgroup import Permutation
        images.append(_perm_matrix(Permutation(perm_images), backend, sparse))
    return Representation(group, images, check_invertible=False)


def _same_group(phi, psi):
    if phi.group is psi.group:
        return
    if (phi.group.degree == psi.group.degree
            and phi.group.elements == psi.group.elements):
        return
    raise GroupMismatch("representations are over different groups")


def direct_sum(phi, psi):
    """Block-diagonal stacking; characters add."""
    _same_group(phi, psi)
    if phi.backend != psi.backend:
        raise GroupMismatch("representations use different scalar backends")
    images = []
    for A, B in zip(phi.generator_images, psi.generator_images):
        if mk.is_sparse(A) or mk.is_sparse(B):
            images.append(scipy.sparse.block_diag(
                [mk.to_float(A), mk.to_float(B)], format="csr"))
        else:
            n, m = A.shape[0], B.shape[0]
            out = mk.zeros(n + m, n + m, phi.backend)
            out[:n, :n] = A
            out[n:, n:] = B
            images.append(out)
    return Representation(phi.group, images, check_invertible=False)


def tensor_product(phi, psi):
    """Kronecker product; characters multiply."""
    _same_group(phi, psi)
    if phi.backend != psi.backend:
        raise GroupMismatch("representations use different scalar backends")
    images = []
    for A, B in zip(phi.generator_images, psi.generator_images):
        if mk.is_sparse(A) or mk.is_sparse(B):
            images.append(scipy.sparse.kron(
                mk.to_float(A), mk.to_float(B), format="csr"))
        else:
            images.append(np.kron(A, B))
    return Representation(phi.group, images, check_invertible=False)


def is_representation(phi, exhaustive=None, tol=1e-10):
    """Homomorphism check with a certificate naming the first failing pair.

    All (g, h) pairs are checked when |G| <= 200 (or when forced via
    ``exhaustive=True``); above that, all (generator, element) pairs.
    Exact backend requires equality; float allows a relative residual.
    """
    G = phi.group
    if exhaustive is None:
        exhaustive = G.order <= 200
    scale = max(mk.max_abs(phi.image(0)), 1.0)
    if exhaustive:
        pairs = ((i, j) for i in range(G.order) for j in range(G.order))
    else:
        gen_idx = [G.index_of(g) for g in G.generators]
        pairs = ((i, j) for i in gen_idx for j in range(G.order))
    worst = 0.0
    for i, j in pairs:
        lhs = mk.matmul(phi.image(i), phi.image(j))
        rhs = phi.image(G.multiply(i, j))
        residual = mk.max_abs(lhs - rhs)
        if phi.backend == mk.EXACT:
            if residual != 0:
                return CheckResult(False, witness=(i, j), residual=float(residual))
        elif residual > tol * scale:
            return CheckResult(False, witness=(i, j), residual=float(residual))
        worst = max(worst, float(residual))
    return CheckResult(True, residual=worst)


def is_equivariant(M, phi, exhaustive=False, tol=1e-10):
    """True iff M commutes with every generator image (sufficient, since the
    generators generate G).  ``exhaustive=True`` checks all elements instead;
    retained as a debug mode."""
    if M.shape != (phi.degree, phi.degree):
        raise DimensionMismatch(
            f"operator {M.shape} vs representation degree {phi.degree}")
    scale = mk.max_abs(M)
    indices = (range(phi.group.order) if exhaustive
               else [phi.group.index_of(g) for g in phi.group.generators])
    worst = 0.0
    for i in indices:
        A = phi.image(i)
        diff = mk.matmul(M, A) - mk.matmul(A, M)
        residual = mk.max_abs(diff)
        if phi.backend == mk.EXACT and mk.backend_of(M) == mk.EXACT:
            if residual != 0:
                return CheckResult(False, witness=i, residual=float(residual))
        elif residual > tol * max(float(scale), 1e-300):
            return CheckResult(False, witness=i, residual=float(residual))
        worst = max(worst, float(residual))
    return CheckResult(True, residual=worst)


def character_of(phi):
    """Character vector over conjugacy classes (trace at representatives)."""
    return phi.character()
