"""Scalar and matrix substrate shared by all modules.

Two scalar backends are supported and never mixed inside one computation:

* ``"exact"``  -- arbitrary-precision rationals (``fractions.Fraction``)
  stored in numpy object arrays; all arithmetic is exact.
* ``"float"``  -- double precision complex, stored as dense numpy arrays
  or ``scipy.sparse`` CSR matrices.

Dense float factorizations and eigensolves delegate to numpy/scipy; the
exact tier is implemented here directly.
"""

from __future__ import annotations

import re
from fractions import Fraction

import numpy as np
import scipy.linalg
import scipy.sparse

from .errors import BackendMismatch, ConvergenceFailure, SingularMatrix

EXACT = "exact"
FLOAT = "float"

_COMPLEX_RE = re.compile(
    r"^\s*([+-]?[\d.eE+-]*?)\s*([+-]\s*[\d.eE]*?)?\s*[ij]\s*$"
)


# ---------------------------------------------------------------------------
# scalars

def parse_scalar(text, backend=None):
    """Parse a scalar literal: "3/4", "-2", "1.5", "2+3i", "0.5i".

    With ``backend="exact"`` only rational literals are accepted.
    """
    if isinstance(text, Fraction):
        value = text
    elif isinstance(text, complex):
        value = text
    elif isinstance(text, (int, np.integer)):
        value = Fraction(int(text))
    elif isinstance(text, (float, np.floating)):
        value = float(text)
    else:
        s = str(text).strip()
        if "i" in s or "j" in s:
            value = _parse_complex(s)
        elif "/" in s:
            value = Fraction(s)
        elif re.search(r"[.eE]", s):
            value = float(s)
        else:
            value = Fraction(int(s))
    if backend == EXACT:
        if isinstance(value, complex):
            raise BackendMismatch(f"complex literal {text!r} on the exact backend")
        if isinstance(value, float):
            value = Fraction(value).limit_denominator(10**12)
        return value
    if backend == FLOAT:
        return complex(value)
    return value


def _parse_complex(s):
    s = s.replace(" ", "")
    m = _COMPLEX_RE.match(s)
    if not m:
        raise ValueError(f"bad complex literal {s!r}")
    real, imag = m.group(1), m.group(2)
    if imag is None:  # pure imaginary: "3i", "-i"
        real, imag = "0", real
    if imag in ("", "+", "-"):
        imag += "1"
    return complex(float(real or 0), float(imag))


def format_scalar(x):
    """Inverse of parse_scalar, kept minimal and round-trip safe."""
    if isinstance(x, Fraction):
        return str(x)
    x = complex(x)
    if x.imag == 0:
        return repr(x.real)
    sign = "+" if x.imag >= 0 else "-"
    return f"{x.real!r}{sign}{abs(x.imag)!r}i"


# ---------------------------------------------------------------------------
# construction and conversion

def is_sparse(A):
    return scipy.sparse.issparse(A)


def backend_of(A):
    if is_sparse(A):
        return FLOAT
    return EXACT if np.asarray(A).dtype == object else FLOAT


def exact_matrix(rows):
    """Dense exact matrix from nested scalars/literals."""
    rows = list(rows)
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = parse_scalar(x, EXACT)
    return out


def float_matrix(rows):
    rows = list(rows)
    out = np.empty((len(rows), len(rows[0])), dtype=complex)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = parse_scalar(x, FLOAT)
    return out


def matrix(rows, backend):
    return exact_matrix(rows) if backend == EXACT else float_matrix(rows)


def zeros(m, n, backend=FLOAT):
    if backend == EXACT:
        out = np.empty((m, n), dtype=object)
        out[:] = Fraction(0)
        return out
    return np.zeros((m, n), dtype=complex)


def eye(n, backend=FLOAT):
    out = zeros(n, n, backend)
    one = Fraction(1) if backend == EXACT else 1.0
    for i in range(n):
        out[i, i] = one
    return out


def to_dense(A):
    return A.toarray() if is_sparse(A) else np.asarray(A)


def to_float(A):
    """Convert to the float backend (dense exact -> complex; sparse kept)."""
    if is_sparse(A):
        return A.astype(complex)
    A = np.asarray(A)
    if A.dtype == object:
        return np.array([[complex(x) for x in row] for row in A], dtype=complex)
    return A.astype(complex)


def sparse_from_triplets(triplets, shape):
    rows, cols, vals = [], [], []
    for r, c, v in triplets:
        rows.append(int(r))
        cols.append(int(c))
        vals.append(parse_scalar(v, FLOAT))
    return scipy.sparse.csr_matrix(
        (np.array(vals, dtype=complex), (rows, cols)), shape=shape
    )


def to_triplets(A):
    coo = scipy.sparse.coo_matrix(to_float(A))
    return [(int(r), int(c), complex(v)) for r, c, v in zip(coo.row, coo.col, coo.data)]


# ---------------------------------------------------------------------------
# arithmetic helpers that tolerate object arrays and sparse matrices

def matmul(A, B):
    if is_sparse(A) or is_sparse(B):
        return A @ B
    A, B = np.asarray(A), np.asarray(B)
    if A.dtype == object or B.dtype == object:
        return A.dot(B)
    return A @ B


def trace(A):
    if is_sparse(A):
        return complex(A.diagonal().sum())
    return np.asarray(A).trace()


def max_abs(A):
    if is_sparse(A):
        return abs(A).max() if A.nnz else 0.0
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    if A.dtype == object:
        return max(abs(x) for x in A.flat)
    return float(np.abs(A).max())


# ---------------------------------------------------------------------------
# exact elimination

def rref(A):
    """Reduced row echelon form over exact rationals.

    Returns (R, pivot_columns). A is not modified.
    """
    R = np.array(A, dtype=object, copy=True)
    m, n = R.shape
    pivots = []
    row = 0
    for col in range(n):
        pivot_row = next((r for r in range(row, m) if R[r, col] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != row:
            R[[row, pivot_row]] = R[[pivot_row, row]]
        R[row] = R[row] / R[row, col]
        for r in range(m):
            if r != row and R[r, col] != 0:
                R[r] = R[r] - R[r, col] * R[row]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return R, pivots


def rank_exact(A):
    return len(rref(A)[1])


def _solve_exact(A, B):
    n = A.shape[0]
    aug = np.concatenate([np.array(A, dtype=object, copy=True),
                          np.array(B, dtype=object, copy=True)], axis=1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r, col] != 0), None)
        if pivot_row is None:
            raise SingularMatrix(f"zero pivot in column {col}")
        if pivot_row != col:
            aug[[col, pivot_row]] = aug[[pivot_row, col]]
        aug[col] = aug[col] / aug[col, col]
        for r in range(n):
            if r != col and aug[r, col] != 0:
                aug[r] = aug[r] - aug[r, col] * aug[col]
    return aug[:, n:]


def solve(A, B):
    """Solve A X = B. Exact elimination on the exact backend, partial-pivoted
    LU on the float backend (never forms an explicit inverse)."""
    if backend_of(A) == EXACT:
        if backend_of(B) != EXACT:
            raise BackendMismatch("mixed exact/float operands in solve")
        return _solve_exact(A, B)
    Ad, Bd = to_dense(to_float(A)), to_dense(to_float(B))
    scale = max_abs(Ad)
    try:
        lu, piv = scipy.linalg.lu_factor(Ad)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover
        raise SingularMatrix(str(exc)) from exc
    pivot_floor = 1e-13 * (scale or 1.0)
    if np.abs(np.diag(lu)).min() < pivot_floor:
        raise SingularMatrix("pivot below 1e-13 * ||A||")
    return scipy.linalg.lu_solve((lu, piv), Bd)


def solve_with_residual(A, B):
    X = solve(A, B)
    if backend_of(A) == EXACT:
        return X, Fraction(0)
    residual = max_abs(matmul(to_float(A), X) - to_dense(to_float(B)))
    return X, residual


def column_space_basis(A, tol=0.0):
    """Pivot-column basis of the column space.

    Exact backend (tol must be 0): RREF pivot columns, returned as columns of
    the *original* A. Float backend: rank from singular values below
    tol * sigma_max, columns selected by pivoted QR, pivot indices sorted.
    Returns (pivot_indices, matrix whose columns are the basis).
    """
    if backend_of(A) == EXACT:
        if tol != 0:
            raise BackendMismatch("tol must be 0 on the exact backend")
        _, pivots = rref(A)
        return pivots, np.asarray(A)[:, pivots]
    if tol <= 0:
        raise BackendMismatch("tol must be positive on the float backend")
    Ad = to_dense(to_float(A))
    if max_abs(Ad) == 0.0:
        return [], Ad[:, :0]
    svals = scipy.linalg.svdvals(Ad)
    rank = int(np.sum(svals > tol * svals[0]))
    if rank == 0:
        return [], Ad[:, :0]
    _, _, perm = scipy.linalg.qr(Ad, mode="economic", pivoting=True)
    pivots = sorted(int(p) for p in perm[:rank])
    return pivots, Ad[:, pivots]


def eig_general(A):
    """All eigenvalues of a dense square matrix (general, non-Hermitian)."""
    Ad = to_dense(to_float(A))
    try:
        return np.linalg.eigvals(Ad)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def sort_spectrum(values, real_tol=1e-8):
    """Deterministic eigenvalue ordering: by real part, then imaginary.

    Real parts closer than ``real_tol`` (relative to the spectral scale)
    are treated as ties, so two independently computed spectra of the same
    operator sort identically even when real parts are degenerate up to
    rounding noise.
    """
    vals = sorted((complex(v) for v in values), key=lambda z: z.real)
    if not vals:
        return vals
    scale = max(1.0, max(abs(z) for z in vals))
    gap = real_tol * scale
    out = []
    cluster = [vals[0]]
    for z in vals[1:]:
        if z.real - cluster[-1].real < gap:
            cluster.append(z)
        else:
            out.extend(sorted(cluster, key=lambda w: w.imag))
            cluster = [z]
    out.extend(sorted(cluster, key=lambda w: w.imag))
    return out
