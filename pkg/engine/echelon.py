"""Dense modular Gauss-Jordan elimination on numpy int64 matrices.

All entries are residues mod a prime p < 2**24, so pairwise products and the
row sums used here stay exact in int64.
"""

import logging

import numpy as np

logger = logging.getLogger(__name__)


def as_matrix(rows, width: int, p: int) -> np.ndarray:
    """Coerce rows to a (k, width) int64 matrix reduced mod p."""
    m = np.asarray(rows, dtype=np.int64)
    if m.size == 0:
        return np.zeros((0, width), dtype=np.int64)
    return m.reshape(-1, width) % p


def rref(matrix: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """
    Reduced row echelon form over GF(p) with leftmost pivots.

    Args:
        matrix: 2-D integer matrix
        p: Prime modulus

    Returns:
        (rows, pivots): the nonzero RREF rows and their pivot column indices,
        pivots strictly increasing and every pivot entry equal to 1

    Example:
        >>> rref(np.array([[2, 4], [1, 3]]), 5)[1]
        [0, 1]
    """
    m = np.array(matrix, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError(f"rref expects a 2-D matrix, got shape {m.shape}")
    n_rows, n_cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        if inv != 1:
            m[r] = (m[r] * inv) % p
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(matrix: np.ndarray, p: int) -> int:
    if np.asarray(matrix).size == 0:
        return 0
    return len(rref(matrix, p)[1])


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Matrix product mod p, chunked so partial sums stay below 2**63."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[1]
    step = max(1, (1 << 62) // max(1, (p - 1) * (p - 1)))
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for start in range(0, inner, step):
        stop = min(inner, start + step)
        out = (out + a[:, start:stop] @ b[start:stop]) % p
    return out


def normal_form(vectors: np.ndarray, basis: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Reduce each vector modulo the row space of an RREF basis (pivot columns become 0)."""
    vectors = np.asarray(vectors, dtype=np.int64) % p
    if not pivots or vectors.size == 0:
        return vectors
    return (vectors - matmul(vectors[:, pivots], basis, p)) % p


def left_kernel(matrix: np.ndarray, p: int) -> np.ndarray:
    """
    Basis of {c : c @ matrix == 0 mod p} as rows.

    Row-reduces [matrix | I]; rows whose pivot falls in the identity block have a
    zero left part and their right parts span the kernel.
    """
    matrix = np.asarray(matrix, dtype=np.int64)
    n, m = matrix.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    augmented = np.hstack([matrix % p, np.eye(n, dtype=np.int64)])
    rows, pivots = rref(augmented, p)
    keep = [i for i, c in enumerate(pivots) if c >= m]
    return rows[keep, m:]


def intersect_rowspaces(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Zassenhaus intersection of two row spaces of equal width."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    width = a.shape[1]
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, width), dtype=np.int64)
    block = np.vstack([
        np.hstack([a, a]),
        np.hstack([b, np.zeros_like(b)]),
    ])
    rows, pivots = rref(block, p)
    keep = [i for i, c in enumerate(pivots) if c >= width]
    return rows[keep, width:]


def solve_rows(basis: np.ndarray, vectors: np.ndarray, p: int) -> np.ndarray:
    """
    Coefficients C with vectors == C @ basis mod p, for linearly independent basis rows.

    Raises:
        ValueError: If some vector is outside the row space of `basis`
    """
    basis = np.asarray(basis, dtype=np.int64) % p
    vectors = np.asarray(vectors, dtype=np.int64) % p
    k = basis.shape[0]
    if vectors.shape[0] == 0:
        return np.zeros((0, k), dtype=np.int64)
    if k == 0:
        if vectors.any():
            raise ValueError("vectors outside an empty row space")
        return np.zeros((vectors.shape[0], 0), dtype=np.int64)
    rows, pivots = rref(np.hstack([basis.T, vectors.T]), p)
    if pivots[:k] != list(range(k)):
        raise ValueError(f"expected {k} independent basis rows, found pivots {pivots}")
    if len(rows) > k:
        raise ValueError("vectors outside the row space of the basis")
    return rows[:k, k:].T.copy()
