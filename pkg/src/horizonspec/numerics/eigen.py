"""Dense symmetric eigensolver: Householder reduction + implicit-shift QL."""
from __future__ import annotations

import math

import numpy as np

from ..errors import ConvergenceFailure

MAX_QL_SWEEPS = 60


class SymMatrix:
    """Dense real symmetric matrix.

    The constructor rejects anything that is not exactly symmetric; use
    :meth:`from_upper` to build one from an upper triangle.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not exactly symmetric")
        a.setflags(write=False)
        self._entries = a

    @classmethod
    def from_upper(cls, entries) -> "SymMatrix":
        a = np.asarray(entries, dtype=float)
        upper = np.triu(a)
        return cls(upper + np.triu(a, 1).T)

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dimension(self) -> int:
        return self._entries.shape[0]

    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.linalg.norm(self._entries))

    def __getitem__(self, idx):
        return self._entries[idx]

    def __repr__(self) -> str:
        return f"SymMatrix(dimension={self.dimension})"


def tridiagonalize(a: np.ndarray, want_q: bool = False):
    """Reduce symmetric ``a`` to tridiagonal form ``Q^T a Q = T``.

    Returns ``(d, e, q)`` with ``d`` the diagonal, ``e[i]`` the coupling
    between rows i and i+1 (length n-1) and ``q`` the orthogonal factor or
    None.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    q = np.eye(n) if want_q else None
    for k in range(n - 2):
        x = a[k + 1 :, k]
        sigma = float(np.dot(x[1:], x[1:]))
        if sigma == 0.0:
            continue
        alpha = -math.copysign(math.sqrt(x[0] * x[0] + sigma), x[0])
        v = x.copy()
        v[0] -= alpha
        tau = 2.0 / float(np.dot(v, v))

        sub = a[k + 1 :, k + 1 :]
        p = tau * (sub @ v)
        w = p - (0.5 * tau * float(np.dot(v, p))) * v
        sub -= np.outer(v, w) + np.outer(w, v)
        a[k + 1 :, k + 1 :] = sub
        a[k + 1, k] = a[k, k + 1] = alpha
        a[k + 2 :, k] = 0.0
        a[k, k + 2 :] = 0.0
        if q is not None:
            qs = q[:, k + 1 :]
            qs -= tau * np.outer(qs @ v, v)
    d = np.diag(a).copy()
    e = np.diag(a, 1).copy()
    return d, e, q


def tridiagonal_ql(d, e, z: np.ndarray | None = None) -> np.ndarray:
    """Eigenvalues of the symmetric tridiagonal matrix (d, e) by implicit QL.

    ``e`` holds the n-1 off-diagonal entries. If ``z`` is given its columns
    are rotated in place so that ``z`` ends up holding the eigenvectors of
    the matrix it originally reduced. Eigenvalues are returned unsorted.
    """
    d = [float(v) for v in d]
    n = len(d)
    e = [float(v) for v in e] + [0.0]
    if len(e) != n:
        raise ValueError("off-diagonal must have length n - 1")

    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == MAX_QL_SWEEPS:
                raise ConvergenceFailure(f"QL iteration did not converge for eigenvalue {l}")
            sweeps += 1

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if z is not None:
                    zi = z[:, i].copy()
                    zj = z[:, i + 1]
                    z[:, i] = c * zi - s * zj
                    z[:, i + 1] = s * zi + c * zj
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.array(d)


def sym_eigh(matrix: SymMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors as columns."""
    d, e, q = tridiagonalize(matrix.entries, want_q=True)
    vals = tridiagonal_ql(d, e, q)
    order = np.argsort(vals, kind="stable")
    return vals[order], q[:, order]


def sym_eigenvalues(matrix: SymMatrix) -> np.ndarray:
    """All eigenvalues of ``matrix`` in ascending order."""
    if matrix.dimension == 1:
        return matrix.entries[0].copy()
    d, e, _ = tridiagonalize(matrix.entries)
    return np.sort(tridiagonal_ql(d, e))
