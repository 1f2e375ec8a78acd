"""Dense linear algebra over F_p on numpy int64 arrays.

Matrices act on row vectors throughout: a subspace is the row space of a
matrix, and a linear map is x -> x @ M.
"""
import numpy as np

_FLOAT_EXACT = 2 ** 52


def as_mod(a, p):
    return np.asarray(a, dtype=np.int64) % p


def mm(a, b, p):
    """Exact product mod p; uses BLAS in float64 when the bound allows."""
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1] if a.ndim else 1
    if inner * (p - 1) ** 2 < _FLOAT_EXACT:
        out = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.rint(out).astype(np.int64) % p
    return np.matmul(a.astype(np.int64) % p, b.astype(np.int64) % p) % p


def inv_mod(x, p):
    x = int(x) % p
    if x == 0:
        raise ZeroDivisionError("zero pivot")
    return pow(x, p - 2, p)


def rref(a, p):
    """Reduced row echelon form. Returns (rows, pivot_columns) with zero rows dropped."""
    a = as_mod(a, p).copy()
    if a.ndim != 2:
        raise ValueError("rref expects a matrix")
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r, c:] = a[r, c:] * inv_mod(a[r, c], p) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(a, p):
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p):
    """Rows spanning {x : a @ x = 0}."""
    a = np.asarray(a)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    r, piv = rref(a, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for j, c in enumerate(piv):
            out[i, c] = (-r[j, f]) % p
    return out


def left_nullspace(a, p):
    """Rows spanning {x : x @ a = 0}."""
    return nullspace(np.asarray(a).T, p)


def inverse(a, p):
    a = as_mod(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref(aug, p)
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return r[:, n:]


def solve_rows(basis, vecs, p):
    """Coordinates c with c @ basis = vecs; raises if some row is not in the span."""
    space = RowSpace(basis, p)
    return space.coords(vecs)


class RowSpace:
    """A subspace of F_p^m held in reduced echelon form."""

    def __init__(self, rows, p, ncols=None):
        self.p = p
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim == 1:
            rows = rows.reshape(1, -1)
        if ncols is None:
            ncols = rows.shape[1]
        self.ncols = ncols
        if rows.shape[0] == 0:
            self.rows = np.zeros((0, ncols), dtype=np.int64)
            self.pivots = []
        else:
            self.rows, self.pivots = rref(rows, p)

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, vecs):
        """Remainders of vecs modulo the subspace (zero iff contained)."""
        v = as_mod(vecs, self.p)
        if not self.pivots:
            return v
        c = v[..., self.pivots]
        return (v - mm(c, self.rows, self.p)) % self.p

    def contains(self, vecs):
        r = self.reduce(vecs)
        return not r.any()

    def coords(self, vecs):
        v = as_mod(vecs, self.p)
        c = v[..., self.pivots]
        if self.pivots and ((mm(c, self.rows, self.p) - v) % self.p).any():
            raise ValueError("vector not in row space")
        if not self.pivots and v.any():
            raise ValueError("vector not in row space")
        return c

    def add(self, vec):
        """Insert one vector; returns True if the dimension grew."""
        v = self.reduce(vec).reshape(-1)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            return False
        c = nz[0]
        v = v * inv_mod(v[c], self.p) % self.p
        if self.pivots:
            col = self.rows[:, c].copy()
            hit = np.flatnonzero(col)
            if hit.size:
                self.rows[hit] = (self.rows[hit] - np.outer(col[hit], v)) % self.p
        self.rows = np.concatenate([self.rows, v.reshape(1, -1)], axis=0)
        self.pivots = list(self.pivots) + [int(c)]
        return True

    def sum(self, other):
        return RowSpace(np.concatenate([self.rows, other.rows]), self.p, self.ncols)

    def intersect(self, other):
        """Intersection via the kernel of [A; -B]."""
        if self.dim == 0 or other.dim == 0:
            return RowSpace(np.zeros((0, self.ncols)), self.p, self.ncols)
        stacked = np.concatenate([self.rows, (-other.rows) % self.p])
        k = left_nullspace(stacked, self.p)
        return RowSpace(mm(k[:, : self.dim], self.rows, self.p), self.p, self.ncols)


def pivot_solver(rows, p):
    """For independent rows B, columns P and matrix Q with x[P] @ Q = coords of x."""
    r, piv = rref(rows, p)
    if len(piv) != rows.shape[0]:
        raise ValueError("rows are linearly dependent")
    sub = as_mod(rows, p)[:, piv]
    return piv, inverse(sub, p)


def solve_left(a, b, p):
    """One c with c @ a = b, each row of b solved on its own; raises if none exists."""
    a = as_mod(a, p)
    b = as_mod(b, p)
    single = b.ndim == 1
    b = b.reshape(-1, a.shape[1])
    m = a.shape[0]
    out = np.zeros((b.shape[0], m), dtype=np.int64)
    for k, rhs in enumerate(b):
        r, piv = rref(np.concatenate([a.T, rhs.reshape(-1, 1)], axis=1), p)
        if piv and piv[-1] == m:
            raise ValueError("system has no solution")
        for row, c in enumerate(piv):
            out[k, c] = r[row, m]
    return out[0] if single else out
