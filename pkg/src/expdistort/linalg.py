"""Exact linear algebra over the Gaussian rationals.

Vectors are tuples of :class:`~expdistort.scalars.GaussianRational`;
matrices are 2-d numpy object arrays of the same.  Subspaces are kept in
reduced row echelon form, which makes equal subspaces compare equal.
"""

import numpy as np

from .exceptions import DimensionMismatch
from .scalars import ONE, ZERO, gq


def vec(values):
    return tuple(gq(v) for v in values)


def zero_vec(n):
    return (ZERO,) * n


def unit_vec(n, i):
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def vsub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x):
    c = gq(c)
    if not c:
        return (ZERO,) * len(x)
    return tuple(c * a for a in x)


def is_zero(x):
    return not any(x)


def rref(rows, ncols):
    """Reduced row echelon form.

    Returns ``(basis, pivots)`` where ``basis`` is a tuple of nonzero rows
    (tuples) with leading entry 1 at column ``pivots[r]``.
    """
    m = [list(r) for r in rows]
    for r in m:
        if len(r) != ncols:
            raise DimensionMismatch(f"row of length {len(r)}, expected {ncols}")
    pivots = []
    prow = 0
    nrows = len(m)
    for c in range(ncols):
        if prow >= nrows:
            break
        sel = None
        for r in range(prow, nrows):
            if m[r][c]:
                sel = r
                break
        if sel is None:
            continue
        m[prow], m[sel] = m[sel], m[prow]
        p = m[prow][c]
        if p != ONE:
            inv = ONE / p
            m[prow] = [inv * v if v else v for v in m[prow]]
        piv_row = m[prow]
        for r in range(nrows):
            if r != prow:
                f = m[r][c]
                if f:
                    row = m[r]
                    m[r] = [a - f * b if b else a for a, b in zip(row, piv_row)]
        pivots.append(c)
        prow += 1
    basis = tuple(tuple(gq(v) for v in m[r]) for r in range(prow))
    return basis, tuple(pivots)


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of ``{x : M x = 0}`` for ``M`` given by ``rows``."""
    basis, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for r, p in enumerate(pivots):
            x[p] = -basis[r][f]
        out.append(tuple(x))
    return out


def solve(columns, target):
    """Solve ``sum_j c_j * columns[j] = target``; ``None`` if inconsistent."""
    n = len(target)
    k = len(columns)
    rows = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    basis, pivots = rref(rows, k + 1)
    if k in pivots:
        return None
    x = [ZERO] * k
    for r, p in enumerate(pivots):
        x[p] = basis[r][k]
    return tuple(x)


class Subspace:
    """A subspace of ``C^n`` spanned by exact vectors, stored canonically."""

    __slots__ = ("n", "basis", "pivots")

    def __init__(self, n, vectors=()):
        self.n = n
        vs = [vec(v) for v in vectors]
        self.basis, self.pivots = rref(vs, n) if vs else ((), ())

    @classmethod
    def full(cls, n):
        return cls(n, [unit_vec(n, i) for i in range(n)])

    @classmethod
    def zero(cls, n):
        return cls(n)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __contains__(self, v):
        v = vec(v)
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} in C^{self.n}")
        r = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = r[p]
            if f:
                r = [a - f * b if b else a for a, b in zip(r, row)]
        return not any(r)

    def coordinates(self, v):
        """Coefficients of ``v`` on :attr:`basis`; raises if ``v`` is outside."""
        v = vec(v)
        coeffs = tuple(v[p] for p in self.pivots)
        recon = zero_vec(self.n)
        for c, row in zip(coeffs, self.basis):
            if c:
                recon = vadd(recon, vscale(c, row))
        if recon != v:
            raise ValueError("vector is not in the subspace")
        return coeffs

    def combine(self, coeffs):
        out = zero_vec(self.n)
        for c, row in zip(coeffs, self.basis):
            c = gq(c)
            if c:
                out = vadd(out, vscale(c, row))
        return out

    def __le__(self, other):
        return all(v in other for v in self.basis)

    def __ge__(self, other):
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __add__(self, other):
        _same_ambient(self, other)
        return Subspace(self.n, list(self.basis) + list(other.basis))

    def __and__(self, other):
        _same_ambient(self, other)
        if not self.basis or not other.basis:
            return Subspace(self.n)
        k = len(self.basis)
        cols = list(self.basis) + [vscale(-1, w) for w in other.basis]
        # rows of the system sum a_i u_i - sum b_j w_j = 0
        rows = [[c[i] for c in cols] for i in range(self.n)]
        kern = nullspace(rows, len(cols))
        return Subspace(self.n, [self.combine(x[:k]) for x in kern])

    def complement_in(self, ambient, prefer=()):
        """Canonical complement of ``self`` inside ``ambient``.

        Completes the echelon basis of ``self`` greedily, first with the
        vectors in ``prefer`` and then with the echelon basis of ``ambient``.
        """
        _same_ambient(self, ambient)
        chosen = []
        current = list(self.basis)
        r = len(current)
        for v in list(prefer) + list(ambient.basis):
            v = vec(v)
            if v not in ambient:
                raise ValueError("preferred vector lies outside the ambient subspace")
            if rank(current + [v], self.n) > r:
                current.append(v)
                chosen.append(v)
                r += 1
        return Subspace(self.n, chosen)

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(str(a) for a in b) + ")" for b in self.basis)
        return f"Subspace(n={self.n}, dim={self.dim}, [{rows}])"

    def to_json(self):
        return [[v.to_quad() for v in row] for row in self.basis]


def _same_ambient(a, b):
    if a.n != b.n:
        raise DimensionMismatch(f"subspaces of C^{a.n} and C^{b.n}")


# exact matrices -------------------------------------------------------------

def exact_matrix(rows):
    rows = [[gq(v) for v in r] for r in rows]
    m = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            m[i, j] = v
    return m


def exact_zeros(r, c=None):
    c = r if c is None else c
    m = np.empty((r, c), dtype=object)
    m.fill(ZERO)
    return m


def exact_identity(d):
    m = exact_zeros(d)
    for i in range(d):
        m[i, i] = ONE
    return m


def matmul(a, b):
    """Exact product skipping zero entries (our matrices are mostly sparse)."""
    n, k = a.shape
    k2, m = b.shape
    if k != k2:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    out = exact_zeros(n, m)
    brows = [[(j, b[t, j]) for j in range(m) if b[t, j]] for t in range(k)]
    for i in range(n):
        acc = [ZERO] * m
        for t in range(k):
            x = a[i, t]
            if not x:
                continue
            for j, y in brows[t]:
                acc[j] = acc[j] + x * y
        for j in range(m):
            out[i, j] = acc[j]
    return out


def mat_add(a, b):
    return a + b


def mat_scale(c, a):
    c = gq(c)
    if not c:
        return exact_zeros(*a.shape)
    return a * c


def is_zero_matrix(a):
    return not any(bool(v) for v in a.flat)


def mat_equal(a, b):
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def to_complex(a):
    """Convert an exact matrix to ``complex128`` (entries must fit a double)."""
    return np.array([complex(v) for v in a.flat], dtype=complex).reshape(a.shape)


def exact_inverse(a):
    d = a.shape[0]
    rows = [list(a[i]) + list(unit_vec(d, i)) for i in range(d)]
    basis, pivots = rref(rows, 2 * d)
    if pivots[:d] != tuple(range(d)) or len(pivots) < d:
        raise ZeroDivisionError("matrix is singular")
    return exact_matrix([row[d:] for row in basis[:d]])


def is_exact(a):
    return isinstance(a, np.ndarray) and a.dtype == object
