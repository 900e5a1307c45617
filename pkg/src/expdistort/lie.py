"""Lie algebras given by exact structure constants."""

from itertools import combinations

from .exceptions import (AntisymmetryViolation, DimensionMismatch,
                         JacobiViolation, NotAnIdeal, NotASubalgebra)
from .linalg import Subspace, exact_zeros, is_zero, nullspace, unit_vec, vadd, vec
from .scalars import ZERO, gq


class LieAlgebra:
    """Finite-dimensional complex Lie algebra ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    Parameters
    ----------
    dim : int
    brackets : mapping
        ``(i, j) -> {k: scalar}``.  Entries not given are zero, except that
        when ``antisymmetrize`` is true a missing ``(j, i)`` entry is filled
        in as the negative of ``(i, j)``.
    names : sequence of str, optional
    """

    def __init__(self, dim, brackets=None, names=None, antisymmetrize=True):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = int(dim)
        self.names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(dim))
        if len(self.names) != self.dim:
            raise DimensionMismatch(f"{len(self.names)} basis names for dimension {dim}")
        table = {}
        for (i, j), entry in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"bracket index ({i}, {j}) out of range")
            row = {}
            for k, c in entry.items():
                if not 0 <= k < dim:
                    raise DimensionMismatch(f"bracket target {k} out of range")
                c = gq(c)
                if c:
                    row[int(k)] = c
            if row:
                table[(int(i), int(j))] = row
        if antisymmetrize:
            for (i, j), row in list(table.items()):
                if (j, i) not in table and i != j:
                    table[(j, i)] = {k: -c for k, c in row.items()}
        self._table = {key: tuple(sorted(row.items())) for key, row in table.items()}

    # basic arithmetic -------------------------------------------------------

    def structure_constant(self, i, j, k):
        return dict(self._table.get((i, j), ())).get(k, ZERO)

    def basis_vector(self, i):
        return unit_vec(self.dim, i)

    def bracket(self, x, y):
        """Exact bracket of two coordinate vectors."""
        x, y = vec(x), vec(y)
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"vectors of length {len(x)}, {len(y)} in a {self.dim}-dim algebra")
        out = [ZERO] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        table = self._table
        for i, a in xs:
            for j, b in ys:
                row = table.get((i, j))
                if row:
                    ab = a * b
                    for k, c in row:
                        out[k] = out[k] + ab * c
        return tuple(out)

    def ad(self, x):
        """Matrix of ``ad x``; column ``j`` holds ``[x, e_j]``."""
        x = vec(x)
        m = exact_zeros(self.dim)
        for j in range(self.dim):
            col = self.bracket(x, unit_vec(self.dim, j))
            for i, v in enumerate(col):
                m[i, j] = v
        return m

    def killing_matrix(self):
        """Gram matrix ``K[i, j] = tr(ad e_i ad e_j)``."""
        n = self.dim
        ads = [self.ad(unit_vec(n, i)) for i in range(n)]
        K = exact_zeros(n)
        for i in range(n):
            for j in range(i, n):
                s = ZERO
                A, B = ads[i], ads[j]
                for p in range(n):
                    for q in range(n):
                        a = A[p, q]
                        if a:
                            b = B[q, p]
                            if b:
                                s = s + a * b
                K[i, j] = K[j, i] = s
        return K

    # subspace helpers -------------------------------------------------------

    def full(self):
        return Subspace.full(self.dim)

    def zero(self):
        return Subspace.zero(self.dim)

    def span(self, vectors):
        return Subspace(self.dim, vectors)

    def bracket_span(self, U, V):
        """``span{[u, v] : u in U, v in V}``."""
        out = []
        for u in U.basis:
            for v in V.basis:
                w = self.bracket(u, v)
                if not is_zero(w):
                    out.append(w)
        return Subspace(self.dim, out)

    def is_subalgebra(self, S):
        return self.bracket_span(S, S) <= S

    def is_ideal(self, S, within=None):
        within = self.full() if within is None else within
        return self.bracket_span(within, S) <= S

    def require_subalgebra(self, S):
        if not self.is_subalgebra(S):
            raise NotASubalgebra(f"{S!r} is not closed under the bracket")

    def require_ideal(self, S, within=None):
        if not self.is_ideal(S, within):
            raise NotAnIdeal(f"{S!r} is not an ideal")

    def centre(self):
        rows = []
        n = self.dim
        # x in centre iff [x, e_j] = 0 for all j: linear conditions on x
        for j in range(n):
            cols = [self.bracket(unit_vec(n, i), unit_vec(n, j)) for i in range(n)]
            for k in range(n):
                rows.append([cols[i][k] for i in range(n)])
        return Subspace(n, nullspace(rows, n))

    def normalizer(self, S, within=None):
        """``{x in within : [x, S] <= S}``."""
        within = self.full() if within is None else within
        n = self.dim
        basis = within.basis
        if not basis:
            return Subspace(n)
        # condition: [sum a_i w_i, s] in S for each basis vector s of S
        # expressed as linear equations on the coefficients a_i via the
        # annihilator of S
        ann = _annihilator(S)
        rows = []
        for s in S.basis:
            images = [self.bracket(w, s) for w in basis]
            for f in ann:
                rows.append([sum((f[k] * img[k] for k in range(n)), ZERO) for img in images])
        coeffs = nullspace(rows, len(basis)) if rows else [unit_vec(len(basis), i) for i in range(len(basis))]
        return Subspace(n, [within.combine(c) for c in coeffs])

    # validation -------------------------------------------------------------

    def validate(self):
        """Check antisymmetry and Jacobi exactly; raise on the first violation."""
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                a = self.bracket(unit_vec(n, i), unit_vec(n, j))
                b = self.bracket(unit_vec(n, j), unit_vec(n, i))
                s = vadd(a, b)
                if not is_zero(s):
                    k = next(k for k, v in enumerate(s) if v)
                    raise AntisymmetryViolation(i, j, k)
        for i, j, k in combinations(range(n), 3):
            ei, ej, ek = unit_vec(n, i), unit_vec(n, j), unit_vec(n, k)
            total = vadd(vadd(self.bracket(ei, self.bracket(ej, ek)),
                              self.bracket(ej, self.bracket(ek, ei))),
                         self.bracket(ek, self.bracket(ei, ej)))
            if not is_zero(total):
                raise JacobiViolation(i, j, k)
        return True

    # derived algebras -------------------------------------------------------

    def restrict(self, S, names=None):
        """The subalgebra ``S`` as a Lie algebra on its echelon basis.

        Returns ``(algebra, embed)`` where ``embed(coords)`` maps
        coordinates back into this algebra.
        """
        self.require_subalgebra(S)
        k = S.dim
        brackets = {}
        for a in range(k):
            for b in range(k):
                w = self.bracket(S.basis[a], S.basis[b])
                if not is_zero(w):
                    brackets[(a, b)] = dict(enumerate(S.coordinates(w)))
        if names is None:
            names = tuple(_name_of(self, v) for v in S.basis)
        alg = LieAlgebra(k, brackets, names=names, antisymmetrize=False)
        return alg, S.combine

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, names={list(self.names)})"

    def brackets_json(self):
        out = {}
        for (i, j), row in sorted(self._table.items()):
            out[f"{i},{j}"] = {str(k): c.to_quad() for k, c in row}
        return out


def _annihilator(S):
    """Linear functionals (as vectors) vanishing exactly on ``S``."""
    if not S.basis:
        return [unit_vec(S.n, i) for i in range(S.n)]
    return nullspace([list(b) for b in S.basis], S.n)


def _name_of(alg, v):
    nz = [(i, c) for i, c in enumerate(v) if c]
    if len(nz) == 1 and nz[0][1] == 1:
        return alg.names[nz[0][0]]
    terms = []
    for i, c in nz:
        terms.append(alg.names[i] if c == 1 else f"({c}){alg.names[i]}")
    return "+".join(terms)


def quotient_algebra(alg, ideal):
    """``alg / ideal`` on a canonical complement basis.

    The complement is spanned by the standard basis vectors at the
    non-pivot columns of the ideal's echelon basis.  Returns
    ``(quotient, projection)`` where ``projection`` is the exact
    ``(n - k) x n`` matrix of the quotient map.
    """
    alg.require_ideal(ideal)
    n = alg.dim
    keep = [c for c in range(n) if c not in ideal.pivots]

    def project(x):
        x = list(vec(x))
        for row, p in zip(ideal.basis, ideal.pivots):
            f = x[p]
            if f:
                x = [a - f * b if b else a for a, b in zip(x, row)]
        return tuple(x[c] for c in keep)

    P = exact_zeros(len(keep), n)
    for j in range(n):
        col = project(unit_vec(n, j))
        for i, v in enumerate(col):
            P[i, j] = v
    brackets = {}
    for a, ca in enumerate(keep):
        for b, cb in enumerate(keep):
            w = project(alg.bracket(unit_vec(n, ca), unit_vec(n, cb)))
            if not is_zero(w):
                brackets[(a, b)] = dict(enumerate(w))
    quot = LieAlgebra(len(keep), brackets, names=[alg.names[c] for c in keep],
                      antisymmetrize=False)
    return quot, P


def apply_matrix(P, x):
    """Exact matrix-vector product for a projection matrix."""
    x = vec(x)
    out = []
    for i in range(P.shape[0]):
        s = ZERO
        for j, a in enumerate(x):
            if a:
                p = P[i, j]
                if p:
                    s = s + p * a
        out.append(s)
    return tuple(out)
