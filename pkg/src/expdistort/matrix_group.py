"""Matrix realisations of the group: representations, exp/log, norms, samples.

Group elements built only from nilpotent directions stay exact (object
arrays of Gaussian rationals).  Anything touching a non-nilpotent direction
is carried in double precision as ``exp(log_scale) * matrix`` with the
matrix normalised to unit max-entry, so that ``log ||g||`` is available far
beyond the range where ``||g||`` itself would overflow.
"""

import math
from fractions import Fraction

import numpy as np
import scipy.linalg

from .exceptions import (DimensionMismatch, LogBranchFailure,
                         NotAHomomorphism, NotFaithful, NotNilpotentMatrix,
                         NotUnipotent)
from .linalg import (exact_identity, exact_inverse, exact_matrix, exact_zeros,
                     is_exact, is_zero_matrix, mat_add, mat_equal, mat_scale,
                     matmul, rank, solve, to_complex, unit_vec, vec)
from .scalars import ONE, GaussianRational, gq


class MatrixRep:
    """Linear map from the algebra to ``d x d`` matrices, extended linearly.

    Parameters
    ----------
    algebra : LieAlgebra
    matrices : sequence of 2-d arrays, one per basis vector (exact entries)
    faithful : bool or None
        Declared faithfulness; checked by :func:`validate_rep` when true.
    """

    def __init__(self, algebra, matrices, faithful=None):
        if len(matrices) != algebra.dim:
            raise DimensionMismatch(f"{len(matrices)} matrices for a {algebra.dim}-dim algebra")
        mats = []
        for m in matrices:
            m = m if is_exact(m) else exact_matrix(m)
            mats.append(m)
        degrees = {m.shape for m in mats}
        if len(degrees) > 1 or any(s[0] != s[1] for s in degrees):
            raise DimensionMismatch(f"inconsistent matrix shapes {sorted(degrees)}")
        self.algebra = algebra
        self.matrices = tuple(mats)
        self.degree = mats[0].shape[0] if mats else 0
        self.declared_faithful = faithful
        self._letters = {}

    def rho(self, x):
        x = vec(x)
        out = exact_zeros(self.degree)
        for c, m in zip(x, self.matrices):
            if c:
                out = mat_add(out, mat_scale(c, m))
        return out

    def rho_complex(self, x):
        return to_complex(self.rho(x))

    def is_faithful(self):
        rows = [list(m.flat) for m in self.matrices]
        return rank(rows, self.degree ** 2) == self.algebra.dim if rows else True

    def preimage(self, M, basis=None):
        """Exact coordinates ``c`` with ``rho(sum c_j basis_j) = M``, or ``None``."""
        basis = [unit_vec(self.algebra.dim, i) for i in range(self.algebra.dim)] if basis is None else list(basis)
        cols = [tuple(self.rho(b).flat) for b in basis]
        return solve(cols, tuple(M.flat)) if cols else (() if is_zero_matrix(M) else None)

    def nilpotency_index(self, x):
        """Smallest ``k`` with ``rho(x)^k = 0`` (``None`` if not nilpotent)."""
        X = self.rho(x)
        return nilpotency_index(X)

    def identity(self):
        return GroupElement(exact_identity(self.degree), word=(), rep=self)

    # letters ------------------------------------------------------------

    def _letter_data(self, v):
        v = vec(v)
        data = self._letters.get(v)
        if data is None:
            X = self.rho(v)
            idx = nilpotency_index(X)
            if idx is not None:
                powers = [exact_identity(self.degree)]
                P = exact_identity(self.degree)
                for k in range(1, idx):
                    P = mat_scale(GaussianRational(1) / k, matmul(P, X))
                    powers.append(P)
                # sparse table: entry (i, j) of exp(tX) is sum_k c_k t^k
                table = {}
                for k, P in enumerate(powers):
                    for (i, j), c in np.ndenumerate(P):
                        if c:
                            table.setdefault((i, j), []).append((k, c))
                data = ("exact", (len(powers), tuple(table.items())))
            else:
                data = ("numeric", to_complex(X))
            self._letters[v] = data
        return data

    def letter(self, v, t):
        """``exp(t * rho(v))`` as a :class:`GroupElement`."""
        t = gq(t)
        kind, payload = self._letter_data(v)
        word = ((vec(v), t),)
        if kind == "exact":
            count, table = payload
            tpow = [ONE]
            for _ in range(count - 1):
                tpow.append(tpow[-1] * t)
            out = exact_zeros(self.degree)
            for (i, j), terms in table:
                acc = terms[0][1] * tpow[terms[0][0]]
                for k, c in terms[1:]:
                    acc = acc + c * tpow[k]
                out[i, j] = acc
            return GroupElement(out, word=word, rep=self)
        m, s = exp_scaled(complex(t) * payload)
        return GroupElement(m, log_scale=s, word=word, rep=self)

    def element(self, word):
        """Product of letters ``exp(t_i rho(v_i))`` from left to right."""
        if not word:
            return self.identity()
        g = None
        for v, t in word:
            x = self.letter(v, t)
            g = x if g is None else g * x
        return g

    def element_from_matrix(self, M):
        """Wrap an exact unipotent matrix of the image group as an element."""
        M = M if is_exact(M) else exact_matrix(M)
        X = log_unipotent(M)
        coords = self.preimage(X)
        if coords is None:
            raise ValueError("matrix is not in the image of the representation")
        return GroupElement(M, word=((coords, ONE),), rep=self)


def validate_rep(rep):
    """Exact homomorphism check on all basis pairs, plus faithfulness if declared."""
    alg = rep.algebra
    n = alg.dim
    for i in range(n):
        for j in range(i + 1, n):
            A, B = rep.matrices[i], rep.matrices[j]
            comm = mat_add(matmul(A, B), mat_scale(-1, matmul(B, A)))
            target = rep.rho(alg.bracket(unit_vec(n, i), unit_vec(n, j)))
            if not mat_equal(comm, target):
                raise NotAHomomorphism(i, j)
    if rep.declared_faithful and not rep.is_faithful():
        raise NotFaithful("representation has a nonzero kernel")
    return True


# exact exp / log --------------------------------------------------------

def nilpotency_index(X):
    d = X.shape[0]
    if d == 0:
        return 1
    P = exact_identity(d)
    for k in range(1, d + 1):
        P = matmul(P, X)
        if is_zero_matrix(P):
            return k
    return None


def exp_nilpotent(X):
    """Exact ``exp`` of a nilpotent matrix (finite series)."""
    X = X if is_exact(X) else exact_matrix(X)
    d = X.shape[0]
    out = exact_identity(d)
    P = exact_identity(d)
    for k in range(1, d + 1):
        P = mat_scale(GaussianRational(1) / k, matmul(P, X))
        if is_zero_matrix(P):
            return out
        out = mat_add(out, P)
    raise NotNilpotentMatrix("X^d != 0")


def log_unipotent(g):
    """Exact logarithm of a unipotent matrix (finite Mercator series)."""
    g = g if is_exact(g) else exact_matrix(g)
    d = g.shape[0]
    N = mat_add(g, mat_scale(-1, exact_identity(d)))
    out = exact_zeros(d)
    P = exact_identity(d)
    for k in range(1, d + 1):
        P = matmul(P, N)
        if is_zero_matrix(P):
            return out
        coeff = GaussianRational(Fraction((-1) ** (k + 1), k))
        out = mat_add(out, mat_scale(coeff, P))
    if not is_zero_matrix(matmul(P, N)):
        raise NotUnipotent("(g - I)^d != 0")
    return out


def log_unipotent_numeric(g, tol=1e-9):
    """Mercator series in floating point for an (approximately) unipotent ``g``."""
    g = np.asarray(g, dtype=complex)
    d = g.shape[0]
    N = g - np.eye(d)
    scale = max(np.abs(N).max(), 1.0)
    out = np.zeros_like(N)
    P = np.eye(d, dtype=complex)
    for k in range(1, d + 1):
        P = P @ N
        out = out + ((-1) ** (k + 1) / k) * P
    if np.abs(P @ N).max() > tol * scale ** (d + 1):
        raise NotUnipotent("(g - I)^d is not negligible")
    return out


# numeric exp / log ------------------------------------------------------

def exp_general(X):
    """Scaling-and-squaring matrix exponential (double precision)."""
    return scipy.linalg.expm(np.asarray(X, dtype=complex))


def log_general(g, rtol=1e-12):
    """Principal matrix logarithm; raises if the spectrum meets the branch cut."""
    g = np.asarray(g, dtype=complex)
    ev = np.linalg.eigvals(g)
    scale = max(np.abs(ev).max(), 1e-300)
    if np.any((np.abs(ev.imag) <= 1e-14 * scale) & (ev.real <= 0)):
        raise LogBranchFailure("eigenvalue on the closed negative real axis")
    L = scipy.linalg.logm(g)
    back = scipy.linalg.expm(L)
    if np.linalg.norm(back - g, 2) > rtol * max(np.linalg.norm(g, 2), 1.0) * 1e3:
        raise LogBranchFailure("logarithm failed its backward-error check")
    return L


def exp_scaled(X):
    """``exp(X) = exp(s) * M`` with ``M`` normalised; returns ``(M, s)``."""
    X = np.asarray(X, dtype=complex)
    d = X.shape[0]
    if d == 0:
        return X.copy(), 0.0
    mu = float(np.max(np.linalg.eigvals(X).real))
    M = scipy.linalg.expm(X - mu * np.eye(d))
    return _normalise(M, mu)


def _normalise(M, s):
    m = float(np.abs(M).max()) if M.size else 0.0
    if m == 0.0 or not math.isfinite(m):
        return M, s
    return M / m, s + math.log(m)


def exact_to_scaled(M):
    """Exact matrix to ``(complex matrix, log_scale)`` without overflow."""
    nz = [(i, v) for i, v in enumerate(M.flat) if v]
    biggest = 0
    for _, v in nz:
        for part in (v.re, v.im):
            if part:
                biggest = max(biggest, int(part.numerator).bit_length() - int(part.denominator).bit_length())
    shift = max(biggest - 900, 0)
    C = np.zeros(M.size, dtype=complex)
    if shift:
        inv = GaussianRational(Fraction(1, 1 << shift))
        nz = [(i, v * inv) for i, v in nz]
    for i, v in nz:
        C[i] = complex(v)
    return _normalise(C.reshape(M.shape), shift * math.log(2.0))


def operator_norm(m):
    """Spectral norm (largest singular value)."""
    if is_exact(m):
        m = to_complex(m)
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


class GroupElement:
    """An element of the realised group.

    Exact elements hold an object array; numeric ones hold a normalised
    complex matrix with ``log_scale``.  ``word`` records the construction as
    a tuple of ``(vector, t)`` letters meaning ``prod exp(t * rho(vector))``.
    """

    __slots__ = ("matrix", "log_scale", "word", "rep", "_inv", "_log_norm", "_factors")

    def __init__(self, matrix, log_scale=0.0, word=None, rep=None):
        self.matrix = matrix
        self.log_scale = float(log_scale)
        self.word = None if word is None else tuple(word)
        self.rep = rep
        self._inv = None
        self._log_norm = None
        self._factors = None

    @property
    def exact(self):
        return is_exact(self.matrix)

    @property
    def degree(self):
        return self.matrix.shape[0]

    def __mul__(self, other):
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        rep = self.rep or other.rep
        if self.exact and other.exact:
            out = GroupElement(matmul(self.matrix, other.matrix), word=word, rep=rep)
        else:
            a, sa = self.scaled()
            b, sb = other.scaled()
            M, s = _normalise(a @ b, sa + sb)
            out = GroupElement(M, log_scale=s, word=word, rep=rep)
        out._factors = (self, other)
        return out

    def inverse(self):
        if self._inv is None:
            self._inv = self._inverse()
            self._inv._inv = self
        return self._inv

    def _inverse(self):
        if self._factors is not None:
            a, b = self._factors
            return b.inverse() * a.inverse()
        if self.word is not None and self.rep is not None:
            inv_word = tuple((v, -t) for v, t in reversed(self.word))
            return self.rep.element(inv_word)
        if self.exact:
            return GroupElement(exact_inverse(self.matrix), rep=self.rep)
        M, s = _normalise(np.linalg.inv(self.matrix), -self.log_scale)
        return GroupElement(M, log_scale=s, rep=self.rep)

    def scaled(self):
        """``(complex matrix, log_scale)`` representation."""
        if self.exact:
            return exact_to_scaled(self.matrix)
        return self.matrix, self.log_scale

    def numeric(self):
        M, s = self.scaled()
        return GroupElement(M, log_scale=s, word=self.word, rep=self.rep)

    def dense(self):
        """Plain complex matrix (may overflow for huge elements)."""
        M, s = self.scaled()
        return M * math.exp(s)

    def log_norm(self):
        """``log ||g||`` in the spectral norm."""
        if self._log_norm is None:
            M, s = self.scaled()
            self._log_norm = s + math.log(operator_norm(M))
        return self._log_norm

    def __repr__(self):
        kind = "exact" if self.exact else f"numeric, log_scale={self.log_scale:.3g}"
        return f"GroupElement(degree={self.degree}, {kind})"


def relative_distance(g, h):
    """``||g - h|| / ||g||`` computed on a common scale."""
    a, sa = g.scaled()
    b, sb = h.scaled()
    s = max(sa, sb)
    diff = a * math.exp(sa - s) - b * math.exp(sb - s)
    return operator_norm(diff) / (operator_norm(a) * math.exp(sa - s))


def dyadic(x, bits=10):
    """Round a real or complex number to an exact dyadic Gaussian rational."""
    z = complex(x)
    den = 1 << bits
    return GaussianRational(Fraction(round(z.real * den), den), Fraction(round(z.imag * den), den))


def sample_elements(rep, seed, count, scale, max_letters=3, semisimple_scale=8.0, phases=True):
    """Reproducible products of ``exp(t * rho(e_i))``.

    Each element is a word of 1 to ``max_letters`` letters along random basis
    directions.  ``|t|`` is log-uniform in ``[1, scale]`` on directions with
    nilpotent image and in ``[1, semisimple_scale]`` otherwise, with a
    random complex phase when ``phases`` is true.
    """
    rng = np.random.default_rng(seed)
    n = rep.algebra.dim
    out = []
    for _ in range(count):
        letters = []
        for _ in range(int(rng.integers(1, max_letters + 1))):
            i = int(rng.integers(n))
            v = unit_vec(n, i)
            top = scale if rep._letter_data(v)[0] == "exact" else min(scale, semisimple_scale)
            mag = math.exp(rng.uniform(0.0, math.log(top))) if top > 1 else 1.0
            phase = rng.uniform(0.0, 2 * math.pi) if phases else 0.0
            letters.append((v, dyadic(mag * complex(math.cos(phase), math.sin(phase)))))
        out.append(rep.element(letters))
    return out


def vector_from_json(values):
    from .scalars import parse_scalar
    return tuple(parse_scalar(v) for v in values)


__all__ = [
    "MatrixRep", "GroupElement", "validate_rep", "exp_nilpotent", "log_unipotent",
    "log_unipotent_numeric", "exp_general", "log_general", "exp_scaled", "operator_norm",
    "sample_elements", "relative_distance", "dyadic", "nilpotency_index",
]
