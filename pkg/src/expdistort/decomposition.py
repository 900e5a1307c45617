"""Nilpotent group law (truncated BCH) and the decomposition g = exp(eta) exp(xi) l.

The inverse map works on the construction word of an element:

* the projection to ``L`` is a homomorphism whose differential is the
  projection ``g -> l`` along ``b``, so each letter ``exp(t v)`` maps to
  ``exp(t p_l(v))``;
* because ``[l, b]`` lies in ``n'``, the map ``G -> B/N'`` is also a
  homomorphism and ``log tau(b)`` is the BCH fold of ``t q(v)`` in ``b/n'``;
* ``xi`` is the unique vector of ``v`` with ``d tau(xi) = log tau(b)``;
* ``eta = log(b exp(-xi))`` must then lie in ``n'``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .exceptions import (EtaNotInNPrime, InternalInconsistency,
                         InvalidLeviComplement, NotBetweenRadicals,
                         NotUnipotent, ProjectionUnavailable)
from .lie import apply_matrix, quotient_algebra
from .linalg import (Subspace, exact_identity, exact_zeros, is_zero, mat_add, mat_scale,
                     matmul, solve, to_complex, unit_vec, vadd, vec, vscale, zero_vec)
from .matrix_group import (GroupElement, _normalise, exp_scaled, log_unipotent,
                           log_unipotent_numeric, nilpotency_index)
from .radicals import (cartan_subalgebra, complement_v, derived_series, f_basis_weights,
                       nilpotency_class, solvable_radical, validate_intermediate)
from .scalars import ONE, GaussianRational


@lru_cache(maxsize=None)
def bernoulli(m):
    """Bernoulli number ``B_m`` (with ``B_1 = -1/2``)."""
    B = [Fraction(1)]
    for n in range(1, m + 1):
        B.append(-sum(comb(n + 1, k) * B[k] for k in range(n)) / (n + 1))
    return B[m]


def _compositions(n, parts):
    if parts == 1:
        yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def bch(alg, x, y, nilclass=None):
    """``z`` with ``exp(x) exp(y) = exp(z)`` in a nilpotent algebra.

    Uses the Goldberg-Varadarajan recursion for the homogeneous parts
    ``Z_n`` and stops at the nilpotency class, past which every ``Z_n``
    vanishes.
    """
    c = nilpotency_class(alg) if nilclass is None else nilclass
    x, y = vec(x), vec(y)
    s = vadd(x, y)
    d = vadd(x, vscale(-1, y))
    Z = [None, s]
    for n in range(1, c):
        acc = vscale(Fraction(1, 2), alg.bracket(d, Z[n]))
        for p in range(1, n // 2 + 1):
            coeff = bernoulli(2 * p) / _factorial(2 * p)
            if not coeff:
                continue
            for ks in _compositions(n, 2 * p):
                w = s
                for k in reversed(ks):
                    w = alg.bracket(Z[k], w)
                    if is_zero(w):
                        break
                if not is_zero(w):
                    acc = vadd(acc, vscale(coeff, w))
        Z.append(vscale(Fraction(1, n + 1), acc))
    out = Z[1]
    for z in Z[2:]:
        out = vadd(out, z)
    return out


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def bch_fold(alg, vectors, nilclass=None):
    c = nilpotency_class(alg) if nilclass is None else nilclass
    out = zero_vec(alg.dim)
    for v in vectors:
        if not is_zero(v):
            out = bch(alg, out, v, c) if not is_zero(out) else vec(v)
    return out


@dataclass(frozen=True)
class SemidirectData:
    """``g = b + l`` with ``b`` a solvable ideal and ``l`` a subalgebra."""

    b: Subspace
    l: Subspace

    @classmethod
    def default(cls, alg, levi=None):
        return cls(solvable_radical(alg), alg.zero() if levi is None else levi)

    def validate(self, alg, nprime=None):
        alg.require_ideal(self.b)
        alg.require_subalgebra(self.l)
        if not derived_series(alg, self.b).reaches_zero:
            raise InvalidLeviComplement("b is not solvable")
        if (self.b & self.l).dim or (self.b + self.l) != alg.full():
            raise InvalidLeviComplement("b and l are not complementary")
        if nprime is not None:
            if not nprime <= self.b:
                raise NotBetweenRadicals("n' <= b")
            if not alg.bracket_span(self.l, self.b) <= nprime:
                raise InvalidLeviComplement("[l, b] is not contained in n'")
        return True


@dataclass(frozen=True)
class TriDecomposition:
    """``(eta, xi, l)``; ``eta`` is exact (tuple) or complex (ndarray)."""

    eta: object
    xi: tuple
    l: GroupElement
    exact: bool

    def eta_complex(self):
        return np.array([complex(v) for v in self.eta], dtype=complex)

    def to_json(self):
        M, s = self.l.scaled()
        lm = M * np.exp(s)
        return {
            "eta": [[c.real, c.imag] for c in self.eta_complex()],
            "xi": [[float(v.re), float(v.im)] for v in self.xi],
            "l": [[[z.real, z.imag] for z in row] for row in lm],
            "exact": self.exact,
        }


class DecompositionContext:
    """Everything needed to split group elements relative to ``n'``.

    Parameters
    ----------
    alg : LieAlgebra
    rep : MatrixRep
    nprime : Subspace
        Ideal with ``e <= nprime <= n``.
    semidirect : SemidirectData, optional
        Defaults to ``b = r``, ``l = levi``.
    levi : Subspace, optional
        Levi complement used for the exponential radical.
    """

    def __init__(self, alg, rep, nprime, semidirect=None, levi=None, seed=0, prefer=()):
        levi = alg.zero() if levi is None else levi
        semidirect = SemidirectData.default(alg, levi) if semidirect is None else semidirect
        validate_intermediate(alg, nprime, levi)
        semidirect.validate(alg, nprime)
        self.alg, self.rep, self.nprime = alg, rep, nprime
        self.semidirect, self.levi = semidirect, levi
        b, l = semidirect.b, semidirect.l
        n = alg.dim

        b_alg, _ = alg.restrict(b)
        nprime_b = Subspace(b.dim, [b.coordinates(u) for u in nprime.basis])
        self.quotient, self.proj = quotient_algebra(b_alg, nprime_b)
        self.qclass = nilpotency_class(self.quotient) if self.quotient.dim else 0
        self.weighted = f_basis_weights(self.quotient)

        self.h = cartan_subalgebra(alg, b, seed=seed)
        if (nprime + self.h) != b:
            raise InternalInconsistency("n' + h != b")
        self.v = complement_v(self.h, nprime, prefer=prefer)

        # q: g -> b/n' (project along l, then mod n'); pl: g -> l along b
        both = list(b.basis) + list(l.basis)
        self.qmap = exact_zeros(self.quotient.dim, n)
        self.lmap = exact_zeros(n, n)
        for j in range(n):
            c = solve(both, unit_vec(n, j))
            xb = b.combine(c[:b.dim])
            xl = l.combine(c[b.dim:])
            for i, val in enumerate(self._q_of_b(xb)):
                self.qmap[i, j] = val
            for i, val in enumerate(xl):
                self.lmap[i, j] = val

        self.tau_v = [self._q_of_b(u) for u in self.v.basis]
        if len(self.tau_v) != self.quotient.dim or (
                self.tau_v and Subspace(self.quotient.dim, self.tau_v).dim != self.quotient.dim):
            raise InternalInconsistency("d tau restricted to v is not an isomorphism")

    def _q_of_b(self, xb):
        return apply_matrix(self.proj, self.semidirect.b.coordinates(xb))

    def q(self, x):
        return apply_matrix(self.qmap, x)

    def p_l(self, x):
        return apply_matrix(self.lmap, x)

    def quotient_log(self, word):
        """``log tau(b)`` in quotient coordinates."""
        return bch_fold(self.quotient, [vscale(t, self.q(v)) for v, t in word], self.qclass)

    def quotient_coordinates(self, word):
        """Coordinates of ``log tau(b)`` on the weighted quotient basis."""
        z = self.quotient_log(word)
        return self.weighted.coordinates(z) if self.weighted.vectors else ()

    def l_part(self, word):
        letters = [(self.p_l(v), t) for v, t in word]
        return self.rep.element([(v, t) for v, t in letters if not is_zero(v)])

    def xi_from(self, z):
        if not self.tau_v:
            return zero_vec(self.alg.dim)
        c = solve(self.tau_v, z)
        return self.v.combine(c)


def _word_of(g, ctx):
    if g.word is not None:
        return g.word
    if g.exact:
        try:
            return ctx.rep.element_from_matrix(g.matrix).word
        except (NotUnipotent, ValueError):
            pass
    raise ProjectionUnavailable("element has no construction word and is not unipotent")


def exp_vector(rep, x, t=ONE):
    """``exp(t rho(x))`` without touching the letter cache."""
    X = mat_scale(t, rep.rho(x))
    if nilpotency_index(X) is not None:
        out = exact_identity(rep.degree)
        P = exact_identity(rep.degree)
        for k in range(1, rep.degree + 1):
            P = mat_scale(GaussianRational(1) / k, matmul(P, X))
            if not any(P.flat):
                break
            out = mat_add(out, P)
        return GroupElement(out, word=((vec(x), t),), rep=rep)
    M, s = exp_scaled(to_complex(X))
    return GroupElement(M, log_scale=s, word=((vec(x), t),), rep=rep)


def exp_nilpotent_numeric(X):
    X = np.asarray(X, dtype=complex)
    d = X.shape[0]
    out = np.eye(d, dtype=complex)
    P = np.eye(d, dtype=complex)
    for k in range(1, d + 1):
        P = P @ X / k
        out = out + P
    return out


def tri_decompose(g, ctx, rtol=1e-9):
    """Split ``g`` as ``exp(eta) exp(xi) l`` with ``eta`` in n' and ``xi`` in v."""
    word = _word_of(g, ctx)
    rep = ctx.rep
    l = ctx.l_part(word)
    xi = ctx.xi_from(ctx.quotient_log(word))
    linv = l.inverse()
    back = exp_vector(rep, xi, -ONE)
    b = g * linv
    rem = b * back
    nb = ctx.nprime.basis
    if rem.exact:
        X = log_unipotent(rem.matrix)
        coords = rep.preimage(X, nb)
        if coords is None:
            raise EtaNotInNPrime("log(b exp(-xi)) is not in n'")
        eta = ctx.nprime.combine(coords)
        return TriDecomposition(eta, xi, l, True)
    # rounding in rem is relative to the sizes of the three factors
    scale = np.exp(g.log_norm() + linv.log_norm() + back.log_norm())
    M, s = rem.scaled()
    X = log_unipotent_numeric(M * np.exp(s), tol=rtol * scale)
    if not nb:
        if np.abs(X).max() > rtol * scale:
            raise EtaNotInNPrime("b exp(-xi) is not the identity")
        return TriDecomposition(zero_vec(ctx.alg.dim), xi, l, False)
    A = np.stack([rep.rho_complex(u).ravel() for u in nb], axis=1)
    c, *_ = np.linalg.lstsq(A, X.ravel(), rcond=None)
    resid = np.linalg.norm(A @ c - X.ravel())
    if resid > rtol * max(np.linalg.norm(X), scale):
        raise EtaNotInNPrime(f"residual {resid:.3g} outside n'")
    basis = np.array([[complex(v) for v in u] for u in nb])
    return TriDecomposition(c @ basis, xi, l, False)


def tri_compose(t, ctx):
    """``exp(eta) exp(xi) l`` as a group element (no construction word)."""
    rep = ctx.rep
    if t.exact:
        e1 = exp_vector(rep, t.eta)
    else:
        X = sum(c * rep.rho_complex(unit_vec(ctx.alg.dim, i)) for i, c in enumerate(t.eta_complex()) if c)
        X = np.zeros((rep.degree, rep.degree), complex) if isinstance(X, int) else X
        M, s = _normalise(exp_nilpotent_numeric(X), 0.0)
        e1 = GroupElement(M, log_scale=s, rep=rep)
    out = e1 * exp_vector(rep, t.xi) * t.l
    return GroupElement(out.matrix, log_scale=out.log_scale, word=None, rep=rep)
