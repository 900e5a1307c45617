"""Series, radicals, Cartan subalgebras and filtration weights.

All computations are exact.  The solvable radical is found as the Killing
orthogonal of the derived algebra (valid in characteristic zero); the
other radicals are built from it.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import (EViolatesContainment, InternalInconsistency,
                         InvalidLeviComplement, NotBetweenRadicals,
                         NotNilpotent, RegularElementNotFound)
from .linalg import Subspace, matmul, nullspace, solve
from .scalars import ZERO, GaussianRational


@dataclass(frozen=True)
class SeriesChain:
    terms: tuple
    kind: str

    @property
    def dims(self):
        return tuple(t.dim for t in self.terms)

    @property
    def limit(self):
        return self.terms[-1]

    @property
    def reaches_zero(self):
        return self.terms[-1].dim == 0


def _chain(first, step, kind):
    terms = [first]
    while True:
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt.dim == 0 or nxt == terms[-2]:
            break
    return SeriesChain(tuple(terms), kind)


def lower_central_series(alg, h=None):
    """``C^1 = h, C^{i+1} = [h, C^i]`` until it stabilises or vanishes."""
    h = alg.full() if h is None else h
    alg.require_subalgebra(h)
    if h.dim == 0:
        return SeriesChain((h,), "lower-central")
    return _chain(h, lambda c: alg.bracket_span(h, c), "lower-central")


def derived_series(alg, h=None):
    h = alg.full() if h is None else h
    alg.require_subalgebra(h)
    if h.dim == 0:
        return SeriesChain((h,), "derived")
    return _chain(h, lambda d: alg.bracket_span(d, d), "derived")


def is_solvable(alg, h=None):
    return derived_series(alg, h).reaches_zero


def is_nilpotent(alg, h=None):
    return lower_central_series(alg, h).reaches_zero


def nilpotency_class(alg):
    """Smallest ``c`` with ``C^{c+1} = 0``; raises if not nilpotent."""
    lcs = lower_central_series(alg)
    if not lcs.reaches_zero:
        raise NotNilpotent("lower central series does not reach zero")
    return len(lcs.terms) - 1


def derived_algebra(alg):
    return alg.bracket_span(alg.full(), alg.full())


def solvable_radical(alg):
    """Largest solvable ideal, as the Killing orthogonal of ``[g, g]``."""
    n = alg.dim
    K = alg.killing_matrix()
    gg = derived_algebra(alg)
    rows = []
    for d in gg.basis:
        rows.append([sum((K[i, j] * d[j] for j in range(n) if d[j]), ZERO) for i in range(n)])
    r = Subspace(n, nullspace(rows, n)) if rows else alg.full()
    if not alg.is_ideal(r) or not derived_series(alg, r).reaches_zero:
        raise InternalInconsistency("Killing-orthogonal of [g,g] is not a solvable ideal")
    return r


def nilpotent_radical(alg, r=None):
    """``n = [g, r]``, cross-checked against ``[g, g] & r``."""
    r = solvable_radical(alg) if r is None else r
    n = alg.bracket_span(alg.full(), r)
    other = derived_algebra(alg) & r
    if n != other:
        raise InternalInconsistency("[g, r] differs from [g, g] & r")
    if not lower_central_series(alg, n).reaches_zero:
        raise InternalInconsistency("nilpotent radical is not nilpotent")
    return n


def subalgebra_generated(alg, vectors):
    """Smallest bracket-closed subspace containing ``vectors``."""
    S = Subspace(alg.dim, vectors)
    while True:
        T = S + alg.bracket_span(S, S)
        if T == S:
            return S
        S = T


def validate_levi(alg, levi, r=None):
    r = solvable_radical(alg) if r is None else r
    if not alg.is_subalgebra(levi):
        raise InvalidLeviComplement("Levi complement is not a subalgebra")
    if alg.bracket_span(levi, levi) != levi:
        raise InvalidLeviComplement("[s, s] != s")
    if (levi & r).dim:
        raise InvalidLeviComplement("s meets the solvable radical")
    if (levi + r) != alg.full():
        raise InvalidLeviComplement("s + r != g")
    return True


def exponential_radical(alg, levi=None, r=None, n=None):
    """``e = r_inf + <[s, r]>`` for a user-supplied Levi complement ``s``."""
    r = solvable_radical(alg) if r is None else r
    levi = alg.zero() if levi is None else levi
    validate_levi(alg, levi, r)
    r_inf = lower_central_series(alg, r).limit
    sr = alg.bracket_span(levi, r)
    e = r_inf + subalgebra_generated(alg, sr.basis)
    if not alg.is_ideal(e):
        raise InternalInconsistency("exponential radical is not an ideal")
    n = nilpotent_radical(alg, r) if n is None else n
    if not e <= n:
        raise EViolatesContainment("e is not contained in n")
    return e


def _restricted_ad(alg, b, x):
    """Matrix of ``ad x`` on the subalgebra ``b`` in ``b``'s echelon coordinates."""
    k = b.dim
    m = np.empty((k, k), dtype=object)
    for j, w in enumerate(b.basis):
        col = b.coordinates(alg.bracket(x, w))
        for i, v in enumerate(col):
            m[i, j] = v
    return m


def _fitting_null(alg, b, x):
    k = b.dim
    M = _restricted_ad(alg, b, x)
    P = M
    for _ in range(max(k - 1, 0)):
        P = matmul(P, M)
    rows = [list(P[i]) for i in range(k)]
    coeffs = nullspace(rows, k)
    return Subspace(alg.dim, [b.combine(c) for c in coeffs])


def cartan_subalgebra(alg, b=None, seed=0, max_trials=64):
    """Cartan subalgebra of the solvable subalgebra ``b`` (default: all of ``alg``).

    The echelon basis vectors of ``b`` are tried first, then random
    integer combinations.  A Fitting null component is accepted once it is
    verified nilpotent and self-normalising in ``b``; at most
    ``max_trials`` random candidates are drawn.
    """
    b = alg.full() if b is None else b
    if not derived_series(alg, b).reaches_zero:
        raise NotNilpotent("cartan_subalgebra expects a solvable subalgebra")
    if b.dim == 0:
        return b
    if lower_central_series(alg, b).reaches_zero:
        return b
    rng = np.random.default_rng(seed)

    def candidates():
        yield from b.basis
        for _ in range(max_trials):
            coeffs = rng.integers(-9, 10, size=b.dim)
            yield b.combine([GaussianRational(int(c)) for c in coeffs])

    best = None
    for x in candidates():
        h = _fitting_null(alg, b, x)
        if best is not None and h.dim >= best.dim:
            continue
        best = h
        if (alg.is_subalgebra(h) and lower_central_series(alg, h).reaches_zero
                and alg.normalizer(h, within=b) == h):
            return h
    raise RegularElementNotFound(seed, max_trials)


def complement_v(h, nprime, prefer=()):
    """Echelon-completion complement of ``nprime & h`` in ``h``.

    Vectors in ``prefer`` that lie in ``h`` are tried first.
    """
    return (nprime & h).complement_in(h, prefer=[p for p in prefer if p in h])


@dataclass(frozen=True)
class WeightedBasis:
    """Basis adapted to the lower central series, with depth weights."""

    vectors: tuple
    weights: tuple

    def coordinates(self, x):
        c = solve(self.vectors, x)
        if c is None:
            raise ValueError("vector outside the span of the weighted basis")
        return c


def f_basis_weights(alg):
    """Filtration-adapted basis and weights ``w_k = max{i : e_k in C^i}``."""
    lcs = lower_central_series(alg)
    if not lcs.reaches_zero:
        raise NotNilpotent("algebra is not nilpotent")
    vectors, weights = [], []
    terms = lcs.terms
    for i in range(len(terms) - 1):
        comp = terms[i + 1].complement_in(terms[i])
        for v in comp.basis:
            vectors.append(v)
            weights.append(i + 1)
    return WeightedBasis(tuple(vectors), tuple(weights))


def validate_intermediate(alg, nprime, levi=None, r=None, n=None, e=None):
    """Check ``nprime`` is an ideal with ``e <= nprime <= n``."""
    alg.require_ideal(nprime)
    r = solvable_radical(alg) if r is None else r
    n = nilpotent_radical(alg, r) if n is None else n
    e = exponential_radical(alg, levi, r, n) if e is None else e
    if not e <= nprime:
        raise NotBetweenRadicals("e <= n'")
    if not nprime <= n:
        raise NotBetweenRadicals("n' <= n")
    return True
