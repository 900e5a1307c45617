"""Length functions as evaluable objects with a provenance tree.

Every handle wraps ``GroupElement -> float`` and records how it was built
(``{"op": ..., "children": [...]}``) so that reports can be reproduced.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import NotFaithful, ProjectionUnavailable, UnvettedFunction


class LengthFunction:
    """A length function handle.

    Parameters
    ----------
    func : callable
        ``GroupElement -> float``.
    provenance : dict
    symmetric : bool
    subadditive : bool
        True when ``l(gh) <= l(g) + l(h)`` holds exactly (up to rounding),
        not merely up to equivalence.
    """

    def __init__(self, func, provenance, symmetric=False, subadditive=False):
        self.func = func
        self.provenance = provenance
        self.symmetric = symmetric
        self.subadditive = subadditive

    def __call__(self, g):
        return float(self.func(g))

    def evaluate(self, elements):
        return np.array([self(g) for g in elements], dtype=float)

    @property
    def name(self):
        return self.provenance.get("name") or self.provenance["op"]

    def named(self, name):
        prov = dict(self.provenance, name=name)
        return LengthFunction(self.func, prov, self.symmetric, self.subadditive)

    def to_json(self):
        return dict(self.provenance, symmetric=self.symmetric, subadditive=self.subadditive)

    def __repr__(self):
        return f"LengthFunction({self.name})"


def zero_length():
    return LengthFunction(lambda g: 0.0, {"op": "zero"}, symmetric=True, subadditive=True)


def word_length_nilpotent(t, weights):
    """``max_k |t_k|^(1/w_k)``, the standard proxy for word length on a nilpotent group."""
    if len(t) != len(weights):
        raise ValueError(f"{len(t)} coordinates for {len(weights)} weights")
    out = 0.0
    for c, w in zip(t, weights):
        a = abs(complex(c))
        if a:
            out = max(out, a ** (1.0 / w))
    return out


def length_pi(rep):
    """``g -> log ||pi(g)||`` in the spectral norm."""
    return LengthFunction(lambda g: g.log_norm(), {"op": "log-norm", "rep_degree": rep.degree},
                          subadditive=True)


def length_pi_sym(rep):
    """``g -> log ||pi(g)|| + log ||pi(g^-1)||``."""
    return symmetrize(length_pi(rep))


def length_max_sym(ell):
    """``g -> max(l(g), l(g^-1))``: the max-symmetrisation (also symmetric and subadditive)."""
    return LengthFunction(lambda g: max(ell(g), ell(g.inverse())),
                          {"op": "max-symmetrize", "children": [ell.provenance]},
                          symmetric=True, subadditive=ell.subadditive)


@dataclass(frozen=True)
class Vetted:
    """A subadditive, increasing, continuous ``f`` with ``f(0) = 0``."""

    kind: str
    param: float = None

    def __call__(self, x):
        if self.kind == "identity":
            return x
        if self.kind == "log1p":
            return math.log1p(x)
        if self.kind == "power":
            return x ** self.param
        if self.kind == "min":
            return min(x, self.param)
        raise UnvettedFunction(self.kind)

    def to_json(self):
        return {"kind": self.kind, "param": self.param}


def vetted(kind, param=None):
    """Validate and build a member of the vetted family."""
    if kind in ("identity", "log1p") and param is None:
        return Vetted(kind)
    if kind == "power" and param is not None and 0 < param <= 1:
        return Vetted(kind, float(param))
    if kind == "min" and param is not None and param > 0:
        return Vetted(kind, float(param))
    raise UnvettedFunction(f"{kind}({param}) is not in the vetted family")


def length_compose_f(ell, f):
    """``g -> f(l(g))`` for ``f`` in the vetted family."""
    if isinstance(f, str):
        f = vetted(f)
    elif isinstance(f, tuple):
        f = vetted(*f)
    if not isinstance(f, Vetted):
        raise UnvettedFunction(f"{f!r} is not in the vetted family")
    vetted(f.kind, f.param)
    if f.kind == "identity":
        return ell
    return LengthFunction(lambda g: f(max(ell(g), 0.0)),
                          {"op": "compose", "f": f.to_json(), "children": [ell.provenance]},
                          symmetric=ell.symmetric, subadditive=ell.subadditive)


def length_sum(*ells):
    return LengthFunction(lambda g: sum(e(g) for e in ells),
                          {"op": "sum", "children": [e.provenance for e in ells]},
                          symmetric=all(e.symmetric for e in ells),
                          subadditive=all(e.subadditive for e in ells))


def length_max(*ells):
    return LengthFunction(lambda g: max(e(g) for e in ells),
                          {"op": "max", "children": [e.provenance for e in ells]},
                          symmetric=all(e.symmetric for e in ells),
                          subadditive=all(e.subadditive for e in ells))


def symmetrize(ell):
    """``g -> l(g) + l(g^-1)``."""
    def func(g):
        # sum in a fixed order of the unordered pair keeps l(g) == l(g^-1) bitwise
        a, b = ell(g), ell(g.inverse())
        return min(a, b) + max(a, b)
    return LengthFunction(func, {"op": "symmetrize", "children": [ell.provenance]},
                          symmetric=True, subadditive=ell.subadditive)


@dataclass(frozen=True)
class QuotientPoint:
    """Image of ``g`` in ``G/N' = B/N' x L``: weighted coordinates and the ``L`` part."""

    coords: tuple
    weights: tuple
    l: object


def quotient_map(ctx):
    """``sigma: G -> G/N'`` realised through the construction word."""
    from .decomposition import _word_of

    def sigma(g):
        word = _word_of(g, ctx)
        return QuotientPoint(ctx.quotient_coordinates(word), ctx.weighted.weights, ctx.l_part(word))
    return sigma


def reductive_proxy(l):
    """``log ||rho(l)|| + log ||rho(l^-1)||``; zero on the identity word."""
    if l.word is not None and not l.word:
        return 0.0
    return l.log_norm() + l.inverse().log_norm()


def quotient_proxy(point):
    return word_length_nilpotent(point.coords, point.weights) + reductive_proxy(point.l)


def length_pullback(ell_quotient, sigma, tag="quotient"):
    """``g -> l(sigma(g))`` for a length function on the quotient."""
    if sigma is None:
        raise ProjectionUnavailable("no quotient map supplied")
    return LengthFunction(lambda g: ell_quotient(sigma(g)), {"op": "pullback", "quotient": tag})


@dataclass
class PhiContext:
    """Data fixing a representative of the maximal class: decomposition and norms."""

    decomposition: object
    norm: object = None
    proxy: str = "log-norm of rho on L"
    extra: dict = field(default_factory=dict)

    def eta_norm(self, eta):
        if self.norm is not None:
            return float(self.norm(eta))
        return float(np.linalg.norm(np.array([complex(v) for v in eta])))


def phi_terms(pctx, g):
    """The three terms of ``phi(g)``: ``log(1+|eta|)``, quotient proxy, ``L`` proxy."""
    from .decomposition import tri_decompose

    ctx = pctx.decomposition
    t = tri_decompose(g, ctx)
    z = ctx._q_of_b(t.xi) if ctx.quotient.dim else ()
    coords = ctx.weighted.coordinates(z) if ctx.weighted.vectors else ()
    return (math.log1p(pctx.eta_norm(t.eta)),
            word_length_nilpotent(coords, ctx.weighted.weights),
            reductive_proxy(t.l))


def phi_build(pctx):
    """``phi(g) = log(1+|eta|) + l1(tau exp xi) + l2(l)``."""
    ctx = pctx.decomposition
    return LengthFunction(lambda g: sum(phi_terms(pctx, g)),
                          {"op": "phi", "nprime": ctx.nprime.to_json(),
                           "weights": list(ctx.weighted.weights), "l2": pctx.proxy})


def ellprime_build(ctx, rep=None):
    """``l' = (quotient proxy o sigma) + l_pi^sym`` for a faithful representation."""
    rep = ctx.rep if rep is None else rep
    if not rep.is_faithful():
        raise NotFaithful("l' needs a faithful representation")
    pull = length_pullback(quotient_proxy, quotient_map(ctx))
    out = length_sum(pull, length_pi_sym(rep))
    out.provenance["op"] = "ellprime"
    return out


def nilpotent_word_proxy(ctx):
    """Word-length proxy of ``B/N'`` pulled back to ``G`` (``max_k |t_k|^(1/w_k)``)."""
    def func(g):
        from .decomposition import _word_of
        return word_length_nilpotent(ctx.quotient_coordinates(_word_of(g, ctx)), ctx.weighted.weights)
    return LengthFunction(func, {"op": "word-proxy", "weights": list(ctx.weighted.weights)},
                          symmetric=True)


__all__ = [
    "LengthFunction", "zero_length", "word_length_nilpotent", "length_pi", "length_pi_sym",
    "length_max_sym", "vetted", "length_compose_f", "length_sum", "length_max", "symmetrize",
    "quotient_map", "quotient_proxy", "reductive_proxy", "length_pullback", "PhiContext",
    "phi_build", "phi_terms", "ellprime_build", "nilpotent_word_proxy",
]
