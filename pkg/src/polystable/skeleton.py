"""Skeleton of a standard pair: seminorms, trop, sigma, tau and the deformation flow.

Coordinates of ``S(n, a, d)`` are ordered as ``T_{10}, ..., T_{p n_p}`` (torus
factors) followed by ``T_1, ..., T_d``; the first ``s`` of those are divisor
coordinates, the rest ball coordinates.  All values are valuations
(``-log |.|``), so ``INF`` stands for zero.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb

from .errors import DescriptorError, DomainError
from .extended import INF, ext_add, ext_mul, q
from .geometry import RealizationPoint, contains
from .polysimplex import ExtendedPolySimplex
from .series import Coeff, ONE, ZERO
from .strata import stratum_id


def _coeff(c):
    return c if isinstance(c, Coeff) else Coeff.const(q(c))


@dataclass(frozen=True)
class StandardPairModel:
    """``(S(n, a, d), G(s))``.  ``a_i == 0`` (color ``INF``) needs ``closure=True``."""

    n: tuple
    a: tuple
    d: int
    s: int
    closure: bool = False

    def __post_init__(self):
        n = tuple(int(k) for k in self.n)
        a = tuple(_coeff(c) for c in self.a)
        if n == (0,):
            a = ()
        elif len(a) != len(n) or any(k < 1 for k in n):
            raise DescriptorError("need one a_i per factor and n_i >= 1")
        for c in a:
            v = c.val()
            if v is INF and not self.closure:
                raise DescriptorError("a_i = 0 is only allowed in closure mode")
            if v is not INF and v <= 0:
                raise DescriptorError("a_i must have positive valuation")
        if not 0 <= self.s <= self.d:
            raise DescriptorError("need 0 <= s <= d")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", a)

    @property
    def p(self):
        return 0 if self.n == (0,) else len(self.n)

    @property
    def r(self):
        return tuple(c.val() for c in self.a) if self.p else (0,)

    @property
    def shape(self):
        return ExtendedPolySimplex(self.n, self.r, self.s)

    @property
    def n_torus(self):
        return sum(k + 1 for k in self.n[: self.p])

    @property
    def nvars(self):
        return self.n_torus + self.d

    def torus_index(self, i, j):
        return sum(k + 1 for k in self.n[:i]) + j

    def coord_index(self, k):
        """Index of ``T_k`` for ``1 <= k <= d``."""
        return self.n_torus + k - 1

    def factor_slices(self):
        out, start = [], 0
        for k in self.n[: self.p]:
            out.append(range(start, start + k + 1))
            start += k + 1
        return out

    def descriptor(self):
        from .strata import standard_descriptor

        return standard_descriptor(self.n, self.r, self.d, self.s)


# polynomials


@dataclass(frozen=True)
class ValuedPolynomial:
    model: StandardPairModel
    terms: tuple  # sorted pairs (exponent tuple, Coeff), normal form

    def as_dict(self):
        return dict(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self, idx):
        return max((mu[idx] for mu, _ in self.terms), default=0)

    def __add__(self, other):
        d = self.as_dict()
        for mu, c in other.terms:
            d[mu] = d.get(mu, ZERO) + c
        return normalize_poly(self.model, d)

    def __neg__(self):
        return ValuedPolynomial(self.model, tuple((mu, -c) for mu, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        d = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                mu = tuple(a + b for a, b in zip(m1, m2))
                d[mu] = d.get(mu, ZERO) + c1 * c2
        return normalize_poly(self.model, d)


def normalize_poly(model, raw):
    """Rewrite ``T_{i0} ... T_{in_i} -> a_i`` until no monomial is divisible by it."""
    out = {}
    slices = model.factor_slices()
    for mu, c in dict(raw).items():
        mu = tuple(int(v) for v in mu)
        if len(mu) != model.nvars:
            raise DescriptorError(f"exponent {mu} has the wrong length")
        c = _coeff(c)
        mu = list(mu)
        for i, sl in enumerate(slices):
            m = min(mu[j] for j in sl)
            if m:
                for j in sl:
                    mu[j] -= m
                c = c * model.a[i] ** m
        mu = tuple(mu)
        out[mu] = out.get(mu, ZERO) + c
    return ValuedPolynomial(model, tuple(sorted((mu, c) for mu, c in out.items() if c)))


def poly(model, terms):
    """Convenience: ``terms`` is a list of ``(coefficient, exponent tuple)``."""
    d = {}
    for c, mu in terms:
        d[tuple(mu)] = d.get(tuple(mu), ZERO) + _coeff(c)
    return normalize_poly(model, d)


def variable(model, idx):
    mu = [0] * model.nvars
    mu[idx] = 1
    return normalize_poly(model, {tuple(mu): ONE})


def constant(model, c):
    return normalize_poly(model, {(0,) * model.nvars: _coeff(c)})


# points


@dataclass(frozen=True)
class SkeletalPoint:
    """Shifted-monomial point: torus parameters ``v`` plus ``(center, radius valuation)`` discs."""

    model: StandardPairModel
    v: tuple
    div: tuple
    ball: tuple
    closure: bool = False


def _norm_disc(c, u):
    c = _coeff(c)
    u = q(u)
    if u is not INF and u < 0:
        raise DomainError("radius valuations must be non-negative")
    v = c.val()
    if v is not INF and v < 0:
        raise DomainError("centers must lie in the closed unit disc")
    if v is INF or u <= v:
        return (ZERO, u)
    return (c.truncate(u), u)


def make_point(model, v=(), div=(), ball=(), closure=False):
    v = tuple(tuple(q(x) for x in row) for row in v)
    if len(v) != model.p:
        raise DomainError("one torus row per factor is required")
    for row, k, r in zip(v, model.n, model.r):
        if len(row) != k + 1 or any(x is not INF and x < 0 for x in row):
            raise DomainError("bad torus parameters")
        if r is INF:
            if INF not in row:
                raise DomainError("a degenerate factor needs an infinite parameter")
        elif INF in row or sum(row) != r:
            raise DomainError(f"torus parameters must sum to {r}")
    div = tuple(_norm_disc(c, u) for c, u in div)
    ball = tuple(_norm_disc(c, u) for c, u in ball)
    if len(div) != model.s or len(ball) != model.d - model.s:
        raise DomainError("wrong number of divisor or ball coordinates")
    if not (closure and model.closure):
        closure = False
        for c, u in div:
            if c.val() is INF and u is INF:
                raise DomainError("the point lies on the divisor; use closure mode")
    return SkeletalPoint(model, v, div, ball, closure)


def _discs(x):
    return x.div + x.ball


def _shift(terms, idx, c):
    """Substitute ``T_idx -> T_idx + c``."""
    if not c:
        return terms
    powers = [ONE]
    out = {}
    for mu, coef in terms.items():
        m = mu[idx]
        while len(powers) <= m:
            powers.append(powers[-1] * c)
        for k in range(m + 1):
            nu = mu[:idx] + (k,) + mu[idx + 1:]
            out[nu] = out.get(nu, ZERO) + coef * (powers[m - k] * comb(m, k))
    return {mu: c for mu, c in out.items() if c}


def seminorm_eval(x, f):
    """``val |f(x)|``: Taylor re-expansion at the disc centers, then the Gauss rule."""
    model = x.model
    if f.model != model:
        raise DescriptorError("polynomial and point live on different models")
    terms = f.as_dict()
    base = model.n_torus
    discs = _discs(x)
    for k, (c, _) in enumerate(discs):
        terms = _shift(terms, base + k, c)
    weights = [w for row in x.v for w in row] + [u for _, u in discs]
    best = INF
    for mu, coef in terms.items():
        val = coef.val()
        for e, w in zip(mu, weights):
            if e:
                val = ext_add(val, ext_mul(e, w))
        if val < best:
            best = val
    return best


# trop, sigma, tau


def trop(x):
    y = []
    for c, u in x.div:
        val = min(c.val(), u)
        if val is INF and not x.closure:
            raise DomainError("trop is undefined on the divisor outside closure mode")
        y.append(val)
    return RealizationPoint(x.v, tuple(y), x.closure)


def sigma(model, w):
    E = model.shape
    if contains(E, w) == "outside":
        raise DomainError("point lies outside Delta(n, r, s)")
    div = tuple((ZERO, y) for y in w.y)
    ball = tuple((ZERO, Fraction(0)) for _ in range(model.d - model.s))
    return make_point(model, w.x, div, ball, closure=w.closure)


def tau(x):
    return sigma(x.model, trop(x))


def is_skeletal(x):
    return tau(x) == x


# deformation flow


def _directions(x, f):
    """``(var index, kind)`` for every group direction: torus ``j >= 1``, divisor, ball."""
    model = x.model
    out = []
    for sl in model.factor_slices():
        out.extend((idx, "mult") for idx in list(sl)[1:])
    for k in range(1, model.s + 1):
        out.append((model.coord_index(k), "mult"))
    for k in range(model.s + 1, model.d + 1):
        out.append((model.coord_index(k), "add"))
    return [(idx, kind) for idx, kind in out if f.degree(idx) > 0]


def derivative(f, nu):
    """``Op_nu f`` with ``nu`` a dict ``{(idx, kind): order}``.

    ``mult`` directions apply ``T^mu -> binom(mu, nu) T^mu``; ``add`` directions
    the Hasse derivative ``T^mu -> binom(mu, nu) T^(mu - nu)``.
    """
    out = {}
    for mu, c in f.terms:
        factor = 1
        new = list(mu)
        for (idx, kind), k in nu.items():
            if mu[idx] < k:
                factor = 0
                break
            factor *= comb(mu[idx], k)
            if kind == "add":
                new[idx] -= k
        if factor:
            key = tuple(new)
            out[key] = out.get(key, ZERO) + c * factor
    return normalize_poly(f.model, out)


def star_eval(x, tau_t, f):
    """``min_nu val|Op_nu f (x)| + |nu| tau_t``: the value of ``f`` at the flowed point."""
    tau_t = q(tau_t)
    if tau_t is INF:
        return seminorm_eval(x, f)
    dirs = _directions(x, f)
    best = INF
    for orders in product(*(range(f.degree(idx) + 1) for idx, _ in dirs)):
        nu = {d: k for d, k in zip(dirs, orders) if k}
        val = ext_add(seminorm_eval(x, derivative(f, nu)), sum(orders) * tau_t)
        if val < best:
            best = val
    return best


def flow(x, tau_t):
    """The point ``Phi(x, t)`` with ``tau_t = -log t``."""
    tau_t = q(tau_t)
    if tau_t is not INF and tau_t < 0:
        raise DomainError("flow parameter must be non-negative")
    div = tuple((c, min(u, ext_add(tau_t, c.val()))) for c, u in x.div)
    ball = tuple((c, min(u, tau_t)) for c, u in x.ball)
    return make_point(x.model, x.v, div, ball, closure=x.closure)


def flow_injectivity_window(x):
    """Least ``tau*`` with ``flow(x, tau) == x`` for all ``tau >= tau*``."""
    out = Fraction(0)
    for c, u in x.div:
        if c:
            out = max(out, INF if u is INF else max(Fraction(0), u - c.val()))
    for c, u in x.ball:
        out = max(out, u)
    return out


# reduction


def reduction_stratum(x):
    """Stratum containing ``red(x)`` and whether ``red(x)`` is its generic point."""
    model = x.model
    subsets = [tuple(j for j, w in enumerate(row) if w > 0) for row in x.v]
    T = tuple(k + 1 for k, (c, u) in enumerate(x.div) if min(c.val(), u) > 0)
    generic = all(not c for c, _ in x.div) and all(
        (not c and u == 0) for c, u in x.ball
    )
    return stratum_id(subsets if model.p else [], T), generic


# epsilon approximation


@dataclass(frozen=True)
class EpsilonLevel:
    """The level ``S_eps`` for ``eps_val = -log(eps) >= 0``."""

    model: StandardPairModel
    eps_val: Fraction

    def contains(self, x):
        return all(min(c.val(), u) <= self.eps_val for c, u in x.div)

    def trop(self, x):
        if not self.contains(x):
            raise DomainError("point is outside S_eps")
        y = trop(x).y
        return x.v, tuple((self.eps_val - w, w) for w in y)

    def sigma(self, v, pairs):
        for a, b in pairs:
            if a < 0 or b < 0 or a + b != self.eps_val:
                raise DomainError("coordinates do not lie in Delta(1, eps)")
        div = tuple((ZERO, b) for _, b in pairs)
        ball = tuple((ZERO, Fraction(0)) for _ in range(self.model.d - self.model.s))
        return make_point(self.model, v, div, ball)

    def in_skeleton(self, x):
        return self.contains(x) and self.sigma(*self.trop(x)) == x

    def shift(self, pair, other):
        """``Delta(1, eps) -> Delta(1, eps')``: ``(x0, x1) -> (x0 + eps' - eps, x1)``."""
        if other.eps_val < self.eps_val:
            raise DomainError("levels must increase")
        x0, x1 = pair
        return (x0 + other.eps_val - self.eps_val, x1)


def epsilon_data(model, eps_val, eps2_val):
    lo, hi = EpsilonLevel(model, q(eps_val)), EpsilonLevel(model, q(eps2_val))
    return lo.contains, (lambda pair: lo.shift(pair, hi))


# closure


def closure_membership(model, pt):
    """``"S"``, ``"S(H)"`` or ``"outside"`` for a point of ``Delta(n, r, s)`` with ``y`` in ``[0, INF]``."""
    E = model.shape
    try:
        where = contains(E, RealizationPoint(pt.x, pt.y, True))
    except DescriptorError:
        return "outside"
    if where == "outside":
        return "outside"
    if all(v is not INF for v in pt.y):
        return "S"
    return "S(H)"
