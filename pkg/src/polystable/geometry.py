"""Geometric realizations ``Delta(n, r, s)`` and locally affine linear functions."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DescriptorError
from .extended import INF, ext_add, ext_mul, ext_sum, q
from .polysimplex import ExtendedPolySimplex


@dataclass(frozen=True)
class RealizationPoint:
    """``x[i][j]`` for the simplex factors and ``y[k]`` for the orthant.

    ``closure`` allows ``y[k] == INF``.
    """

    x: tuple
    y: tuple = ()
    closure: bool = False

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(tuple(q(v) for v in row) for row in self.x))
        object.__setattr__(self, "y", tuple(q(v) for v in self.y))


def point(x, y=(), closure=False):
    return RealizationPoint(x, y, closure)


def _check_shape(E, pt):
    if len(pt.x) != E.p or len(pt.y) != E.s:
        raise DescriptorError(f"point shape does not match {E}")
    for row, k in zip(pt.x, E.n):
        if len(row) != k + 1:
            raise DescriptorError(f"point shape does not match {E}")


def contains(E, pt):
    """``"outside"``, ``"boundary"`` or ``"interior"``."""
    _check_shape(E, pt)
    for row, r in zip(pt.x, E.r):
        if any(v is not INF and v < 0 for v in row):
            return "outside"
        if r is INF:
            if INF not in row:
                return "outside"
        elif INF in row or sum(row) != r:
            return "outside"
    for v in pt.y:
        if v is INF:
            if not pt.closure:
                return "outside"
        elif v < 0:
            return "outside"
    if any(v == 0 for row in pt.x for v in row) or any(v == 0 for v in pt.y):
        return "boundary"
    return "interior"


def vertices(E):
    """Vertices of ``Delta(n, r, s)`` (finite colors only): ``r_i`` at one slot per factor."""
    out = []
    for pt in E.carrier():
        x = tuple(
            tuple(E.r[i] if j == pt[i] else Fraction(0) for j in range(E.n[i] + 1))
            for i in range(E.p)
        )
        out.append(RealizationPoint(x, (0,) * E.s))
    return out


def realize_morphism(F, pt):
    """Realization ``Delta(F)`` of a morphism, applied to a point of the source."""
    E, T = F.source, F.target
    _check_shape(E, pt)
    finv = F.finv
    u = []
    for l, table in enumerate(F.c):
        row = [Fraction(0)] * (T.n[l] + 1)
        if l in finv:
            src = pt.x[finv[l]]
            for k, j in enumerate(table):
                row[j] = src[k]
        else:
            row[table[0]] = T.r[l]
        u.append(tuple(row))
    v = [Fraction(0)] * T.s
    for j in range(1, E.s + 1):
        if F.g[j]:
            v[F.g[j] - 1] = pt.y[j - 1]
    return RealizationPoint(tuple(u), tuple(v), pt.closure)


def preimage(F, pt):
    """Un-project a target point through an injective morphism, or ``None``."""
    E, T = F.source, F.target
    _check_shape(T, pt)
    finv = F.finv
    x = [None] * E.p
    for l, table in enumerate(F.c):
        row = pt.x[l]
        off = [row[j] for j in range(len(row)) if j not in table]
        if any(v != 0 for v in off):
            return None
        if l in finv:
            x[finv[l]] = tuple(row[j] for j in table)
        elif row[table[0]] != T.r[l]:
            return None
    if any(v is None for v in x):
        return None
    hit = {F.g[j]: j for j in range(1, E.s + 1) if F.g[j]}
    if any(pt.y[k - 1] != 0 for k in range(1, T.s + 1) if k not in hit):
        return None
    y = tuple(pt.y[F.g[j] - 1] if F.g[j] else Fraction(0) for j in range(1, E.s + 1))
    out = RealizationPoint(tuple(x), y, pt.closure)
    if contains(E, out) == "outside" or realize_morphism(F, out) != pt:
        return None
    return out


@dataclass(frozen=True)
class AffineLinearFunction:
    """``lam + sum a[i][j] x_ij + sum b[k] y_k`` on ``Delta(shape)``.

    Build through :func:`affine`, which normalizes finite-color factors so that
    some ``a[i][j]`` vanishes.
    """

    shape: ExtendedPolySimplex
    lam: Fraction
    a: tuple
    b: tuple


def affine(E, lam=0, a=None, b=None):
    a = [list(int(v) for v in row) for row in (a or [[0] * (k + 1) for k in E.n[: E.p]])]
    b = tuple(int(v) for v in (b or [0] * E.s))
    lam = q(lam)
    if len(a) != E.p or any(len(row) != k + 1 for row, k in zip(a, E.n)) or len(b) != E.s:
        raise DescriptorError("coefficient shape does not match the poly-simplex")
    if any(v < 0 for row in a for v in row) or any(v < 0 for v in b):
        raise DescriptorError("coefficients must be natural numbers")
    for i, row in enumerate(a):
        if E.r[i] is INF:
            continue
        m = min(row)
        if m:
            a[i] = [v - m for v in row]
            lam = ext_add(lam, m * E.r[i])
    if lam is INF or lam < 0:
        raise DescriptorError("the constant term must lie in the value group")
    return AffineLinearFunction(E, lam, tuple(tuple(row) for row in a), b)


def eval_affine(h, pt):
    _check_shape(h.shape, pt)
    terms = [h.lam]
    for row_a, row_x in zip(h.a, pt.x):
        terms.extend(ext_mul(a, x) for a, x in zip(row_a, row_x))
    terms.extend(ext_mul(b, y) for b, y in zip(h.b, pt.y))
    return ext_sum(terms)


def pullback_affine(F, h):
    if h.shape != F.target:
        raise DescriptorError("function lives on a different poly-simplex")
    E, T = F.source, F.target
    lam = h.lam
    a = [[0] * (k + 1) for k in E.n[: E.p]]
    finv = F.finv
    for l, table in enumerate(F.c):
        if l in finv:
            for k, j in enumerate(table):
                a[finv[l]][k] = h.a[l][j]
        else:
            lam = ext_add(lam, ext_mul(h.a[l][table[0]], T.r[l]))
    if lam is INF:
        raise DescriptorError("pullback leaves the value group (infinite constant)")
    b = [h.b[F.g[j] - 1] if F.g[j] else 0 for j in range(1, E.s + 1)]
    return affine(E, lam, a, b)
