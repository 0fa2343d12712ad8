"""Poly-simplices, extended colored poly-simplices and their morphisms.

A poly-simplex ``[n] = [n_1] x ... x [n_p]`` is stored through its tuple ``n``;
the empty product is written ``n = (0,)`` and has the single point ``()``.
Factor indices are 0-based throughout, so a morphism stores

* ``f``: a tuple of length ``p`` whose entry ``i`` is ``f(i)`` or ``None``
  when ``i`` is not in ``J``;
* ``c``: one table per target factor ``l``.  For ``l`` in the image of ``f``
  the table lists ``c_l(0), ..., c_l(n_{f^-1(l)})``; otherwise it is the
  one-element table ``(c_l(0),)``;
* ``g``: the values ``g(0), ..., g(s)`` with ``g(0) == 0``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from .errors import CompositionError, DescriptorError
from .extended import INF, q


def _check_n(n):
    n = tuple(int(k) for k in n)
    if n == (0,):
        return n
    if not n or any(k < 1 for k in n):
        raise DescriptorError(f"bad poly-simplex shape {n!r}")
    return n


def n_factors(n):
    return 0 if n == (0,) else len(n)


def carrier(n):
    """All points of ``[n]`` as tuples, lexicographically."""
    if n == (0,):
        return [()]
    return list(product(*(range(k + 1) for k in n)))


def hamming(a, b):
    return sum(1 for u, v in zip(a, b) if u != v)


@dataclass(frozen=True)
class PolySimplex:
    n: tuple

    def __post_init__(self):
        object.__setattr__(self, "n", _check_n(self.n))

    @property
    def p(self):
        return n_factors(self.n)

    def carrier(self):
        return carrier(self.n)

    def size(self):
        out = 1
        for k in self.n:
            out *= k + 1
        return out


def _color_key(r):
    return (1, Fraction(0)) if r is INF else (0, r)


@dataclass(frozen=True)
class ExtendedPolySimplex:
    """The shape ``[n, r, s]``; ``dim == |n| + s``."""

    n: tuple
    r: tuple
    s: int = 0

    def __post_init__(self):
        n = _check_n(self.n)
        r = tuple(q(x) for x in self.r)
        if len(r) != len(n):
            raise DescriptorError(f"colors {r!r} do not match shape {n!r}")
        if n == (0,):
            if r != (0,):
                raise DescriptorError("the empty product carries the color (0)")
        elif any(x is not INF and x <= 0 for x in r):
            raise DescriptorError(f"colors must be positive, got {r!r}")
        s = int(self.s)
        if s < 0:
            raise DescriptorError("s must be non-negative")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    @property
    def p(self):
        return n_factors(self.n)

    @property
    def base(self):
        return PolySimplex(self.n)

    @property
    def dim(self):
        return (0 if self.p == 0 else sum(self.n)) + self.s

    def carrier(self):
        return carrier(self.n)

    def colors(self):
        """Colors of the genuine factors (empty when ``p == 0``)."""
        return self.r if self.p else ()

    def __str__(self):
        from .extended import fmt_q

        return "[({}), ({}), {}]".format(
            ",".join(map(str, self.n)), ",".join(fmt_q(x) for x in self.r), self.s
        )


def make_shape(factors, s=0):
    """Build a shape from ``[(n_i, r_i), ...]``; an empty list gives ``[(0),(0),s]``."""
    factors = list(factors)
    if not factors:
        return ExtendedPolySimplex((0,), (0,), s)
    return ExtendedPolySimplex(tuple(k for k, _ in factors), tuple(r for _, r in factors), s)


@dataclass(frozen=True)
class PSMorphism:
    source: ExtendedPolySimplex
    target: ExtendedPolySimplex
    f: tuple
    c: tuple
    g: tuple

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(None if v is None else int(v) for v in self.f))
        object.__setattr__(self, "c", tuple(tuple(int(v) for v in t) for t in self.c))
        object.__setattr__(self, "g", tuple(int(v) for v in self.g))
        self._validate()

    def _validate(self):
        E, F = self.source, self.target
        p, pp = E.p, F.p
        if len(self.f) != p:
            raise DescriptorError("f must have one entry per source factor")
        images = [v for v in self.f if v is not None]
        if len(set(images)) != len(images) or any(not 0 <= v < pp for v in images):
            raise DescriptorError("f must be an injective map J -> {factors of target}")
        if len(self.c) != pp:
            raise DescriptorError("c needs one table per target factor")
        finv = self.finv
        for l in range(pp):
            table = self.c[l]
            if l in finv:
                i = finv[l]
                if len(table) != E.n[i] + 1:
                    raise DescriptorError(f"c_{l} has the wrong length")
                if len(set(table)) != len(table):
                    raise DescriptorError(f"c_{l} must be injective")
                if E.r[i] != F.r[l]:
                    raise DescriptorError(
                        f"color mismatch r_{i} = {E.r[i]} != r'_{l} = {F.r[l]}"
                    )
            elif len(table) != 1:
                raise DescriptorError(f"collapsed factor {l} needs a single value c_l(0)")
            if any(not 0 <= v <= F.n[l] for v in table):
                raise DescriptorError(f"c_{l} leaves [{F.n[l]}]")
        if len(self.g) != E.s + 1 or self.g[0] != 0:
            raise DescriptorError("g must list g(0..s) with g(0) = 0")
        hits = [v for v in self.g[1:] if v != 0]
        if any(not 0 <= v <= F.s for v in self.g) or len(set(hits)) != len(hits):
            raise DescriptorError("every k >= 1 may have at most one g-preimage")

    @property
    def J(self):
        return frozenset(i for i, v in enumerate(self.f) if v is not None)

    @property
    def finv(self):
        return {v: i for i, v in enumerate(self.f) if v is not None}

    def __call__(self, pt):
        return apply_morphism(self, pt)


def apply_morphism(F, pt):
    pt = tuple(pt)
    if len(pt) != F.source.p:
        raise DescriptorError(f"point {pt!r} does not lie in {F.source}")
    if any(not 0 <= j <= k for j, k in zip(pt, F.source.n)):
        raise DescriptorError(f"point {pt!r} does not lie in {F.source}")
    finv = F.finv
    out = []
    for l, table in enumerate(F.c):
        out.append(table[pt[finv[l]]] if l in finv else table[0])
    return tuple(out)


def identity(E):
    return PSMorphism(E, E, tuple(range(E.p)), tuple(tuple(range(k + 1)) for k in E.n[: E.p]),
                      tuple(range(E.s + 1)))


def compose(G, F):
    """``G o F``; requires ``F.target == G.source``."""
    if F.target != G.source:
        raise CompositionError(f"cannot compose: {F.target} != {G.source}")
    fin_G = G.finv
    f = tuple(None if v is None else G.f[v] for v in F.f)
    c = []
    for m, tab_G in enumerate(G.c):
        if m in fin_G:
            c.append(tuple(tab_G[v] for v in F.c[fin_G[m]]))
        else:
            c.append(tab_G)
    g = tuple(G.g[v] for v in F.g)
    return PSMorphism(F.source, G.target, f, tuple(c), g)


def total_map(F):
    return {pt: apply_morphism(F, pt) for pt in F.source.carrier()}


def c_injective(F):
    return len(set(total_map(F).values())) == F.source.base.size()


def g_injective(F):
    return len(set(F.g)) == len(F.g)


def classify(F):
    """``"isomorphism"``, ``"injective"`` or ``"general"``."""
    inj_c = F.source.p == 0 or len(F.J) == F.source.p
    if not (inj_c and g_injective(F)):
        return "general"
    if F.source.base.size() == F.target.base.size() and F.source.s == F.target.s:
        return "isomorphism"
    return "injective"


def inverse(F):
    if classify(F) != "isomorphism":
        raise DescriptorError("only isomorphisms can be inverted")
    E, T = F.source, F.target
    f = [None] * T.p
    c = [None] * E.p
    for i, l in enumerate(F.f):
        f[l] = i
        table = [0] * len(F.c[l])
        for k, v in enumerate(F.c[l]):
            table[v] = k
        c[i] = tuple(table)
    g = [0] * (T.s + 1)
    for j, k in enumerate(F.g):
        g[k] = j
    return PSMorphism(T, E, tuple(f), tuple(c), tuple(g))


def morphism_from_map(source, target, mapping, g=None):
    """Recover morphism data from a carrier map (a dict or callable).

    The map has to be of the form produced by morphism data, which holds in
    particular for every injective isometric map of carriers.
    """
    get = mapping if callable(mapping) else mapping.__getitem__
    g = tuple(range(source.s + 1)) if g is None else tuple(g)
    zero = tuple(0 for _ in range(source.p))
    base = tuple(get(zero))
    if len(base) != target.p:
        raise DescriptorError("map values do not lie in the target carrier")
    f = [None] * source.p
    c = [None] * target.p
    for i in range(source.p):
        moved = set()
        for j in range(1, source.n[i] + 1):
            pt = list(zero)
            pt[i] = j
            img = tuple(get(tuple(pt)))
            moved |= {l for l in range(target.p) if img[l] != base[l]}
        if len(moved) > 1:
            raise DescriptorError(f"source factor {i} moves several target factors")
        if moved:
            (l,) = moved
            if c[l] is not None:
                raise DescriptorError(f"target factor {l} is hit twice")
            f[i] = l
            table = []
            for j in range(source.n[i] + 1):
                pt = list(zero)
                pt[i] = j
                table.append(get(tuple(pt))[l])
            c[l] = tuple(table)
    for l in range(target.p):
        if c[l] is None:
            c[l] = (base[l],)
    F = PSMorphism(source, target, tuple(f), tuple(c), g)
    for pt in source.carrier():
        if apply_morphism(F, pt) != tuple(get(pt)):
            raise DescriptorError("the carrier map is not induced by morphism data")
    return F


def image_key(F):
    """``(per-factor image sets of c, nonzero image of g)``; keys faces of the target."""
    images = [set() for _ in range(F.target.p)]
    for pt in F.source.carrier():
        for l, v in enumerate(apply_morphism(F, pt)):
            images[l].add(v)
    return (
        tuple(frozenset(s) for s in images),
        frozenset(v for v in F.g[1:] if v != 0),
    )


def _nonempty_subsets(k):
    items = range(k + 1)
    for size in range(1, k + 2):
        yield from combinations(items, size)


def face_morphism(E, subsets, T):
    """Canonical embedding of the face of ``E`` picked by ``subsets`` and ``T``."""
    subsets = [tuple(sorted(S)) for S in subsets]
    T = tuple(sorted(T))
    kept = [l for l, S in enumerate(subsets) if len(S) >= 2]
    face = make_shape([(len(subsets[l]) - 1, E.r[l]) for l in kept], len(T))
    f = tuple(kept)
    c = tuple(subsets[l] if len(subsets[l]) >= 2 else (subsets[l][0],) for l in range(E.p))
    return face, PSMorphism(face, E, f, c, (0,) + T)


def enumerate_faces(E):
    """One ``(shape, embedding)`` per face; ``prod(2^(n_l+1) - 1) * 2^s`` entries."""
    per_factor = [list(_nonempty_subsets(k)) for k in E.n[: E.p]]
    out = []
    for subsets in product(*per_factor):
        for size in range(E.s + 1):
            for T in combinations(range(1, E.s + 1), size):
                out.append(face_morphism(E, subsets, T))
    return out


def face_count(E):
    total = 2 ** E.s
    for k in E.n[: E.p]:
        total *= 2 ** (k + 1) - 1
    return total


def canonical_form(E):
    """Sort factors by ``(n_i, color)``; returns ``(E_sorted, iso E -> E_sorted)``."""
    if E.p == 0:
        return E, identity(E)
    order = sorted(range(E.p), key=lambda i: (E.n[i], _color_key(E.r[i]), i))
    Es = ExtendedPolySimplex(tuple(E.n[i] for i in order), tuple(E.r[i] for i in order), E.s)
    pos = {i: k for k, i in enumerate(order)}
    f = tuple(pos[i] for i in range(E.p))
    c = tuple(tuple(range(E.n[i] + 1)) for i in order)
    return Es, PSMorphism(E, Es, f, c, tuple(range(E.s + 1)))


def all_morphisms(E, T):
    """Brute-force enumeration of every morphism ``E -> T`` (small shapes only)."""
    p, pp = E.p, T.p
    g_choices = [
        (0,) + gs
        for gs in product(range(T.s + 1), repeat=E.s)
        if len([v for v in gs if v]) == len({v for v in gs if v})
    ]
    out = []
    for size in range(min(p, pp) + 1):
        for Jt in combinations(range(p), size):
            for targets in permutations(range(pp), size):
                fmap = dict(zip(Jt, targets))
                if any(E.r[i] != T.r[l] for i, l in fmap.items()):
                    continue
                f = tuple(fmap.get(i) for i in range(p))
                finv = {l: i for i, l in fmap.items()}
                tables = []
                for l in range(pp):
                    if l in finv:
                        tables.append(list(permutations(range(T.n[l] + 1), E.n[finv[l]] + 1)))
                    else:
                        tables.append([(v,) for v in range(T.n[l] + 1)])
                for c in product(*tables):
                    for g in g_choices:
                        out.append(PSMorphism(E, T, f, c, g))
    return out


def factorize_metric(points, dist):
    """Find ``[n]`` and an isometric bijection ``points -> [n]`` if one exists.

    ``dist`` is either a callable or a mapping keyed by ``(a, b)``.  Returns
    ``(PolySimplex, labels)`` with ``labels`` a dict, or ``None``.
    """
    points = list(points)
    d = dist if callable(dist) else (lambda a, b: dist[(a, b)])
    if not points:
        return None
    base = points[0]
    if len(points) == 1:
        return PolySimplex((0,)), {base: ()}
    nbrs = [u for u in points if d(base, u) == 1]
    classes = []
    for u in nbrs:
        for cls in classes:
            if d(u, cls[0]) == 1:
                cls.append(u)
                break
        else:
            classes.append([u])
    for a, ca in enumerate(classes):
        for b, cb in enumerate(classes):
            for u in ca:
                for v in cb:
                    if u != v and d(u, v) != (1 if a == b else 2):
                        return None
    classes.sort(key=len)
    n = tuple(len(cls) for cls in classes)
    labels = {}
    for x in points:
        dx = d(x, base)
        coords = []
        for cls in classes:
            hits = [k + 1 for k, u in enumerate(cls) if d(x, u) == dx - 1]
            if len(hits) > 1:
                return None
            coords.append(hits[0] if hits else 0)
        labels[x] = tuple(coords)
    if len(set(labels.values())) != len(points) or len(points) != PolySimplex(n).size():
        return None
    for a in points:
        for b in points:
            if d(a, b) != hamming(labels[a], labels[b]):
                return None
    return PolySimplex(n), labels
