"""Canonical polyhedra, face embeddings, gluing and the coequalizer quotient."""

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DescriptorError, ValidationError
from .geometry import contains, preimage, realize_morphism
from .polysimplex import (
    PSMorphism,
    classify,
    compose,
    identity,
    image_key,
    inverse,
    morphism_from_map,
)
from .strata import Chart, restriction_maps, validate_descriptor


def _chart_of(desc, x):
    return desc.by_id[x].chart


def chart_change(C, D):
    """The isomorphism ``h_{C,D}`` built from ``alpha_D^-1 o alpha_C`` and ``gamma_D^-1 o gamma_C``."""
    if set(C.alpha_inv) != set(D.alpha_inv) or set(C.gamma) != set(D.gamma):
        raise DescriptorError("charts belong to different strata")
    g = (0,) + tuple(D.gamma_inv[blk] for blk in C.gamma)
    return morphism_from_map(C.shape, D.shape, lambda pt: D.alpha_inv[C.alpha_map[pt]], g)


def reparametrize(C, iso):
    """The chart ``(E', alpha o c, gamma o g)`` for an isomorphism ``iso: E' -> C.shape``."""
    if iso.target != C.shape or classify(iso) != "isomorphism":
        raise DescriptorError("need an isomorphism onto the chart's shape")
    E = iso.source
    alpha = tuple((pt, C.alpha_map[iso(pt)]) for pt in E.carrier())
    gamma = tuple(C.gamma[iso.g[m] - 1] for m in range(1, E.s + 1))
    return Chart(E, tuple(sorted(alpha)), gamma)


def random_isomorphism(E, rng):
    """A random isomorphism ``E' -> E`` (factor permutations respect ``(n_i, r_i)``)."""
    from .polysimplex import ExtendedPolySimplex

    p = E.p
    order = list(range(p))
    rng.shuffle(order)
    src = E if p == 0 else ExtendedPolySimplex(
        tuple(E.n[i] for i in order), tuple(E.r[i] for i in order), E.s
    )
    f = tuple(order)
    c = [None] * p
    for k, i in enumerate(order):
        table = list(range(E.n[i] + 1))
        rng.shuffle(table)
        c[i] = tuple(table)
    perm = list(range(1, E.s + 1))
    rng.shuffle(perm)
    return PSMorphism(src, E, f, tuple(c), (0,) + tuple(perm))


@dataclass(frozen=True)
class ComplexPoint:
    stratum: str
    point: object  # RealizationPoint in the reference chart of ``stratum``


class StrictDualComplex:
    """Faces ``Delta(x)`` in their reference charts, glued along face embeddings."""

    def __init__(self, desc, validate=True):
        if validate:
            validate_descriptor(desc).raise_if_invalid()
        self.descriptor = desc
        self._emb = {}

    @property
    def ids(self):
        return self.descriptor.ids

    def chart(self, x):
        return _chart_of(self.descriptor, x)

    def shape(self, x):
        return self.chart(x).shape

    def face_embedding(self, x, y):
        """``iota_{y,x}: Delta(y) -> Delta(x)`` for ``x <= y``."""
        if (x, y) not in self._emb:
            self._emb[(x, y)] = restriction_maps(self.descriptor, x, y).morphism
        return self._emb[(x, y)]

    @cached_property
    def _keys(self):
        out = {}
        for x in self.ids:
            out[x] = {image_key(self.face_embedding(x, y)): y for y in self.descriptor.upper(x)}
        return out

    def dim(self, x):
        return self.shape(x).dim

    def f_vector(self):
        top = max(self.dim(x) for x in self.ids)
        vec = [0] * (top + 1)
        for x in self.ids:
            vec[self.dim(x)] += 1
        return vec


def face_embedding(cx, x, y):
    return cx.face_embedding(x, y)


def _support_key(E, pt):
    return (
        tuple(frozenset(j for j, v in enumerate(row) if v != 0) for row in pt.x),
        frozenset(k + 1 for k, v in enumerate(pt.y) if v != 0),
    )


def open_face_of(cx, p):
    """The stratum ``z`` with ``p`` in the open face ``Delta°(z)``."""
    return to_open_face(cx, p).stratum


def to_open_face(cx, p):
    E = cx.shape(p.stratum)
    if contains(E, p.point) == "outside":
        raise DescriptorError(f"point does not lie in Delta({p.stratum})")
    key = _support_key(E, p.point)
    z = cx._keys[p.stratum].get(key)
    if z is None:
        raise DescriptorError("support pattern matches no face")
    pre = preimage(cx.face_embedding(p.stratum, z), p.point)
    return ComplexPoint(z, pre)


def points_equal(cx, p, q):
    desc = cx.descriptor
    for z in desc.upper(p.stratum):
        if not desc.leq(q.stratum, z):
            continue
        a = preimage(cx.face_embedding(p.stratum, z), p.point)
        if a is None:
            continue
        b = preimage(cx.face_embedding(q.stratum, z), q.point)
        if a == b:
            return True
    return False


def face_intersection(cx, x, y):
    desc = cx.descriptor
    return {z for z in desc.upper(x) if desc.leq(y, z)}


@dataclass
class DescentData:
    base: StrictDualComplex
    classes: list
    witnesses: dict = field(default_factory=dict)  # (y, y') -> isomorphism chart(y) -> chart(y')


class GluedComplex:
    def __init__(self, descent, reps, iso, class_of):
        self.descent = descent
        self.reps = reps  # class index -> representative id
        self.iso = iso  # y -> isomorphism Delta(y) -> Delta(rep)
        self.class_of = class_of

    @property
    def base(self):
        return self.descent.base

    def classes(self):
        return list(range(len(self.reps)))

    def dim(self, k):
        return self.base.dim(self.reps[k])

    def f_vector(self):
        top = max(self.dim(k) for k in self.classes())
        vec = [0] * (top + 1)
        for k in self.classes():
            vec[self.dim(k)] += 1
        return vec

    def pi(self, p):
        """Normal form ``(class, point in Delta°(rep))`` of a point of the strict complex."""
        op = to_open_face(self.base, p)
        k = self.class_of[op.stratum]
        return k, realize_morphism(self.iso[op.stratum], op.point)

    def same(self, p, q):
        return self.pi(p) == self.pi(q)

    def embeddings(self):
        """Face relations of the quotient: ``(class, coface class, via, morphism)``.

        ``morphism`` maps ``Delta(rep of coface)`` into ``Delta(rep of class)``
        through the member ``via`` above the representative.
        """
        out = []
        desc = self.base.descriptor
        for k, rho in enumerate(self.reps):
            for z in desc.upper(rho):
                if z == rho:
                    continue
                kz = self.class_of[z]
                m = compose(self.base.face_embedding(rho, z), inverse(self.iso[z]))
                out.append((k, kz, z, m))
        return out


def _groupoid(descent, members):
    """Isomorphisms from each member to the class representative via BFS."""
    rep = members[0]
    shape = descent.base.shape
    to_rep = {rep: identity(shape(rep))}
    adj = {}
    for (a, b), h in descent.witnesses.items():
        if a in members and b in members:
            adj.setdefault(a, []).append((b, h, False))
            adj.setdefault(b, []).append((a, h, True))
    queue = deque([rep])
    while queue:
        a = queue.popleft()
        for b, h, rev in adj.get(a, []):
            if b in to_rep:
                continue
            # h: a -> b, or b -> a when rev
            h_ba = h if rev else inverse(h)
            to_rep[b] = compose(to_rep[a], h_ba)
            queue.append(b)
    return to_rep


def validate_descent(descent):
    """Return a list of ``(condition, message)`` violations."""
    cx = descent.base
    desc = cx.descriptor
    bad = []
    flat = [y for cls in descent.classes for y in cls]
    if sorted(flat) != sorted(desc.ids):
        bad.append(("Partition", "classes do not partition the strata"))
        return bad
    class_of = {y: k for k, cls in enumerate(descent.classes) for y in cls}
    for (a, b), h in descent.witnesses.items():
        if a not in class_of or b not in class_of or class_of[a] != class_of[b]:
            bad.append(("IntersectionComplexMap", f"witness {a}->{b} crosses classes"))
            continue
        if h.source != cx.shape(a) or h.target != cx.shape(b) or classify(h) != "isomorphism":
            bad.append(("IntersectionComplexMap", f"witness {a}->{b} is not an isomorphism of faces"))
    if bad:
        return bad
    to_rep = {}
    for cls in descent.classes:
        members = sorted(cls)
        tr = _groupoid(descent, members)
        if len(tr) != len(members):
            bad.append(("IntersectionComplexMap", f"class {members} is not connected by witnesses"))
            continue
        to_rep.update(tr)
    if bad:
        return bad
    for (a, b), h in descent.witnesses.items():
        if compose(to_rep[b], h) != to_rep[a]:
            bad.append(("IntersectionComplexMap", f"witnesses do not compose consistently at {a}->{b}"))
    if bad:
        return bad
    # quotient order must be a partial order and lift from every member
    ncls = len(descent.classes)
    qleq = {(class_of[x], class_of[y]) for x, y in desc.order}
    for a, b in qleq:
        if a != b and (b, a) in qleq:
            bad.append(("StrataFaceCorresp", f"classes {a} and {b} are mutually <="))
    for k in range(ncls):
        for y in descent.classes[k]:
            for kk in range(ncls):
                if (k, kk) in qleq and not any(desc.leq(y, z) for z in descent.classes[kk]):
                    bad.append(("StrataFaceCorresp", f"{y} has no lift into class {kk}"))
    if bad:
        return bad
    # embeddings are compatible with the witnesses
    for y in desc.ids:
        for yp in descent.classes[class_of[y]]:
            h = compose(inverse(to_rep[yp]), to_rep[y])  # y -> y'
            for z in desc.upper(y):
                lhs = compose(h, cx.face_embedding(y, z))
                ok = False
                for zp in descent.classes[class_of[z]]:
                    if not desc.leq(yp, zp):
                        continue
                    hz = compose(inverse(to_rep[zp]), to_rep[z])
                    if compose(cx.face_embedding(yp, zp), hz) == lhs:
                        ok = True
                        break
                if not ok:
                    bad.append(("FaceFacts", f"embedding of {z} into {y} does not descend to {yp}"))
    return bad


def coequalize(descent):
    bad = validate_descent(descent)
    if bad:
        raise ValidationError(bad)
    class_of = {}
    reps = []
    iso = {}
    for k, cls in enumerate(descent.classes):
        members = sorted(cls)
        reps.append(members[0])
        iso.update(_groupoid(descent, members))
        for y in members:
            class_of[y] = k
    return GluedComplex(descent, reps, iso, class_of)


def trivial_descent(cx):
    return DescentData(cx, [[x] for x in cx.ids], {})


def nodal_curve_descriptor(r=1):
    """Two components ``V1``, ``V2`` meeting in one point ``e``: a segment with two vertices."""
    from .polysimplex import ExtendedPolySimplex
    from .strata import build_descriptor, make_chart

    point = ExtendedPolySimplex((0,), (0,), 0)
    seg = ExtendedPolySimplex((1,), (r,), 0)
    strata = [
        ("v1", {"V1"}, make_chart(point, {(): "V1"}, [])),
        ("v2", {"V2"}, make_chart(point, {(): "V2"}, [])),
        ("e", {"V1", "V2"}, make_chart(seg, {(0,): "V1", (1,): "V2"}, [])),
    ]
    return build_descriptor(["V1", "V2"], [], {}, strata, [("e", "v1"), ("e", "v2")])


def nodal_curve_descent(r=1):
    """Identify the two vertices of the segment: the dual complex of a nodal curve."""
    cx = StrictDualComplex(nodal_curve_descriptor(r))
    point = cx.shape("v1")
    return DescentData(cx, [["v1", "v2"], ["e"]], {("v1", "v2"): identity(point)})
