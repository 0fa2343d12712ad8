"""Stratification data of strictly poly-stable pairs.

A descriptor lists the irreducible components of the special fiber (``X``
labels) and of the divisor (``H`` labels), the strata as subsets ``A`` of
these labels, the specialization order and one combinatorial chart per
stratum.  ``x <= y`` means that the stratum ``x`` lies in the closure of
``y``; the least stratum is the most special one.

For a standard pair the components are indexed by the carrier ``[n]`` and by
``[n] x {1..s}``; the stratum with factor subsets ``S_i`` and divisor subset
``T`` has ``A = prod S_i  +  prod S_i x T``.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

from .errors import DescriptorError, ValidationError
from .extended import INF, q
from .polysimplex import (
    ExtendedPolySimplex,
    face_morphism,
    enumerate_faces,
    factorize_metric,
    hamming,
    image_key,
    morphism_from_map,
)


def xlabel(pt):
    return "X[" + ",".join(map(str, pt)) + "]"


def hlabel(pt, k):
    return "H[" + ",".join(map(str, pt)) + "|" + str(k) + "]"


def stratum_id(subsets, T):
    return "[" + ";".join(",".join(map(str, sorted(S))) for S in subsets) + "|" + \
        ",".join(map(str, sorted(T))) + "]"


@dataclass(frozen=True)
class ComponentTable:
    x_components: tuple
    h_components: tuple
    container: tuple  # pairs (H label, X label)

    @cached_property
    def container_map(self):
        return dict(self.container)


@dataclass(frozen=True)
class Chart:
    """``shape`` with ``alpha`` (carrier point -> X label) and ``gamma`` (D-blocks)."""

    shape: ExtendedPolySimplex
    alpha: tuple  # pairs (carrier point, X label), sorted by point
    gamma: tuple  # gamma[m - 1] is the block labelled m

    @cached_property
    def alpha_map(self):
        return dict(self.alpha)

    @cached_property
    def alpha_inv(self):
        return {v: k for k, v in self.alpha}

    @cached_property
    def gamma_inv(self):
        return {blk: m + 1 for m, blk in enumerate(self.gamma)}


def make_chart(shape, alpha, gamma):
    alpha = tuple(sorted((tuple(k), v) for k, v in dict(alpha).items()))
    gamma = tuple(frozenset(b) for b in gamma)
    return Chart(shape, alpha, gamma)


@dataclass(frozen=True)
class StratumRecord:
    id: str
    kind: str  # "X" or "H"
    A: frozenset
    chart: Chart


@dataclass(frozen=True)
class PairDescriptor:
    components: ComponentTable
    strata: tuple
    order: frozenset  # pairs (x, y) meaning x <= y; reflexive and transitive

    @cached_property
    def by_id(self):
        return {rec.id: rec for rec in self.strata}

    @cached_property
    def ids(self):
        return [rec.id for rec in self.strata]

    def leq(self, x, y):
        return (x, y) in self.order

    @cached_property
    def _upper(self):
        up = {i: set() for i in self.ids}
        for x, y in self.order:
            if x in up:
                up[x].add(y)
        return up

    def upper(self, x):
        return sorted(self._upper[x])

    def irr_x(self, x):
        xs = set(self.components.x_components)
        return frozenset(a for a in self.by_id[x].A if a in xs)

    def irr_h(self, x):
        hs = set(self.components.h_components)
        return frozenset(a for a in self.by_id[x].A if a in hs)

    @cached_property
    def heights(self):
        """Length of the longest chain ``x < y_1 < ... < y_k``; the codimension."""
        memo = {}

        def ht(x):
            if x not in memo:
                memo[x] = max((1 + ht(y) for y in self._upper[x] if y != x), default=0)
            return memo[x]

        for x in self.ids:
            ht(x)
        return memo

    def codim(self, x):
        return self.heights[x]


def order_closure(ids, pairs):
    """Reflexive-transitive closure of ``pairs`` on ``ids``."""
    ids = list(ids)
    rel = {i: {i} for i in ids}
    for x, y in pairs:
        if x not in rel or y not in rel:
            raise DescriptorError(f"order mentions unknown stratum {x!r} or {y!r}")
        rel[x].add(y)
    changed = True
    while changed:
        changed = False
        for x in ids:
            new = set().union(*(rel[y] for y in rel[x]))
            if new != rel[x]:
                rel[x] = new
                changed = True
    return frozenset((x, y) for x in ids for y in rel[x])


def build_descriptor(x_components, h_components, container, strata, order_pairs):
    """Assemble a descriptor; ``strata`` is a list of ``(id, A, chart)``."""
    comps = ComponentTable(
        tuple(x_components), tuple(h_components), tuple(sorted(dict(container).items()))
    )
    hs = set(h_components)
    records = []
    for sid, A, chart in strata:
        A = frozenset(A)
        kind = "H" if A & hs else "X"
        records.append(StratumRecord(sid, kind, A, chart))
    order = order_closure([r.id for r in records], order_pairs)
    return PairDescriptor(comps, tuple(records), order)


def standard_descriptor(n, r, d, s):
    """Strata of the standard pair ``(S(n, a, d), G(s))`` with ``val(a) = r``."""
    n = tuple(int(k) for k in n)
    d, s = int(d), int(s)
    if s > d or s < 0:
        raise DescriptorError(f"need 0 <= s <= d, got s={s}, d={d}")
    if n == (0,):
        r = (0,)
    else:
        r = tuple(q(v) for v in r)
        if len(r) != len(n):
            raise DescriptorError("one color per factor is required")
        for v in r:
            if v is INF or v <= 0:
                raise DescriptorError(f"colors must be positive rationals, got {v}")
    E = ExtendedPolySimplex(n, r, s)
    pts = E.carrier()
    xs = [xlabel(pt) for pt in pts]
    hs = [hlabel(pt, k) for pt in pts for k in range(1, s + 1)]
    container = {hlabel(pt, k): xlabel(pt) for pt in pts for k in range(1, s + 1)}
    per_factor = [
        [S for size in range(1, k + 2) for S in combinations(range(k + 1), size)]
        for k in n[: E.p]
    ]
    strata = []
    keys = {}
    for subsets in product(*per_factor):
        box = list(product(*subsets)) if E.p else [()]
        for size in range(s + 1):
            for T in combinations(range(1, s + 1), size):
                face, emb = face_morphism(E, subsets, T)
                alpha = {pt: xlabel(emb(pt)) for pt in face.carrier()}
                gamma = [frozenset(hlabel(b, k) for b in box) for k in T]
                A = {xlabel(b) for b in box} | {hlabel(b, k) for b in box for k in T}
                sid = stratum_id(subsets, T)
                strata.append((sid, A, make_chart(face, alpha, gamma)))
                keys[sid] = (tuple(frozenset(S) for S in subsets), frozenset(T))
    pairs = [
        (x, y)
        for x, (Sx, Tx) in keys.items()
        for y, (Sy, Ty) in keys.items()
        if Ty <= Tx and all(a <= b for a, b in zip(Sy, Sx))
    ]
    return build_descriptor(xs, hs, container, strata, pairs)


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, code, msg):
        self.violations.append((code, msg))

    def codes(self):
        return sorted({c for c, _ in self.violations})

    def raise_if_invalid(self):
        if self.violations:
            raise ValidationError(self.violations)


@dataclass(frozen=True)
class Restriction:
    inclusion: frozenset  # irr(X, y) as a subset of irr(X, x)
    morphism: object  # PSMorphism chart(y).shape -> chart(x).shape
    j: dict  # D_y -> D_x
    k: dict  # D_{x,y} -> D_y


def j_map(desc, x, y):
    """``j_{y,x}``: each block of ``D_y`` to the block of ``D_x`` containing it."""
    out = {}
    for blk in desc.by_id[y].chart.gamma:
        hits = [b for b in desc.by_id[x].chart.gamma if blk <= b]
        if len(hits) != 1:
            raise DescriptorError(
                f"DivInjection: block of {y} lies in {len(hits)} blocks of {x}"
            )
        out[blk] = hits[0]
    return out


def k_map(desc, x, y):
    """``k_{x,y}(I) = I & irr(H, y)`` on the blocks of ``D_x`` meeting ``irr(H, y)``."""
    hy = desc.irr_h(y)
    return {b: frozenset(b & hy) for b in desc.by_id[x].chart.gamma if b & hy}


def restriction_maps(desc, x, y):
    if not desc.leq(x, y):
        raise DescriptorError(f"{x} is not <= {y}")
    cx, cy = desc.by_id[x].chart, desc.by_id[y].chart
    j = j_map(desc, x, y)
    g = (0,) + tuple(cx.gamma_inv[j[cy.gamma[m]]] for m in range(cy.shape.s))
    F = morphism_from_map(cy.shape, cx.shape, lambda pt: cx.alpha_inv[cy.alpha_map[pt]], g)
    return Restriction(desc.irr_x(y), F, j, k_map(desc, x, y))


def least_stratum(desc, restrict_to=None):
    """Unique minimum of the poset (or of the upper set of ``restrict_to``)."""
    pool = desc.ids if restrict_to is None else desc.upper(restrict_to)
    for x in pool:
        if all(desc.leq(x, y) for y in pool):
            return x
    return None


def poset_metric(desc, x):
    """Distance on ``irr(X, x)``: least codimension of a stratum ``y >= x`` containing both."""
    comps = sorted(desc.irr_x(x))
    dist = {}
    for a in comps:
        for b in comps:
            best = min(
                (desc.codim(y) for y in desc.upper(x) if a in desc.by_id[y].A and b in desc.by_id[y].A),
                default=None,
            )
            dist[(a, b)] = best
    return comps, dist


def validate_descriptor(desc):
    rep = ValidationReport()
    comps = desc.components
    xs, hs = set(comps.x_components), set(comps.h_components)
    cont = comps.container_map

    # component table
    if xs & hs:
        rep.add("IrredCompProp", "X and H component labels overlap")
    for h in hs:
        if cont.get(h) not in xs:
            rep.add("IrredCompProp", f"{h} does not lie in exactly one X-component")

    # strata and their defining sets
    seen = set()
    for rec in desc.strata:
        if rec.id in seen:
            rep.add("WellStrat", f"duplicate stratum id {rec.id}")
        seen.add(rec.id)
        if not rec.A <= xs | hs:
            rep.add("StrataForm", f"{rec.id}: unknown component labels")
        ax, ah = rec.A & xs, rec.A & hs
        if not ax:
            rep.add("StrataForm", f"{rec.id}: A contains no X-component")
        if ah and ax != {cont.get(h) for h in ah}:
            rep.add("StrataForm", f"{rec.id}: A & irr(X) differs from the containers of A & irr(H)")
        if rec.kind != ("H" if ah else "X"):
            rep.add("WellStrat", f"{rec.id}: kind {rec.kind} does not match A")
    x_sets = {rec.A for rec in desc.strata if rec.kind == "X"}
    for rec in desc.strata:
        if rec.kind == "H" and rec.A in x_sets:
            rep.add("WellStrat", f"{rec.id}: H-stratum duplicates an X-stratum")

    # order
    for x, y in desc.order:
        if x != y and (y, x) in desc.order:
            rep.add("StrataOrder", f"{x} and {y} are mutually <=")
        if x in desc.by_id and y in desc.by_id and not desc.by_id[y].A <= desc.by_id[x].A:
            rep.add("StrataOrder", f"{x} <= {y} but irr({y}) is not inside irr({x})")
    if not rep.ok:
        return rep

    # charts
    for rec in desc.strata:
        x, ch = rec.id, rec.chart
        E = ch.shape
        if set(ch.alpha_map) != set(E.carrier()) or set(ch.alpha_map.values()) != desc.irr_x(x) \
                or len(set(ch.alpha_map.values())) != len(ch.alpha):
            rep.add("IsomorphIsometric", f"{x}: alpha is not a bijection [n] -> irr(X, x)")
            continue
        comps_x, dist = poset_metric(desc, x)
        for a in comps_x:
            for b in comps_x:
                if dist[(a, b)] != hamming(ch.alpha_inv[a], ch.alpha_inv[b]):
                    rep.add("IsomorphIsometric", f"{x}: alpha is not isometric at {a}, {b}")
                    break
        fact = factorize_metric(comps_x, lambda a, b: dist[(a, b)])
        if fact is None or sorted(fact[0].n) != sorted(E.n):
            rep.add("IsomorphIsometric", f"{x}: component metric does not factor as {E}")
        hx = desc.irr_h(x)
        if len(ch.gamma) != E.s or set().union(*ch.gamma) != hx or \
                sum(len(b) for b in ch.gamma) != len(hx):
            rep.add("BijThm", f"{x}: gamma does not partition irr(H, x) into s_x blocks")
            continue
        for blk in ch.gamma:
            if sorted(cont[h] for h in blk) != sorted(desc.irr_x(x)):
                rep.add("BijThm", f"{x}: a D-block misses or repeats an X-component")
        if desc.codim(x) != E.dim:
            rep.add("DimensionProp", f"{x}: codimension {desc.codim(x)} != |n| + s = {E.dim}")

    # structure maps
    embeddings = {}
    for x, y in sorted(desc.order):
        cx, cy = desc.by_id[x].chart, desc.by_id[y].chart
        try:
            j = j_map(desc, x, y)
        except DescriptorError as exc:
            rep.add("DivInjection", str(exc))
            continue
        if len(set(j.values())) != len(j):
            rep.add("DivInjection", f"j_({y},{x}) is not injective")
        k = k_map(desc, x, y)
        if sorted(map(sorted, k.values())) != sorted(map(sorted, cy.gamma)) or len(k) != len(cy.gamma):
            rep.add("DivInjection", f"k_({x},{y}) is not a bijection onto D_{y}")
        elif any(k[j[b]] != b for b in cy.gamma):
            rep.add("DivInjection", f"k_({x},{y}) o j_({y},{x}) is not the identity")
        try:
            embeddings[(x, y)] = restriction_maps(desc, x, y).morphism
        except DescriptorError as exc:
            rep.add("ColorChangeProp", f"{x} <= {y}: {exc}")
    for x, y in desc.order:
        for z in desc.upper(y):
            try:
                if j_map(desc, x, z) != {b: j_map(desc, x, y)[v] for b, v in j_map(desc, y, z).items()}:
                    rep.add("DivInjection", f"j cocycle fails on {x} <= {y} <= {z}")
            except DescriptorError:
                pass

    for rec in desc.strata:
        x = rec.id
        if any((x, y) not in embeddings for y in desc.upper(x)):
            continue
        want = sorted((image_key(F) for _, F in enumerate_faces(rec.chart.shape)), key=repr)
        got = sorted((image_key(embeddings[(x, y)]) for y in desc.upper(x)), key=repr)
        if want != got:
            rep.add(
                "FaceEmbStr",
                f"{x}: {len(got)} strata above but {len(want)} faces of {rec.chart.shape}",
            )
    return rep


def disjoint_union(d1, d2, prefixes=("a:", "b:")):
    def ren(desc, pre):
        def lab(v):
            return pre + v

        strata = []
        for rec in desc.strata:
            ch = rec.chart
            chart = Chart(ch.shape, tuple((k, lab(v)) for k, v in ch.alpha),
                          tuple(frozenset(map(lab, b)) for b in ch.gamma))
            strata.append((lab(rec.id), {lab(a) for a in rec.A}, chart))
        comps = desc.components
        return (
            [lab(v) for v in comps.x_components],
            [lab(v) for v in comps.h_components],
            {lab(h): lab(v) for h, v in comps.container},
            strata,
            [(lab(x), lab(y)) for x, y in desc.order],
        )

    a, b = ren(d1, prefixes[0]), ren(d2, prefixes[1])
    return build_descriptor(
        a[0] + b[0], a[1] + b[1], {**a[2], **b[2]}, a[3] + b[3], a[4] + b[4]
    )
