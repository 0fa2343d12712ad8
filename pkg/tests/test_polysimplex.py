from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import box_subsets, brute_isometry
from polystable.errors import CompositionError, DescriptorError
from polystable.polysimplex import (
    ExtendedPolySimplex as E,
    PSMorphism,
    PolySimplex,
    all_morphisms,
    apply_morphism,
    canonical_form,
    classify,
    compose,
    enumerate_faces,
    face_count,
    factorize_metric,
    hamming,
    identity,
    image_key,
    inverse,
    morphism_from_map,
)

P0 = E((0,), (0,), 0)
P1 = E((1,), (1,), 0)
P2 = E((2,), (1,), 0)
P21 = E((2, 1), (1, 1), 0)
P11 = E((1, 1), (1, 1), 0)


def test_shape_invariants():
    assert E((2, 1), (1, 2), 3).dim == 6
    assert P0.dim == 0 and P0.p == 0 and P0.carrier() == [()]
    assert PolySimplex((2, 1)).size() == 6
    with pytest.raises(DescriptorError):
        E((0, 1), (1, 1), 0)
    with pytest.raises(DescriptorError):
        E((1,), (0,), 0)
    with pytest.raises(DescriptorError):
        E((1,), (1, 1), 0)


def test_apply_examples():
    assert apply_morphism(identity(P2), (1,)) == (1,)
    collapse = PSMorphism(P0, P11, (), ((0,), (1,)), (0,))
    assert apply_morphism(collapse, ()) == (0, 1)
    F = PSMorphism(P1, P2, (0,), ((0, 2),), (0,))
    assert apply_morphism(F, (1,)) == (2,)
    with pytest.raises(DescriptorError):
        apply_morphism(F, (0, 0))


def test_compose_examples():
    F = PSMorphism(P1, P2, (0,), ((0, 2),), (0,))
    G = PSMorphism(P2, P21, (0,), ((0, 1, 2), (1,)), (0,))
    GF = compose(G, F)
    assert apply_morphism(GF, (1,)) == (2, 1)
    assert compose(identity(P2), F) == F
    assert compose(F, identity(P1)) == F
    with pytest.raises(CompositionError):
        compose(F, G)


def test_compose_collapses():
    A = E((0,), (0,), 1)
    B = E((1,), (1,), 2)
    C = E((2,), (1,), 3)
    F = PSMorphism(A, B, (), ((1,),), (0, 2))
    G = PSMorphism(B, C, (None,), ((2,),), (0, 3, 1))
    GF = compose(G, F)
    assert classify(GF) == "injective"
    assert GF.c == ((2,),) and GF.g == (0, 1)
    for pt in A.carrier():
        assert apply_morphism(GF, pt) == apply_morphism(G, apply_morphism(F, pt))


def test_invalid_morphisms():
    with pytest.raises(DescriptorError):
        PSMorphism(P1, E((2,), (2,), 0), (0,), ((0, 2),), (0,))  # color mismatch
    with pytest.raises(DescriptorError):
        PSMorphism(P1, P2, (0,), ((1, 1),), (0,))
    with pytest.raises(DescriptorError):
        PSMorphism(E((0,), (0,), 2), E((0,), (0,), 1), (), (), (0, 1, 1))
    with pytest.raises(DescriptorError):
        PSMorphism(P0, P0, (), (), (1,))


def test_classify_examples():
    assert classify(identity(P21)) == "isomorphism"
    F = PSMorphism(P1, P2, (0,), ((0, 2),), (0,))
    assert classify(F) == "injective"
    G = PSMorphism(P1, P0, (None,), (), (0,))
    assert classify(G) == "general"
    H = PSMorphism(P11, P1, (0, None), ((0, 1),), (0,))
    assert classify(H) == "general"


SMALL = [
    P0, P1, P2, P11,
    E((0,), (0,), 1), E((1,), (1,), 1), E((1,), (2,), 0), E((1, 1), (1, 2), 0),
]


def _composable_triples():
    out = []
    for A, B, C in product(SMALL, repeat=3):
        if A.base.size() * B.base.size() * C.base.size() > 64:
            continue
        out.append((A, B, C))
    return out


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_composition_is_pointwise(data):
    A, B, C = data.draw(st.sampled_from(_composable_triples()))
    FF = all_morphisms(A, B)
    GG = all_morphisms(B, C)
    if not FF or not GG:
        return
    F = data.draw(st.sampled_from(FF))
    G = data.draw(st.sampled_from(GG))
    GF = compose(G, F)
    for pt in A.carrier():
        assert apply_morphism(GF, pt) == apply_morphism(G, apply_morphism(F, pt))
    assert GF.g == tuple(G.g[v] for v in F.g)


def test_isomorphism_inverse():
    for A in SMALL + [P21, E((1, 1), (1, 1), 2)]:
        for F in all_morphisms(A, A):
            if classify(F) != "isomorphism":
                continue
            Fi = inverse(F)
            assert classify(Fi) == "isomorphism"
            assert compose(F, Fi) == identity(A)
            assert compose(Fi, F) == identity(A)


def test_face_examples():
    assert len(enumerate_faces(P0)) == 1
    assert len(enumerate_faces(E((1, 1), (1, 2), 0))) == 9
    assert len(enumerate_faces(E((2,), (1,), 1))) == 14


@pytest.mark.parametrize(
    "shape",
    [(0,), (1,), (2,), (3,), (1, 1), (2, 1), (1, 1, 1)],
)
def test_face_count_matches_box_oracle(shape):
    r = (0,) if shape == (0,) else (1,) * len(shape)
    for s in range(3):
        Es = E(shape, r, s)
        assert len(enumerate_faces(Es)) == face_count(Es) == box_subsets(shape) * 2 ** s


def test_faces_are_image_distinct_injective_morphisms():
    target = E((2,), (1,), 1)
    sources = [E((0,), (0,), s) for s in range(2)] + [E((k,), (1,), s) for k in (1, 2) for s in range(2)]
    keys = set()
    for S in sources:
        for F in all_morphisms(S, target):
            if classify(F) in ("injective", "isomorphism"):
                keys.add(image_key(F))
    faces = enumerate_faces(target)
    assert {image_key(F) for _, F in faces} == keys
    assert len(keys) == 14
    for face, F in faces:
        assert F.source == face and classify(F) in ("injective", "isomorphism")
        for l, S in enumerate(image_key(F)[0]):
            assert list(F.c[l]) == sorted(F.c[l])


def test_face_colors_inherited():
    Es = E((1, 2), ("1/2", 3), 0)
    for face, F in enumerate_faces(Es):
        for i, l in enumerate(F.f):
            assert face.r[i] == Es.r[l]


def test_canonical_form():
    Es, iso = canonical_form(E((2, 1, 1), (1, 3, "1/2"), 1))
    assert Es.n == (1, 1, 2) and Es.r[0] == E((1,), ("1/2",)).r[0]
    assert classify(iso) == "isomorphism"


def _hamming_space(n):
    pts = PolySimplex(n).carrier()
    return pts, hamming


def test_factorize_examples():
    res = factorize_metric(["a"], lambda a, b: 0)
    assert res[0].n == (0,)
    tri = ["a", "b", "c"]
    res = factorize_metric(tri, lambda a, b: 0 if a == b else 1)
    assert res[0].n == (2,)
    # the square: a-b, c-d, a-c, b-d at distance 1; diagonals at distance 2
    sq = {("a", "b"), ("c", "d"), ("a", "c"), ("b", "d")}
    d = lambda a, b: 0 if a == b else (1 if (a, b) in sq or (b, a) in sq else 2)
    res = factorize_metric("abcd", d)
    assert res[0].n == (1, 1)
    assert brute_isometry(list("abcd"), d) == (1, 1)
    # two edges {a,b}, {c,d} with every cross distance 2 embed in no [n]
    pairs = {("a", "b"), ("c", "d")}
    d2 = lambda a, b: 0 if a == b else (1 if (a, b) in pairs or (b, a) in pairs else 2)
    assert factorize_metric("abcd", d2) is None
    assert brute_isometry(list("abcd"), d2) is None


@st.composite
def small_metric_spaces(draw):
    """Either a relabelled Hamming space or a random bounded integer metric."""
    N = draw(st.integers(1, 6))
    if draw(st.booleans()):
        from oracles import shapes_of_size

        options = [n for m in range(1, 7) for n in shapes_of_size(m)]
        n = draw(st.sampled_from(options))
        pts = PolySimplex(n).carrier()
        perm = draw(st.permutations(list(range(len(pts)))))
        names = {pt: f"p{perm[k]}" for k, pt in enumerate(pts)}
        table = {(names[a], names[b]): hamming(a, b) for a in pts for b in pts}
        return sorted(names.values()), table
    names = [f"p{k}" for k in range(N)]
    table = {}
    for i in range(N):
        table[(names[i], names[i])] = 0
        for j in range(i + 1, N):
            v = draw(st.integers(1, 3))
            table[(names[i], names[j])] = table[(names[j], names[i])] = v
    return names, table


@settings(max_examples=200, deadline=None)
@given(small_metric_spaces())
def test_factorize_agrees_with_brute_force(space):
    names, table = space
    d = lambda a, b: table[(a, b)]
    res = factorize_metric(names, d)
    oracle = brute_isometry(names, d)
    assert (res is None) == (oracle is None)
    if res is not None:
        assert tuple(sorted(res[0].n)) == oracle
        labels = res[1]
        assert all(d(a, b) == hamming(labels[a], labels[b]) for a in names for b in names)


def test_isometric_maps_are_injective_morphisms():
    shapes = [(0,), (1,), (2,), (3,), (1, 1)]
    for ns, nt in product(shapes, repeat=2):
        S = E(ns, (0,) if ns == (0,) else (1,) * len(ns))
        T = E(nt, (0,) if nt == (0,) else (1,) * len(nt))
        if S.base.size() > T.base.size():
            continue
        morph_maps = {
            tuple(apply_morphism(F, pt) for pt in S.carrier())
            for F in all_morphisms(S, T)
            if classify(F) != "general"
        }
        src, tgt = S.carrier(), T.carrier()
        iso_maps = set()
        for img in product(tgt, repeat=len(src)):
            if all(hamming(a, b) == hamming(img[i], img[j])
                   for i, a in enumerate(src) for j, b in enumerate(src)):
                iso_maps.add(img)
        assert morph_maps == iso_maps


def test_morphism_from_map_roundtrip():
    for F in all_morphisms(P2, P21):
        G = morphism_from_map(P2, P21, lambda pt: apply_morphism(F, pt), F.g)
        if F.f[0] is not None:
            assert G == F
        else:
            assert all(apply_morphism(G, pt) == apply_morphism(F, pt) for pt in P2.carrier())
    with pytest.raises(DescriptorError):
        morphism_from_map(P11, E((3,), (1,)), {(0, 0): (0,), (0, 1): (1,), (1, 0): (2,), (1, 1): (3,)})
