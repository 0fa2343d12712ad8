import random
from fractions import Fraction as Q

import pytest

from oracles import flowed_value, grid_simplex, point_value
from samplers import MODELS, TAUS, random_point, random_poly, random_w, t, triples
from polystable.complex import StrictDualComplex, open_face_of, ComplexPoint
from polystable.errors import DomainError
from polystable.extended import INF
from polystable.geometry import RealizationPoint, point
from polystable.series import Coeff, ZERO
from polystable.skeleton import (
    EpsilonLevel,
    StandardPairModel,
    closure_membership,
    constant,
    epsilon_data,
    flow,
    flow_injectivity_window,
    is_skeletal,
    make_point,
    normalize_poly,
    poly,
    reduction_stratum,
    seminorm_eval,
    sigma,
    star_eval,
    tau,
    trop,
    variable,
)
from polystable.strata import least_stratum

S1 = StandardPairModel((1,), (t,), 0, 0)
DIV = StandardPairModel((0,), (), 1, 1)
BALL = StandardPairModel((0,), (), 1, 0)
c2 = Coeff.monomial(1, 2)


def test_normalize_examples():
    f = poly(S1, [(1, (1, 0))])
    assert normalize_poly(S1, dict(f.terms)) == f
    assert poly(S1, [(1, (1, 1))]) == constant(S1, t)
    assert poly(S1, [(1, (2, 1))]) == poly(S1, [(t, (1, 0))])


def test_seminorm_examples():
    x = make_point(S1, [["1/2", "1/2"]])
    assert seminorm_eval(x, variable(S1, 0)) == Q(1, 2)
    y = make_point(S1, [["1/4", "3/4"]])
    assert seminorm_eval(y, variable(S1, 0) + variable(S1, 1)) == Q(1, 4)
    f = poly(S1, [(1, (0, 0)), (1, (1, 1))])
    assert f == constant(S1, 1 + t)
    assert seminorm_eval(y, f) == 0


def test_seminorm_matches_substitution_oracle():
    rng = random.Random(4)
    for k in range(200):
        model = MODELS[k % len(MODELS)]
        x, f = random_point(rng, model), random_poly(rng, model)
        assert seminorm_eval(x, f) == point_value(x, f)


@pytest.mark.parametrize("model", MODELS)
def test_multiplicative_and_ultrametric(model):
    rng = random.Random(hash(model.n) & 0xFFFF)
    for _ in range(40):
        x = random_point(rng, model)
        f, g = random_poly(rng, model), random_poly(rng, model)
        vf, vg = seminorm_eval(x, f), seminorm_eval(x, g)
        assert seminorm_eval(x, f * g) == vf + vg
        vs = seminorm_eval(x, f + g)
        assert vs >= min(vf, vg)
        if vf != vg:
            assert vs == min(vf, vg)


def test_trop_examples():
    x = make_point(DIV, div=[(c2, INF)])
    assert trop(x).y == (2,)
    assert tau(x) == make_point(DIV, div=[(ZERO, 2)])
    m = StandardPairModel((1,), (t,), 2, 1)
    w = point([["1/3", "2/3"]], [3])
    s = sigma(m, w)
    assert s.div == ((ZERO, 3),) and s.ball == ((ZERO, 0),)
    assert trop(s) == w and len(trop(s).y) == 1
    b = sigma(S1, point([["1/2", "1/2"]]))
    assert b.v == ((Q(1, 2), Q(1, 2)),)
    with pytest.raises(DomainError):
        sigma(S1, point([["1/2", "1/3"]]))
    with pytest.raises(DomainError):
        make_point(DIV, div=[(ZERO, INF)])
    closed = StandardPairModel((0,), (), 1, 1, closure=True)
    z = make_point(closed, div=[(ZERO, INF)], closure=True)
    assert trop(z).y == (INF,)


@pytest.mark.parametrize("model", MODELS)
def test_retraction_laws(model):
    rng = random.Random(17)
    for _ in range(40):
        w = random_w(rng, model)
        s = sigma(model, w)
        assert trop(s) == w
        assert tau(s) == s and is_skeletal(s)
        x = random_point(rng, model)
        assert tau(tau(x)) == tau(x)
        assert flow(x, INF) == x
        assert flow(x, 0) == tau(x)
        for tt in TAUS:
            assert flow(s, tt) == s


def test_star_eval_examples():
    x = make_point(DIV, div=[(c2, INF)])
    f = variable(DIV, 0) - constant(DIV, c2)
    assert star_eval(x, INF, f) == seminorm_eval(x, f) == INF
    assert star_eval(x, 1, f) == 3
    assert flowed_value(x, Q(1), f) == 3
    b = make_point(BALL, ball=[(c2, INF)])
    assert star_eval(b, 1, variable(BALL, 0)) == 1
    assert flowed_value(b, Q(1), variable(BALL, 0)) == 1


def test_flow_examples():
    b = make_point(BALL, ball=[(c2, INF)])
    f3 = flow(b, 3)
    assert f3.ball == ((c2, 3),)
    assert seminorm_eval(f3, variable(BALL, 0)) == 2
    assert flow(b, 0).ball == ((ZERO, 0),)
    x = make_point(DIV, div=[(c2, INF)])
    assert flow(x, 1).div == ((c2, 3),)
    assert flow(x, 0).div == ((ZERO, 2),)


def test_flow_oracle_agreement():
    for model, x, tt, f in triples(8, 250):
        assert seminorm_eval(flow(x, tt), f) == star_eval(x, tt, f) == flowed_value(x, tt, f)


def test_flow_trop_min_update():
    rng = random.Random(9)
    for k in range(200):
        model = MODELS[k % len(MODELS)]
        x = random_point(rng, model)
        tt = rng.choice(TAUS)
        before, after = trop(x), trop(flow(x, tt))
        assert after.x == before.x
        for (c, u), y0, y1 in zip(x.div, before.y, after.y):
            assert y1 == min(c.val(), u, INF if tt is INF else tt + c.val()) == y0
        # flowing further only moves toward the retraction
        assert flow(flow(x, tt), Q(1, 2)) == flow(x, min(tt, Q(1, 2)))


def test_injectivity_window():
    s = sigma(S1, point([["1/2", "1/2"]]))
    assert flow_injectivity_window(s) == 0
    b = make_point(BALL, ball=[(c2, 3)])
    assert flow_injectivity_window(b) == 3
    x = make_point(DIV, div=[(c2, INF)])
    assert flow_injectivity_window(x) is INF
    traj = [flow(x, tt) for tt in (5, 3, 2, 1, Q(1, 2), 0)]
    assert len(set(traj)) == len(traj)
    rng = random.Random(12)
    for k in range(100):
        model = MODELS[k % len(MODELS)]
        y = random_point(rng, model)
        w = flow_injectivity_window(y)
        if w is not INF:
            assert flow(y, w) == y and flow(y, w + 1) == y
            grid = sorted({w * Q(j, 4) for j in range(5)})
            pts = [flow(y, g) for g in grid]
            assert len(set(pts)) == len(pts)


def test_reduction_examples():
    m = StandardPairModel((2,), (t,), 1, 1)
    interior = sigma(m, point([["1/3", "1/3", "1/3"]], [1]))
    assert reduction_stratum(interior) == (least_stratum(m.descriptor()), True)
    face = sigma(m, point([[0, "1/2", "1/2"]], [0]))
    assert reduction_stratum(face) == ("[1,2|]", True)
    unit = make_point(m, [[0, 0, 1]], [(Coeff.const(3), INF)])
    assert reduction_stratum(unit) == ("[2|]", False)
    b = make_point(BALL, ball=[(Coeff.const(2), INF)])
    assert reduction_stratum(b) == ("[|]", False)


@pytest.mark.parametrize("model", MODELS[:3] + [MODELS[4]])
def test_reduction_on_grid(model):
    cx = StrictDualComplex(model.descriptor())
    x = least_stratum(model.descriptor())
    rows = [grid_simplex(k, r, 2) for k, r in zip(model.n[: model.p], model.r)]
    from itertools import product

    ys = [Q(0), Q(1, 2), Q(2)]
    for combo in product(*rows):
        for y in product(ys, repeat=model.s):
            w = RealizationPoint(combo, y)
            sid, generic = reduction_stratum(sigma(model, w))
            assert generic
            assert sid == open_face_of(cx, ComplexPoint(x, w))


def test_epsilon_examples():
    lvl0 = EpsilonLevel(DIV, Q(0))
    assert lvl0.contains(make_point(DIV, div=[(ZERO, 0)]))
    assert not lvl0.contains(make_point(DIV, div=[(ZERO, Q(1, 2))]))
    inside, shift = epsilon_data(DIV, 2, 5)
    assert shift((0, 2)) == (3, 2)
    assert inside(make_point(DIV, div=[(ZERO, 2)]))
    # every y >= 0 is reached by some level
    for y in [Q(0), Q(7, 3), Q(40)]:
        lvl = EpsilonLevel(DIV, y + 1)
        assert lvl.trop(make_point(DIV, div=[(ZERO, y)]))[1][0][1] == y


def test_epsilon_restriction_identity():
    model = StandardPairModel((1,), (t,), 2, 2)
    levels = [EpsilonLevel(model, Q(v)) for v in (1, 2, 4)]
    rng = random.Random(21)
    for _ in range(150):
        x = random_point(rng, model) if rng.random() < 0.5 else sigma(model, random_w(rng, model))
        for lo, hi in zip(levels, levels[1:] + levels[-1:]):
            assert lo.in_skeleton(x) == (hi.in_skeleton(x) and lo.contains(x))
            if lo.in_skeleton(x):
                v, pairs = lo.trop(x)
                assert hi.trop(x) == (v, tuple(lo.shift(pr, hi) for pr in pairs))


def test_closure_examples():
    m = StandardPairModel((0,), (), 2, 2, closure=True)
    assert closure_membership(m, point([], [INF, 1], closure=True)) == "S(H)"
    assert closure_membership(m, point([], [1, 2], closure=True)) == "S"
    assert closure_membership(m, point([], [INF, INF], closure=True)) == "S(H)"
    deg = StandardPairModel((1,), (ZERO,), 0, 0, closure=True)
    assert closure_membership(deg, point([[INF, 2]], closure=True)) == "S"
    assert closure_membership(deg, point([[1, 2]], closure=True)) == "outside"
