"""Seeded random models, points and polynomials for the skeleton tests."""

import random
from fractions import Fraction as Q

from polystable.extended import INF
from polystable.geometry import RealizationPoint
from polystable.series import Coeff
from polystable.skeleton import StandardPairModel, make_point, normalize_poly

t = Coeff.monomial(1, 1)

MODELS = [
    StandardPairModel((1,), (t,), 0, 0),
    StandardPairModel((2,), (t,), 2, 1),
    StandardPairModel((1, 1), (t, t * t), 1, 1),
    StandardPairModel((0,), (), 2, 1),
    StandardPairModel((1,), (Coeff.monomial(3, Q(3, 2)),), 3, 2),
]

RADII = [Q(0), Q(1, 2), Q(1), Q(3, 2), Q(2), Q(3), INF]
TAUS = [INF, Q(5), Q(3), Q(2), Q(1), Q(1, 2), Q(0)]


def simplex_row(rng, k, r, den=4):
    cuts = sorted(rng.randint(0, den) for _ in range(k))
    return tuple(r * Q(b - a, den) for a, b in zip([0] + cuts, cuts + [den]))


def random_w(rng, model, den=4):
    rows = tuple(simplex_row(rng, k, r, den) for k, r in zip(model.n[: model.p], model.r))
    y = tuple(Q(rng.randint(0, 3 * den), den) for _ in range(model.s))
    return RealizationPoint(rows, y)


def random_center(rng):
    kind = rng.random()
    if kind < 0.3:
        return Coeff()
    terms = {}
    for _ in range(rng.randint(1, 2)):
        terms[rng.choice([0, Q(1, 2), 1, 2])] = rng.choice([1, -1, 2, Q(1, 3)])
    return Coeff(terms)


def random_disc(rng, divisor):
    while True:
        c, u = random_center(rng), rng.choice(RADII)
        if not divisor or c or u is not INF:
            return c, u


def random_point(rng, model):
    v = random_w(rng, model).x
    div = [random_disc(rng, True) for _ in range(model.s)]
    ball = [random_disc(rng, False) for _ in range(model.d - model.s)]
    return make_point(model, v, div, ball)


def random_coeff(rng):
    terms = {}
    for _ in range(rng.randint(1, 2)):
        terms[rng.choice([0, Q(1, 2), 1, 3])] = rng.choice([1, -1, 2, Q(1, 2), -3])
    return Coeff(terms)


def random_poly(rng, model, max_terms=3, max_deg=2):
    raw = {}
    for _ in range(rng.randint(1, max_terms)):
        mu = tuple(rng.randint(0, max_deg) if rng.random() < 0.5 else 0 for _ in range(model.nvars))
        raw[mu] = random_coeff(rng)
    f = normalize_poly(model, raw)
    return f if f.terms else random_poly(rng, model, max_terms, max_deg)


def triples(seed, count):
    rng = random.Random(seed)
    for k in range(count):
        model = MODELS[k % len(MODELS)]
        yield model, random_point(rng, model), rng.choice(TAUS), random_poly(rng, model)
