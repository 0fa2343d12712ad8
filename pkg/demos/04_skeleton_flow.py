# Seminorms, tropicalization and the deformation flow
#
# Coefficients are finite sums of rational powers of t, so every valuation is
# exact. Points are shifted monomial seminorms: torus weights and discs.

from polystable.series import Coeff, ZERO
from polystable.skeleton import (
    StandardPairModel, constant, flow, make_point, seminorm_eval, sigma, star_eval, tau, trop, variable,
)
from polystable.geometry import point

t = Coeff.monomial(1, 1)
m = StandardPairModel((1,), (t,), 2, 1)

# sigma is a section of trop.

w = point([["1/4", "3/4"]], [2])
s = sigma(m, w)
print(s.v, s.div, s.ball, trop(s) == w)

# A type-1 point: the divisor coordinate sits at t^2, the ball one at 1 + t.

x = make_point(m, [["1/4", "3/4"]], [(t * t, "inf")], [(1 + t, "inf")])
print("trop", trop(x), "tau", tau(x).div, tau(x).ball)

# Along the flow the discs grow until the point reaches the skeleton.

f = variable(m, m.coord_index(1)) - constant(m, t * t)
g = variable(m, m.coord_index(2)) - constant(m, 1)
for tt in ["inf", 3, 1, "1/2", 0]:
    y = flow(x, tt)
    print(f"tau={tt!s:4s} div={y.div[0][1]!s:4s} ball={y.ball[0][1]!s:4s}",
          seminorm_eval(y, f), star_eval(x, tt, f), seminorm_eval(y, g), star_eval(x, tt, g))
