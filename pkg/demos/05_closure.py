# The closed skeleton of two divisor coordinates
#
# With both coordinates divisorial the skeleton is the open quadrant and its
# closure adds the points where some coordinate is infinite.

from itertools import product

from polystable.extended import INF
from polystable.geometry import point
from polystable.skeleton import StandardPairModel, closure_membership

m = StandardPairModel((0,), (), 2, 2, closure=True)
vals = [0, 1, 2, INF]
for y in product(vals, repeat=2):
    print(y, closure_membership(m, point([], list(y), closure=True)))
