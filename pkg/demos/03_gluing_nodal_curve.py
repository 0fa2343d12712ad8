# Gluing: the dual complex of a nodal curve
#
# A segment has two vertex strata v1, v2 and an edge e. Descent data that
# identifies v1 with v2 turns it into a loop with one vertex and one edge.

from fractions import Fraction

from polystable.complex import ComplexPoint, coequalize, nodal_curve_descent
from polystable.geometry import point

descent = nodal_curve_descent()
glued = coequalize(descent)
print("f-vector", glued.f_vector())

# Both endpoints of the edge land on the same vertex class.

a = glued.pi(ComplexPoint("e", point([[1, 0]])))
b = glued.pi(ComplexPoint("e", point([[0, 1]])))
print(a, b, a == b)

# Interior points of the edge stay distinct.

for k in range(1, 4):
    s = Fraction(k, 4)
    print(s, glued.pi(ComplexPoint("e", point([[s, 1 - s]]))))
