# Poly-simplices and their morphisms
#
# A poly-simplex [n] = [n_1] x ... x [n_p] is a product of vertex sets. Its
# geometric realization Delta(n, r) is a product of scaled simplices, and the
# extended version adds s copies of the half line.

from polystable import ExtendedPolySimplex, PSMorphism, compose, enumerate_faces
from polystable.geometry import point, realize_morphism, contains

E = ExtendedPolySimplex((2,), (1,), 1)
print(E, "dim", E.dim)

# Faces are images of injective morphisms: a nonempty subset of each vertex
# set together with a subset of the orthant directions.

faces = enumerate_faces(E)
print(len(faces), "faces")
for face, F in faces[:5]:
    print(face.n, face.s, F.c, F.g)

# A morphism is the data (f, c, g). Here the edge [1] goes onto the edge
# {0, 2} of the triangle [2].

P1 = ExtendedPolySimplex((1,), (1,), 0)
P2 = ExtendedPolySimplex((2,), (1,), 0)
F = PSMorphism(P1, P2, (0,), ((0, 2),), (0,))
x = point([["1/3", "2/3"]])
print(realize_morphism(F, x))

# Composition agrees with composing the realizations.

G = PSMorphism(P2, P2, (0,), ((1, 2, 0),), (0,))
y = realize_morphism(compose(G, F), x)
print(y, y == realize_morphism(G, realize_morphism(F, x)), contains(P2, y))
