# Strata of the standard pair and its strict dual complex
#
# The pair S((2), t, 1) with divisor G(1) has three X-components and three
# H-components. Its strata are indexed by a subset of vertices and a subset of
# divisor directions.

from polystable import StrictDualComplex, standard_descriptor
from polystable.strata import least_stratum, validate_descriptor

desc = standard_descriptor((2,), (1,), 1, 1)
print(len(desc.strata), "strata; valid:", validate_descriptor(desc).ok)
for x in desc.ids:
    print(f"{x:12s} codim {desc.codim(x)}  {sorted(desc.by_id[x].A)}")

# Each stratum x carries a chart, a poly-simplex Delta(x). The strata above x
# correspond to the faces of Delta(x).

cx = StrictDualComplex(desc)
x = least_stratum(desc)
print("least stratum", x, "with", len(desc.upper(x)), "faces")
print("f-vector", cx.f_vector())

F = cx.face_embedding(x, "[0,1|]")
print("embedding of [0,1|] into", x, ":", F.c, F.g)
