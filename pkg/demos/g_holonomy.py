"""Holonomy of S3-decorated chord diagrams: reproducing the one-chord picture.

A one-chord diagram over S3 with outer holonomy (1,3,2) admits decorations
whose two region holonomies are both (2,3); moving the mark lifts sweeps out
exactly the conjugacy class of (2,3).
"""

from fractions import Fraction as F

from orbistring import (
    GDiagram,
    catalog_group,
    enumerate_gmd,
    g_compose,
    g_identity,
    incoming_holonomy,
    md_from_data,
    outgoing_holonomy,
)

S3 = catalog_group("S3")
md = md_from_data(2, [(F(1, 4), F(3, 4))], [F(1, 2), F(0)])

g = S3.names.index("(1,3,2)")
h = S3.names.index("(2,3)")
found = enumerate_gmd(md, S3, g, (h, h))
print(f"decorations with oh=(1,3,2) and ih=((2,3),(2,3)): {len(found)}")
W = found[0]
print("one witness:", W.to_json())

realized = set()
for k1 in range(6):
    for k2 in range(6):
        W2 = GDiagram(W.base, S3, W.outer, W.transports, (k1, k2))
        realized.add(incoming_holonomy(W2)[0])
print("region-1 holonomies over all mark lifts:", sorted(S3.names[x] for x in realized))

total = enumerate_gmd(md, S3, g)
print(f"\nfull fiber over the base diagram at fixed outer holonomy: {len(total)}"
      f" = |S3|^(2*2-1) = {6 ** 3}")

ih = incoming_holonomy(W)
out = g_compose(W, [g_identity(S3, ih[0]), g_identity(S3, ih[1])])
print("\ncomposing with graded identities returns the same class:", out == W)
print("outer holonomy is stable under composition:", outgoing_holonomy(out) == g)
