"""Morita invariance at desk scale: coset actions against point orbifolds.

[H\\G acted on by G] and [point acted on by H] present the same orbifold, so
their string rings must agree; the comparison finds an explicit rational
basis change and certifies genuine non-isomorphisms.
"""

from orbistring import (
    catalog_group,
    catalog_subgroup,
    coset_gset,
    morita_compare,
    orbifold_string_ring,
    point_gset,
)

for gn, hn in [("S3", "Z2"), ("S3", "Z3"), ("S4", "S3"), ("Z4", "Z2")]:
    G, H = catalog_subgroup(gn, hn)
    X = coset_gset(G, H)
    ring = orbifold_string_ring(X)
    rep = morita_compare(X, point_gset(catalog_group(hn)))
    print(f"[{hn}\\{gn} with {gn}-translation] vs [point/{hn}]:")
    print(f"  dims {rep.dim_left} = {rep.dim_right}; isomorphic: {rep.isomorphic}")
    print(f"  {rep.detail}")
    if rep.witness:
        print("  witness rows:", [[str(c) for c in row] for row in rep.witness])

print("\nnegative controls:")
neg = morita_compare(point_gset(catalog_group("Z2")), point_gset(catalog_group("Z3")))
print(f"  Z2 vs Z3: {neg.isomorphic} ({neg.obstruction})")
neg2 = morita_compare(point_gset(catalog_group("Z4")), point_gset(catalog_group("Z2xZ2")))
print(f"  Z4 vs Z2xZ2: {neg2.isomorphic} ({neg2.obstruction})")
print(f"    component degrees: {neg2.component_degrees_left} vs {neg2.component_degrees_right}")
