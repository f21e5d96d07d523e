"""The one-point orbifold: its string ring is the center of the group algebra.

Walk through the smallest interesting case, S3: conjugacy classes become the
basis, products count factorizations, and the trace makes it a Frobenius
algebra with a nondegenerate pairing.
"""

from orbistring import catalog_group, conjugacy_classes, dw_frobenius

G = catalog_group("S3")
print(f"group {G.name}, elements: {', '.join(G.names)}")

data = conjugacy_classes(G)
for rep, cls, cent in zip(data.reps, data.classes, data.centralizers):
    print(f"  class of {G.names[rep]}: size {len(cls)}, centralizer order {len(cent)}")

ring = dw_frobenius(G)
print(f"\nZ(Q[{G.name}]) has dimension {ring.dim}; basis = class sums:")
for lab in ring.labels:
    print(f"  {lab}")

print("\nstructure constants (e_i * e_j = sum_k c_ijk e_k):")
for i in range(ring.dim):
    for j in range(ring.dim):
        terms = [
            f"{c}*e{k}" for k, c in enumerate(ring.structure[i][j]) if c
        ]
        print(f"  e{i} * e{j} = {' + '.join(terms) if terms else '0'}")

# the square of the transposition class sum: 3e + 3(3-cycles)
ti = next(i for i, lab in enumerate(ring.labels) if "(1,2)" in lab)
sq = ring.mult(ring.basis_vector(ti), ring.basis_vector(ti))
print(f"\n(sum of transpositions)^2 coordinates: {[str(c) for c in sq]}")

print("\ntrace vector:", [str(t) for t in ring.trace])
pairing = ring.pairing_matrix()
print("pairing matrix <e_i, e_j> = tr(e_i e_j):")
for row in pairing:
    print("  ", [str(v) for v in row])
print("nondegenerate:", ring.pairing_nondegenerate())
