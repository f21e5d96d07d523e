"""Discrete torsion on Z2 x Z2: a nontrivial 2-cocycle kills three of the four sectors.

The 2-cocycle alpha((a1,a2),(b1,b2)) = exp(pi i a1 b2) induces the torsion
1-cocycle tau(g,h) = alpha(g,h)/alpha(h,g) on the inertia groupoid; only the
identity is alpha-regular, so the twisted center is one-dimensional.
"""

from orbistring import (
    catalog_cocycle,
    catalog_group,
    coboundary,
    discrete_torsion,
    restrict_to_centralizer,
    trivial_cocycle,
    twisted_center,
)
from orbistring.phases import Phase

G = catalog_group("Z2xZ2")
alpha = catalog_cocycle(G, "nontrivial")

print("alpha (phase q, value exp(2 pi i q)):")
for g in range(4):
    print("  ", [str(alpha.table[g][h]) for h in range(4)])

tau = discrete_torsion(alpha)
print("\ntau(g,h) = alpha(g,h)/alpha(h, h^-1 g h):")
for g in range(4):
    print("  ", [str(tau.tau[g][h]) for h in range(4)])

print("\nrestricted characters tau_g on the centralizers:")
for g in range(4):
    chi = restrict_to_centralizer(tau, g)
    trivial = all(p.is_one() for p in chi.values())
    print(f"  g={G.names[g]}: {'trivial' if trivial else 'nontrivial'}"
          f" -> {'contributes' if trivial else 'killed'}")

tw = twisted_center(G, alpha)
tw0 = twisted_center(G, trivial_cocycle(G))
print(f"\ntwisted center dimension: {tw.dim} (nontrivial alpha) vs {tw0.dim} (trivial alpha)")

# twisting by a coboundary never changes the answer
beta = [Phase.one(), Phase.of(1, 4), Phase.of(3, 8), Phase.of(1, 2)]
alpha2 = alpha * coboundary(G, beta)
print("after multiplying by a coboundary:", twisted_center(G, alpha2).dim)
