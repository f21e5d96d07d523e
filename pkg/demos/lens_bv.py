"""Lens-space string rings and the Batalin-Vilkovisky axiom checker.

The ring Lambda[a] (x) Q[u,v]/(v^p = 1) multiplies sector-additively; the
checker verifies the BV axioms over a finite degree window for Delta = 0 and
pinpoints a corrupted operator.
"""

from fractions import Fraction as F

from orbistring import (
    basis_window,
    bv_check,
    catalog_group,
    dw_frobenius,
    graded_window_bv,
    lens_ring,
    multiply,
    ring_window_bv,
    sphere_quotient_ring,
)

P = lens_ring(3, 2)
print("generators:", P.to_json()["generators"])
print("relations:", P.to_json()["relations"])

basis = basis_window(P, -3, 6)
print(f"\nbasis of the window [-3, 6] ({len(basis)} monomials):")
print(" ", ", ".join(P.mono_str(m) for m in basis))

u, v, a = P.monomial(u=1), P.monomial(v=1), P.monomial(a=1)
print("\nsector-additive products:")
print("  (u v) * (u v) =", P.element_str(multiply(P, multiply(P, u, v), multiply(P, u, v))))
print("  a * (u v)     =", P.element_str(multiply(P, a, multiply(P, u, v))))
print("  a * a         =", P.element_str(multiply(P, a, a)))
print("  v * v         =", P.element_str(multiply(P, v, v)))

rep = bv_check(graded_window_bv(P, -3, 6))
print("\nBV axioms with Delta = 0 on the window:", "pass" if rep.ok else "fail", rep.checked)

ring = dw_frobenius(catalog_group("S3"))
rep2 = bv_check(ring_window_bv(ring))
print("BV axioms on Z(Q[S3]) (degree 0, Delta = 0):", "pass" if rep2.ok else "fail")

amono = next(m for m in basis if P.mono_str(m) == "a")
one = next(m for m in basis if P.mono_str(m) == "1")
bad = bv_check(graded_window_bv(P, -3, 6, {amono: {one: F(1)}}))
print("\ninjecting a degree-violating Delta(a) = 1:")
print("  verdict:", "pass" if bad.ok else "fail", "| witness:", bad.failures[0])

S = sphere_quotient_ring(2)
print("\nsphere-quotient ring relations:", S.to_json()["relations"])
