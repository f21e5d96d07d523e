"""Graded-commutative algebra presentations and a Batalin-Vilkovisky axiom checker.

Supported relations are exactly what the shipped string-homology rings need:
odd generators square to zero automatically over Q, listed monomials may be
annihilated outright, and a degree-zero generator may be a root of unity
(x^p = 1).  These shapes admit unique normal forms without any completion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence


class GradedError(ValueError):
    pass


class WindowOverflow(GradedError):
    """A product or operator left the configured degree window."""


Monomial = tuple[int, ...]
Element = dict  # Monomial -> coefficient


@dataclass(frozen=True)
class GradedPresentation:
    """Generators with integer degrees, annihilated monomials, root-of-unity generators."""

    gens: tuple[tuple[str, int], ...]
    root_orders: tuple[int | None, ...]  # aligned with gens; p for x^p = 1
    zero_monomials: tuple[Monomial, ...] = ()

    def __post_init__(self):
        for (name, deg), p in zip(self.gens, self.root_orders):
            if p is not None:
                if deg != 0:
                    raise GradedError(f"root-of-unity generator {name} must have degree 0")
                if p < 1:
                    raise GradedError(f"root order of {name} must be positive")
            if p is None and deg == 0:
                raise GradedError(f"free generator {name} of degree 0 makes windows infinite")

    def index(self, name: str) -> int:
        for i, (g, _) in enumerate(self.gens):
            if g == name:
                return i
        raise GradedError(f"unknown generator {name}")

    def degree(self, mono: Monomial) -> int:
        return sum(e * d for e, (_, d) in zip(mono, self.gens))

    def is_odd(self, i: int) -> bool:
        return self.gens[i][1] % 2 != 0

    def normal_monomial(self, mono: Sequence[int]) -> Monomial | None:
        """Reduced exponent vector, or None when the monomial is zero."""
        out = []
        for i, e in enumerate(mono):
            if e < 0:
                raise GradedError("negative exponent")
            p = self.root_orders[i]
            if p is not None:
                e %= p
            if self.is_odd(i) and e > 1:
                return None  # x odd: x*x = -x*x over Q
            out.append(e)
        mono_t = tuple(out)
        for z in self.zero_monomials:
            if all(me >= ze for me, ze in zip(mono_t, z)):
                return None
        return mono_t

    def unit(self) -> Element:
        return {tuple(0 for _ in self.gens): Fraction(1)}

    def monomial(self, **powers: int) -> Element:
        mono = [0] * len(self.gens)
        for name, e in powers.items():
            mono[self.index(name)] = e
        nm = self.normal_monomial(mono)
        return {} if nm is None else {nm: Fraction(1)}

    def mono_str(self, mono: Monomial) -> str:
        parts = []
        for (name, _), e in zip(self.gens, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def element_str(self, x: Element) -> str:
        if not x:
            return "0"
        terms = []
        for mono in sorted(x, key=lambda m: (self.degree(m), m)):
            c = x[mono]
            ms = self.mono_str(mono)
            if c == 1 and ms != "1":
                terms.append(ms)
            elif ms == "1":
                terms.append(str(c))
            else:
                terms.append(f"{c}*{ms}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        rels = [self.mono_str(z) for z in self.zero_monomials]
        for (name, _), p in zip(self.gens, self.root_orders):
            if p is not None:
                rels.append(f"{name}^{p} = 1")
        return {
            "generators": [{"name": n, "degree": d} for n, d in self.gens],
            "relations": rels,
        }


def _koszul_sign(P: GradedPresentation, a: Monomial, b: Monomial) -> int:
    """Sign from commuting the odd generators of b leftwards past those of a."""
    swaps = 0
    for j in range(len(b)):
        if not P.is_odd(j) or b[j] == 0:
            continue
        behind = sum(a[i] for i in range(j + 1, len(a)) if P.is_odd(i))
        swaps += b[j] * behind
    return -1 if swaps % 2 else 1


def multiply(P: GradedPresentation, x: Element, y: Element) -> Element:
    """Product in normal form; graded commutativity is rechecked on the way."""
    out: Element = {}
    for ma, ca in x.items():
        for mb, cb in y.items():
            nm = P.normal_monomial([ea + eb for ea, eb in zip(ma, mb)])
            if nm is None:
                continue
            c = ca * cb * _koszul_sign(P, ma, mb)
            acc = out.get(nm, Fraction(0)) + c
            if acc:
                out[nm] = acc
            else:
                out.pop(nm, None)
    check: Element = {}
    for mb, cb in y.items():
        for ma, ca in x.items():
            nm = P.normal_monomial([ea + eb for ea, eb in zip(ma, mb)])
            if nm is None:
                continue
            s = _koszul_sign(P, mb, ma) * (-1 if (P.degree(ma) * P.degree(mb)) % 2 else 1)
            acc = check.get(nm, Fraction(0)) + ca * cb * s
            if acc:
                check[nm] = acc
            else:
                check.pop(nm, None)
    if check != out:
        raise GradedError("graded commutativity failed; relations are inconsistent")
    return out


def el_add(x: Element, y: Element) -> Element:
    out = dict(x)
    for m, c in y.items():
        acc = out.get(m, 0) + c
        if acc:
            out[m] = acc
        else:
            out.pop(m, None)
    return out


def el_scale(x: Element, c) -> Element:
    return {m: v * c for m, v in x.items()} if c else {}


def basis_window(P: GradedPresentation, lo: int, hi: int) -> list[Monomial]:
    """All normal monomials with degree in [lo, hi], sorted by (degree, exponents)."""
    if lo > hi:
        raise GradedError("empty degree window")
    k = len(P.gens)
    degs = [d for _, d in P.gens]
    caps: list[int | None] = []
    for i, (name, deg) in enumerate(P.gens):
        p = P.root_orders[i]
        if p is not None:
            caps.append(p - 1)
        elif P.is_odd(i):
            caps.append(1)
        else:
            pure = None
            for z in P.zero_monomials:
                if z[i] > 0 and all(e == 0 for j, e in enumerate(z) if j != i):
                    pure = z[i] - 1 if pure is None else min(pure, z[i] - 1)
            if pure is not None:
                caps.append(pure)
            elif deg > 0:
                caps.append(None)  # bounded by the window itself
            else:
                raise GradedError(
                    f"generator {name} has unbounded negative degree; window is infinite"
                )
    INF = float("inf")
    min_rest = [0.0] * (k + 1)
    max_rest = [0.0] * (k + 1)
    for i in range(k - 1, -1, -1):
        d, cap = degs[i], caps[i]
        hi_c = INF if cap is None else max(0, d * cap)
        lo_c = 0 if cap is None else min(0, d * cap)
        min_rest[i] = min_rest[i + 1] + lo_c
        max_rest[i] = max_rest[i + 1] + hi_c
    out: list[Monomial] = []

    def rec(i: int, cur: int, mono: list[int]):
        if i == k:
            if lo <= cur <= hi:
                nm = P.normal_monomial(mono)
                if nm == tuple(mono):
                    out.append(nm)
            return
        d, cap = degs[i], caps[i]
        if cap is None:
            top = (hi - cur - int(min_rest[i + 1])) // d
            if top < 0:
                return
            cap = top
        for e in range(cap + 1):
            nxt = cur + e * d
            if nxt + min_rest[i + 1] > hi or nxt + max_rest[i + 1] < lo:
                continue
            mono.append(e)
            rec(i + 1, nxt, mono)
            mono.pop()

    rec(0, 0, [])
    return sorted(set(out), key=lambda m: (P.degree(m), m))


# shipped rings --------------------------------------------------------------


def lens_ring(n: int, p: int) -> GradedPresentation:
    """Loop homology of the odd lens space quotient: exterior a, polynomial u, root v."""
    if n < 1 or n % 2 == 0:
        raise GradedError("the sphere dimension must be odd")
    if p < 1:
        raise GradedError("the cyclic order must be positive")
    return GradedPresentation(
        (("a", -n), ("u", n - 1), ("v", 0)),
        (None, None, p),
    )


def sphere_quotient_ring(p: int) -> GradedPresentation:
    """Loop homology of the rotation quotient of the 2-sphere."""
    if p < 1:
        raise GradedError("the cyclic order must be positive")
    gens = (("b", 1), ("a", -2), ("v", 2), ("y", 0))
    zero = (
        (0, 2, 0, 0),  # a*a
        (1, 1, 0, 0),  # a*b
        (0, 1, 1, 0),  # a*v
    )
    return GradedPresentation(gens, (None, None, None, p), zero)


# BV checker -----------------------------------------------------------------


@dataclass
class BVData:
    """A degree window of an algebra together with a candidate degree +1 operator.

    basis entries are opaque hashable labels; mult returns the product as a
    dict over basis labels or raises WindowOverflow when it leaves the window.
    delta maps basis labels to elements.
    """

    basis: tuple
    degree: Callable
    mult: Callable
    delta: dict
    window: tuple[int, int]

    def apply_delta(self, x: Element) -> Element:
        out: Element = {}
        for b, c in x.items():
            for b2, c2 in self.delta.get(b, {}).items():
                acc = out.get(b2, 0) + c * c2
                if acc:
                    out[b2] = acc
                else:
                    out.pop(b2, None)
        return out

    def mult_el(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for bx, cx in x.items():
            for by, cy in y.items():
                for bz, cz in self.mult(bx, by).items():
                    acc = out.get(bz, 0) + cx * cy * cz
                    if acc:
                        out[bz] = acc
                    else:
                        out.pop(bz, None)
        return out


def graded_window_bv(P: GradedPresentation, lo: int, hi: int, delta: dict | None = None) -> BVData:
    basis = tuple(basis_window(P, lo, hi))
    basis_set = set(basis)

    def mult(a: Monomial, b: Monomial):
        prod = multiply(P, {a: Fraction(1)}, {b: Fraction(1)})
        for m in prod:
            if m not in basis_set:
                raise WindowOverflow(f"product {P.mono_str(a)} * {P.mono_str(b)} leaves the window")
        return prod

    return BVData(basis, P.degree, mult, delta or {}, (lo, hi))


def ring_window_bv(ring, delta: dict | None = None) -> BVData:
    """Degree-0 window around a structure-constant algebra (sector rings)."""
    basis = tuple(range(ring.dim))

    def mult(i: int, j: int):
        row = ring.structure[i][j]
        return {k: c for k, c in enumerate(row) if c}

    return BVData(basis, lambda b: 0, mult, delta or {}, (0, 0))


def bracket(D: BVData, a: Element, b: Element, deg_a: int) -> Element:
    """{a,b} = (-1)^|a| Delta(a b) - (-1)^|a| Delta(a) b - a Delta(b)."""
    s = -1 if deg_a % 2 else 1
    t1 = el_scale(D.apply_delta(D.mult_el(a, b)), s)
    t2 = el_scale(D.mult_el(D.apply_delta(a), b), -s)
    t3 = el_scale(D.mult_el(a, D.apply_delta(b)), -1)
    return el_add(el_add(t1, t2), t3)


@dataclass
class BVReport:
    ok: bool
    failures: list = field(default_factory=list)
    checked: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": self.failures[:5], "checked": self.checked}


def bv_check(D: BVData, max_failures: int = 1) -> BVReport:
    """Verify the BV axioms on the window basis.

    The bracket has degree +1 and the axioms checked are: Delta raises degree
    by exactly 1, Delta^2 = 0, graded antisymmetry, the Leibniz rule
    {a, bc} = {a,b}c + (-1)^{(|a|+1)|b|} b{a,c}, and graded Jacobi with the
    shifted signs.  Tuples whose products leave the window are skipped.
    """
    rep = BVReport(True)
    counts = {"degree": 0, "delta2": 0, "antisym": 0, "leibniz": 0, "jacobi": 0, "skipped": 0}

    def fail(kind, witness):
        rep.ok = False
        rep.failures.append({"axiom": kind, "witness": witness})

    lo, hi = D.window
    for b in D.basis:
        img = D.delta.get(b, {})
        for b2, c in img.items():
            if c and D.degree(b2) != D.degree(b) + 1:
                fail("delta-degree", f"Delta({b}) hits {b2}: degree {D.degree(b2)} != {D.degree(b) + 1}")
                if len(rep.failures) >= max_failures:
                    return rep
        counts["degree"] += 1
    for b in D.basis:
        if D.degree(b) + 2 > hi and any(D.delta.get(b, {}).values()):
            counts["skipped"] += 1
            continue
        if D.apply_delta(D.apply_delta({b: Fraction(1)})):
            fail("delta-squared", f"Delta^2({b}) != 0")
            if len(rep.failures) >= max_failures:
                return rep
        counts["delta2"] += 1

    def brk(x, y):
        return bracket(D, {x: Fraction(1)}, {y: Fraction(1)}, D.degree(x))

    for x in D.basis:
        for y in D.basis:
            try:
                lhs = brk(x, y)
                rhs = el_scale(brk(y, x), -1 if ((D.degree(x) + 1) * (D.degree(y) + 1)) % 2 else 1)
                rhs = el_scale(rhs, -1)
            except WindowOverflow:
                counts["skipped"] += 1
                continue
            if el_add(lhs, rhs):
                fail("antisymmetry", f"{{{x},{y}}} != -(-1)^((|a|+1)(|b|+1)) {{{y},{x}}}")
                if len(rep.failures) >= max_failures:
                    return rep
            counts["antisym"] += 1
    for x in D.basis:
        dx = D.degree(x)
        for y in D.basis:
            dy = D.degree(y)
            for z in D.basis:
                try:
                    bc = D.mult(y, z)
                    lhs = bracket(D, {x: Fraction(1)}, bc, dx)
                    t1 = D.mult_el(brk(x, y), {z: Fraction(1)})
                    t2 = el_scale(
                        D.mult_el({y: Fraction(1)}, brk(x, z)),
                        -1 if ((dx + 1) * dy) % 2 else 1,
                    )
                    rhs = el_add(t1, t2)
                except WindowOverflow:
                    counts["skipped"] += 1
                    continue
                if el_add(lhs, el_scale(rhs, -1)):
                    fail("leibniz", f"{{{x}, {y}*{z}}} fails the derivation rule")
                    if len(rep.failures) >= max_failures:
                        return rep
                counts["leibniz"] += 1
                try:
                    byz = brk(y, z)
                    l2 = bracket(D, {x: Fraction(1)}, byz, dx)
                    r1 = bracket(D, brk(x, y), {z: Fraction(1)}, dx + dy + 1)
                    r2 = el_scale(
                        bracket(D, {y: Fraction(1)}, brk(x, z), dy),
                        -1 if ((dx + 1) * (dy + 1)) % 2 else 1,
                    )
                except WindowOverflow:
                    counts["skipped"] += 1
                    continue
                if el_add(l2, el_scale(el_add(r1, r2), -1)):
                    fail("jacobi", f"jacobi fails at ({x},{y},{z})")
                    if len(rep.failures) >= max_failures:
                        return rep
                counts["jacobi"] += 1
    rep.checked = counts
    return rep
