"""G-decorated marked chord diagrams: holonomy traversal and graded composition.

The bundle over the circle is trivialized over [0,1) with a single seam at 0;
crossing the seam counterclockwise multiplies the fiber coordinate on the left
by the outer holonomy, and a chord identification multiplies by its element.
A decorated class keeps, per cluster, only the induced fiber identifications
between its vertices (the tree shape is forgotten), plus the mark lifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chords import (
    DiagramError,
    Diagram,
    MDClass,
    WalkTape,
    canonical_md,
    compose as compose_md,
    identity_md,
    locate,
    parse_diagram,
    region_walk,
    relabel as relabel_md,
    rep_diagram,
    validate_diagram,
)
from .groups import FiniteGroup


class HolonomyError(ValueError):
    """Holonomy mismatch in graded composition, or invalid decoration data."""

    def __init__(self, message: str, slot: int | None = None):
        super().__init__(message)
        self.slot = slot


@dataclass(frozen=True)
class GDiagram:
    """Canonical G-decorated marked chord diagram.

    transports[c][j] identifies the fiber over the j-th vertex (sorted) of
    cluster c with the fiber over its least vertex; transports[c][0] = 0.
    lifts[i] is the fiber coordinate of the mark of region i+1.
    """

    base: MDClass
    group: FiniteGroup
    outer: int
    transports: tuple[tuple[int, ...], ...]
    lifts: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.base.n

    def rep_deltas(self) -> dict[tuple[Fraction, Fraction], int]:
        """Identification element for each canonical path-tree chord."""
        out = {}
        G = self.group
        for grp, taus in zip(self.base.clusters, self.transports):
            for j in range(len(grp) - 1):
                out[(grp[j], grp[j + 1])] = G.mul(taus[j + 1], G.invert(taus[j]))
        return out

    def to_json(self) -> dict:
        data = self.base.to_json()
        deltas = self.rep_deltas()
        data["group"] = self.group.name
        data["outer"] = self.outer
        data["delta"] = [deltas[c] for c in self.base.rep_chords()]
        data["lifts"] = list(self.lifts)
        return data


def _cluster_transports(
    G: FiniteGroup,
    clusters: Sequence[Sequence[Fraction]],
    chords: Sequence[tuple[Fraction, Fraction]],
    delta: Sequence[int],
) -> tuple[tuple[int, ...], ...]:
    """Fiber transport from each cluster's least vertex, by tree walk over the chords."""
    adj: dict[Fraction, list[tuple[Fraction, int]]] = {}
    for (x, y), d in zip(chords, delta):
        adj.setdefault(x, []).append((y, d))
        adj.setdefault(y, []).append((x, G.invert(d)))
    out = []
    for grp in clusters:
        tau = {grp[0]: 0}
        frontier = [grp[0]]
        while frontier:
            v = frontier.pop()
            for w, d in adj.get(v, ()):  # transport v -> w is left multiplication by d
                if w not in tau:
                    tau[w] = G.mul(d, tau[v])
                    frontier.append(w)
        if set(tau) != set(grp):
            raise HolonomyError("cluster is not connected by its chords")
        out.append(tuple(tau[v] for v in grp))
    return tuple(out)


def decorate(
    n: int,
    chords: Sequence[Sequence[Fraction]],
    marks: Sequence[Fraction],
    group: FiniteGroup,
    outer: int,
    delta: Sequence[int],
    lifts: Sequence[int],
    interval_labels: Sequence[int] | None = None,
) -> GDiagram:
    """Canonicalize raw decorated diagram data.

    Flipping a chord inverts its element, relabeling permutes them, and only
    the per-cluster fiber identifications survive; a mark sitting on a cluster
    vertex is moved to the least vertex with its lift transported along.
    """
    d = validate_diagram(n, chords, marks, interval_labels)
    if len(delta) != len(d.chords):
        raise HolonomyError("need one identification element per chord")
    if len(lifts) != n:
        raise HolonomyError("need one mark lift per region")
    for v in list(delta) + list(lifts) + [outer]:
        if not 0 <= int(v) < group.order:
            raise HolonomyError(f"element index {v} out of range for {group.name}")
    transports = _cluster_transports(group, d.clusters, d.chords, [int(x) for x in delta])
    base = canonical_md(d)
    new_lifts = []
    cluster_min = {grp[0]: (ci, grp) for ci, grp in enumerate(d.clusters)}
    for i, z in enumerate(d.marks):
        k = int(lifts[i])
        if z in {v for grp in d.clusters for v in grp}:
            ci = d.cluster_of(z)
            grp = d.clusters[ci]
            j = grp.index(z)
            # move the mark to the least vertex: coordinate at least = tau_j^-1 * k
            k = group.mul(group.invert(transports[ci][j]), k)
        new_lifts.append(k)
    return GDiagram(base, group, int(outer), transports, tuple(new_lifts))


def from_gdiagram_json(data, resolve_group) -> GDiagram:
    import json as _json

    if isinstance(data, str):
        data = _json.loads(data)
    md_part = parse_diagram({k: data[k] for k in ("n", "chords", "marks") if k in data}
                            | ({"interval_labels": data["interval_labels"]} if "interval_labels" in data else {}))
    G = resolve_group(data["group"])
    chords = [
        (Fraction(int(c[0]), int(c[1])), Fraction(int(c[2]), int(c[3])))
        for c in data.get("chords", [])
    ]
    marks = [Fraction(int(m[0]), int(m[1])) for m in data["marks"]]
    return decorate(
        int(data["n"]),
        chords,
        marks,
        G,
        int(data["outer"]),
        [int(v) for v in data.get("delta", [])],
        [int(v) for v in data["lifts"]],
        data.get("interval_labels"),
    )


def _seam_crossings(seg_start: Fraction, length: Fraction) -> int:
    """1 if the walk segment passes through or arrives at circle coordinate 0."""
    o = (0 - seg_start) % 1
    if o == 0:
        o = Fraction(1)
    return 1 if o <= length else 0


def _walk_factors(W: GDiagram, label: int) -> list[int]:
    """Left-multiplication factors met along the region walk, in traversal order."""
    G = W.group
    tape = region_walk(W.base, label)
    cluster_tau = {ci: taus for ci, taus in enumerate(W.transports)}
    factors: list[int] = []
    if tape.start_cluster is not None:
        ci = tape.start_cluster
        grp = W.base.clusters[ci]
        factors.append(cluster_tau[ci][grp.index(tape.start_depart)])
    for u in tape.entries:
        if u[0] == "seg":
            if _seam_crossings(u[1], u[2]):
                factors.append(W.outer)
        else:
            ci, arr, dep = u[1], u[2], u[3]
            grp = W.base.clusters[ci]
            taus = cluster_tau[ci]
            factors.append(G.mul(taus[grp.index(dep)], G.invert(taus[grp.index(arr)])))
    if tape.start_cluster is not None:
        ci = tape.start_cluster
        grp = W.base.clusters[ci]
        factors.append(G.invert(cluster_tau[ci][grp.index(tape.end_arrival)]))
    return factors


def incoming_holonomy(W: GDiagram) -> tuple[int, ...]:
    """Per-region holonomy measured from the lifted mark, following orientation."""
    G = W.group
    out = []
    for label in range(1, W.n + 1):
        w = 0
        for f in _walk_factors(W, label):
            w = G.mul(f, w)
        k = W.lifts[label - 1]
        out.append(G.mul(G.mul(G.invert(k), w), k))
    return tuple(out)


def outgoing_holonomy(W: GDiagram) -> int:
    """Total holonomy of the outer circle from the base lift; equals the stored element."""
    return W.outer


def g_identity(G: FiniteGroup, h: int) -> GDiagram:
    """The graded identity at holonomy h: no chords, mark at the base point, unit lift."""
    return GDiagram(identity_md(), G, h, (), (0,))


def relabel(W: GDiagram, perm: Sequence[int]) -> GDiagram:
    base = relabel_md(W.base, perm)
    lifts = [0] * W.n
    for old, k in enumerate(W.lifts):
        lifts[perm[old]] = k
    return GDiagram(base, W.group, W.outer, W.transports, tuple(lifts))


def _transport_to(W: GDiagram, tape: WalkTape, s: Fraction) -> int:
    """Fiber transport factor from the mark's fiber to the point at arc length s.

    When s falls on a cluster passage the transport ends at the passage's
    arrival vertex, matching the attachment convention of the base composition.
    """
    G = W.group
    acc = 0
    if tape.start_cluster is not None:
        ci = tape.start_cluster
        grp = W.base.clusters[ci]
        if s == 0:
            return W.transports[ci][grp.index(tape.end_arrival)]
        acc = W.transports[ci][grp.index(tape.start_depart)]
    if s == 0:
        return acc
    cum = Fraction(0)
    for u in tape.entries:
        if u[0] == "pass":
            if cum == s:
                return acc  # stop at the arrival vertex, before the passage
            ci, arr, dep = u[1], u[2], u[3]
            grp = W.base.clusters[ci]
            taus = W.transports[ci]
            acc = G.mul(G.mul(taus[grp.index(dep)], G.invert(taus[grp.index(arr)])), acc)
            continue
        if cum == s:
            return acc
        seg_len = u[2]
        if s < cum + seg_len:
            o = (0 - u[1]) % 1
            if o == 0:
                o = Fraction(1)
            if 0 < o <= s - cum:
                acc = G.mul(W.outer, acc)
            return acc
        if _seam_crossings(u[1], seg_len):
            acc = G.mul(W.outer, acc)
        cum += seg_len
    raise DiagramError("bad-coordinate", "walk position out of range", s)


def g_compose(W: GDiagram, parts: Sequence[GDiagram]) -> GDiagram:
    """Graded composition; defined when each region holonomy of the base equals
    the outer holonomy of the part patched into it.  The composite's holonomies
    are recomputed from scratch and checked against the matching contract."""
    if len(parts) != W.n:
        raise HolonomyError(f"need {W.n} parts, got {len(parts)}")
    for p in parts:
        if p.group != W.group:
            raise HolonomyError("parts must be decorated over the same group")
    ih = incoming_holonomy(W)
    for i, p in enumerate(parts):
        if outgoing_holonomy(p) != ih[i]:
            raise HolonomyError(
                f"slot {i + 1}: region holonomy {ih[i]} != part outer holonomy {p.outer}",
                slot=i + 1,
            )
    G = W.group
    base_out = compose_md(W.base, [p.base for p in parts])
    d = rep_diagram(W.base)
    base_deltas = W.rep_deltas()
    new_chords: list[tuple[Fraction, Fraction]] = list(d.chords)
    new_delta: list[int] = [base_deltas[c] for c in d.chords]
    new_marks: list[Fraction] = []
    new_lifts: list[int] = []
    for i, p in enumerate(parts):
        tape = region_walk(W.base, i + 1)
        r = tape.total
        k_i = W.lifts[i]
        part_deltas = p.rep_deltas()
        for x, y in p.base.rep_chords():
            dx = locate(tape, r * x)[1]
            dy = locate(tape, r * y)[1]
            fx = _transport_to(W, tape, r * x)
            fy = _transport_to(W, tape, r * y)
            # composite fiber coordinates glue as F(t) k_i a for part coordinate a
            dprime = G.mul(
                G.mul(G.mul(fy, k_i), part_deltas[(x, y)]),
                G.invert(G.mul(fx, k_i)),
            )
            new_chords.append((dx, dy))
            new_delta.append(dprime)
        for j, z in enumerate(p.base.marks):
            new_marks.append(locate(tape, r * z)[1])
            new_lifts.append(G.mul(G.mul(_transport_to(W, tape, r * z), k_i), p.lifts[j]))
    out = decorate(
        base_out.n,
        new_chords,
        new_marks,
        G,
        W.outer,
        new_delta,
        new_lifts,
        interval_labels=None if not base_out.arc_starts else base_out.arc_labels,
    )
    if out.base != base_out:
        raise HolonomyError("decorated composite disagrees with the base composition")
    expect = tuple(h for p in parts for h in incoming_holonomy(p))
    got = incoming_holonomy(out)
    if got != expect:
        raise HolonomyError(f"composite holonomies {got} do not match the parts {expect}")
    if outgoing_holonomy(out) != W.outer:
        raise HolonomyError("composite outer holonomy changed")
    return out


def random_gdiagram(rng, md: MDClass, G: FiniteGroup, outer: int) -> GDiagram:
    """A uniformly random decoration of the base diagram with the given outer holonomy."""
    transports = tuple(
        (0,) + tuple(rng.randrange(G.order) for _ in range(len(grp) - 1)) for grp in md.clusters
    )
    lifts = tuple(rng.randrange(G.order) for _ in range(md.n))
    return GDiagram(md, G, outer, transports, lifts)


def enumerate_gmd(
    md: MDClass,
    G: FiniteGroup,
    outer: int,
    inner: tuple[int, ...] | None = None,
    cap: int = 1_000_000,
) -> list[GDiagram]:
    """All decorated classes over a base diagram with the given outer holonomy,
    optionally filtered by the inner holonomy signature.  Exhaustive search."""
    from itertools import product

    n = md.n
    free = sum(len(g) - 1 for g in md.clusters)
    total = G.order ** (free + n)
    if total > cap:
        raise HolonomyError(f"search space {total} exceeds cap {cap}")
    out = []
    tau_ranges = [range(G.order) for _ in range(free)]
    for taus_flat in product(*tau_ranges):
        transports = []
        pos = 0
        for grp in md.clusters:
            transports.append((0,) + tuple(taus_flat[pos : pos + len(grp) - 1]))
            pos += len(grp) - 1
        for lifts in product(range(G.order), repeat=n):
            W = GDiagram(md, G, outer, tuple(transports), lifts)
            if inner is None or incoming_holonomy(W) == tuple(inner):
                out.append(W)
    return out
