"""Marked chord diagrams on the unit-perimeter circle and their operad.

Coordinates are exact rationals in [0,1) with the initial marked point at 0.
Chords are non-crossing, may share endpoints, and their endpoint graph must be
a forest; the disc then falls into n regions for n-1 chords.  Classes are
quotients by chord relabeling and flips, by moving marks within a cluster
(the vertex set of one tree), and by forgetting tree shapes: only the cluster
partition and the interval labeling survive, which is exactly the data this
module canonicalizes and compares.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class DiagramError(ValueError):
    """Invalid diagram data, with a machine-readable kind and witness."""

    def __init__(self, kind: str, message: str, witness=None):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


def _mod1(x: Fraction) -> Fraction:
    return x % 1


def _ccw(a: Fraction, b: Fraction) -> Fraction:
    """Arc length from a counterclockwise to b."""
    return (b - a) % 1


@dataclass(frozen=True)
class Diagram:
    """A validated marked labeled chord diagram with its region decomposition."""

    n: int
    chords: tuple[tuple[Fraction, Fraction], ...]
    marks: tuple[Fraction, ...]
    vertices: tuple[Fraction, ...]
    clusters: tuple[tuple[Fraction, ...], ...]
    # per region (index = label-1): cyclic unit list, each unit either
    # ("seg", start, length) or ("pass", cluster_index, arrival, departure, jumps)
    regions: tuple[tuple[tuple, ...], ...]
    arc_labels: tuple[int, ...]  # label of the arc starting at vertices[i]

    def perimeter(self, label: int) -> Fraction:
        return sum((u[2] for u in self.regions[label - 1] if u[0] == "seg"), Fraction(0))

    def cluster_of(self, v: Fraction) -> int:
        for i, c in enumerate(self.clusters):
            if v in c:
                return i
        raise KeyError(v)


def _check_crossings(chords: Sequence[tuple[Fraction, Fraction]]) -> None:
    def strictly_inside(p, a, b):
        return 0 < _ccw(a, p) < _ccw(a, b)

    for i in range(len(chords)):
        a, b = chords[i]
        for j in range(i + 1, len(chords)):
            c, d = chords[j]
            if c in (a, b) or d in (a, b):
                continue
            if strictly_inside(c, a, b) != strictly_inside(d, a, b):
                raise DiagramError("crossing", f"chords {i} and {j} cross", (i, j))


def _clusters(chords: Sequence[tuple[Fraction, Fraction]]) -> list[list[Fraction]]:
    """Trees of the endpoint forest; raises on any cycle."""
    parent: dict[Fraction, Fraction] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in chords:
        parent.setdefault(x, x)
        parent.setdefault(y, y)
    for idx, (x, y) in enumerate(chords):
        rx, ry = find(x), find(y)
        if rx == ry:
            raise DiagramError("cycle", f"chord {idx} closes a cycle in the endpoint forest", idx)
        parent[rx] = ry
    groups: dict[Fraction, list[Fraction]] = {}
    for v in parent:
        groups.setdefault(find(v), []).append(v)
    return sorted([sorted(g) for g in groups.values()])


def _face_units(
    vertices: tuple[Fraction, ...],
    chords: tuple[tuple[Fraction, Fraction], ...],
    cluster_index: dict[Fraction, int],
) -> list[list[tuple]]:
    """Region boundaries as cyclic unit lists, via half-edge face traversal.

    Rotation order at a vertex v lists outgoing directions counterclockwise:
    the forward circle arc, then the chords ordered by the counterclockwise
    distance of their far endpoint, then the backward arc.  The next half-edge
    of a face is the clockwise successor of the reversed current one, which
    keeps the region on the left.
    """
    V = len(vertices)
    vidx = {v: i for i, v in enumerate(vertices)}
    ends_at: list[list[tuple[Fraction, int, int]]] = [[] for _ in range(V)]
    for j, (x, y) in enumerate(chords):
        ends_at[vidx[x]].append((_ccw(x, y), j, 0))
        ends_at[vidx[y]].append((_ccw(y, x), j, 1))
    for lst in ends_at:
        lst.sort()

    def next_he(h):
        if h[0] == "arc":
            head = (h[1] + 1) % V
            lst = ends_at[head]
            if lst:
                _, j, d = lst[-1]
                return ("chord", j, d)
            return ("arc", head)
        _, j, d = h
        head = vidx[chords[j][1] if d == 0 else chords[j][0]]
        lst = ends_at[head]
        pos = next(k for k, (_, j2, d2) in enumerate(lst) if j2 == j and d2 == 1 - d)
        if pos >= 1:
            _, j2, d2 = lst[pos - 1]
            return ("chord", j2, d2)
        return ("arc", head)

    all_hes = [("arc", i) for i in range(V)] + [
        ("chord", j, d) for j in range(len(chords)) for d in (0, 1)
    ]
    seen: set = set()
    faces = []
    for h0 in all_hes:
        if h0 in seen:
            continue
        cycle = []
        h = h0
        while h not in seen:
            seen.add(h)
            cycle.append(h)
            h = next_he(h)
        if h != h0:
            raise DiagramError("traversal", "face traversal failed to close", h0)
        faces.append(cycle)

    out = []
    for cycle in faces:
        arc_positions = [k for k, h in enumerate(cycle) if h[0] == "arc"]
        if not arc_positions:
            raise DiagramError("zero-measure", "region with no circle arcs", None)
        start = arc_positions[0]
        cycle = cycle[start:] + cycle[:start]
        units: list[tuple] = []
        k = 0
        while k < len(cycle):
            h = cycle[k]
            if h[0] == "arc":
                i = h[1]
                units.append(("seg", vertices[i], _ccw(vertices[i], vertices[(i + 1) % V])))
                k += 1
            else:
                jumps = []
                while k < len(cycle) and cycle[k][0] == "chord":
                    jumps.append((cycle[k][1], cycle[k][2]))
                    k += 1
                j0, d0 = jumps[0]
                jl, dl = jumps[-1]
                arrival = chords[j0][d0]  # source vertex of the first jump
                depart = chords[jl][1 - dl]
                units.append(
                    ("pass", cluster_index[arrival], arrival, depart, tuple(jumps))
                )
        out.append(units)
    return out


def _region_of_point(vertices, arc_labels, z: Fraction) -> int:
    """Label of the region whose arc strictly contains the non-vertex point z."""
    V = len(vertices)
    i = bisect_right(vertices, z) - 1
    if i < 0:
        i = V - 1
    return arc_labels[i]


def validate_diagram(
    n: int,
    chords: Iterable[Sequence[Fraction]],
    marks: Iterable[Fraction],
    forced_arc_labels: Sequence[int] | None = None,
) -> Diagram:
    """Check all diagram invariants and compute the labeled region decomposition.

    Region labels are implied by the marks: region i is the one carrying z_i.
    A mark sitting on a cluster vertex is ambiguous between the regions that
    touch the cluster; the lexicographically least perfect matching is used.
    Canonical-class input carries explicit interval labels instead.
    """
    if n < 1:
        raise DiagramError("bad-coordinate", "n must be at least 1", n)
    cl = []
    for c in chords:
        if len(c) != 2:
            raise DiagramError("bad-coordinate", "chord needs two endpoints", tuple(c))
        x, y = _mod1(Fraction(c[0])), _mod1(Fraction(c[1]))
        if x == y:
            raise DiagramError("bad-coordinate", "chord endpoints coincide", (x, y))
        cl.append((x, y))
    ml = [_mod1(Fraction(z)) for z in marks]
    if len(cl) != n - 1:
        raise DiagramError("arity", f"{n} regions need {n - 1} chords, got {len(cl)}", len(cl))
    if len(ml) != n:
        raise DiagramError("arity", f"{n} regions need {n} marks, got {len(ml)}", len(ml))

    _check_crossings(cl)
    clusters = _clusters(cl)
    cluster_index: dict[Fraction, int] = {}
    for ci, grp in enumerate(clusters):
        for v in grp:
            cluster_index[v] = ci
    vertices = tuple(sorted(cluster_index))
    chords_t = tuple(cl)

    if not vertices:
        faces = [[("seg", Fraction(0), Fraction(1))]]
    else:
        faces = _face_units(vertices, chords_t, cluster_index)
    if len(faces) != n:
        raise DiagramError("zero-measure", f"expected {n} regions, found {len(faces)}", len(faces))

    # face ordering key for deterministic matching
    def face_key(units):
        return min(u[1] for u in units if u[0] == "seg")

    order = sorted(range(n), key=lambda f: face_key(faces[f]))
    touched = []
    for units in faces:
        t = set()
        for u in units:
            if u[0] == "pass":
                t.add(u[1])
        touched.append(t)
    arc_start_face: dict[Fraction, int] = {}
    for fi, units in enumerate(faces):
        for u in units:
            if u[0] == "seg":
                arc_start_face[u[1]] = fi

    def candidates(z: Fraction) -> list[int]:
        if z in cluster_index:
            ci = cluster_index[z]
            return [f for f in order if ci in touched[f]]
        V = len(vertices)
        if V == 0:
            return [0]
        i = bisect_right(vertices, z) - 1
        if i < 0:
            i = V - 1
        return [arc_start_face[vertices[i]]]

    cand = [candidates(z) for z in ml]

    assignment: list[int | None] = [None] * n  # mark index -> face index
    if forced_arc_labels is not None:
        if len(vertices) != len(forced_arc_labels):
            raise DiagramError("arity", "interval label count does not match vertices", None)
        face_label: dict[int, int] = {}
        for vi, v in enumerate(vertices):
            f = arc_start_face[v]
            lab = forced_arc_labels[vi]
            if face_label.setdefault(f, lab) != lab:
                raise DiagramError("mark-off-region", "inconsistent interval labels", vi)
        if not vertices:
            face_label[0] = 1
        if sorted(face_label.values()) != list(range(1, n + 1)):
            raise DiagramError("mark-off-region", "interval labels are not a bijection", None)
        for mi in range(n):
            f = next(f for f, lab in face_label.items() if lab == mi + 1)
            if f not in cand[mi]:
                raise DiagramError("mark-off-region", f"mark {mi + 1} is not on region {mi + 1}", mi)
            assignment[mi] = f
    else:

        def backtrack(mi: int, used: set[int]) -> bool:
            if mi == n:
                return True
            for f in cand[mi]:
                if f not in used:
                    assignment[mi] = f
                    if backtrack(mi + 1, used | {f}):
                        return True
            assignment[mi] = None
            return False

        if not backtrack(0, set()):
            bad = next(i for i in range(n) if assignment[i] is None)
            raise DiagramError(
                "mark-off-region", f"mark {bad + 1} cannot be placed on its own region", bad
            )

    face_of_label = {mi + 1: assignment[mi] for mi in range(n)}
    regions = tuple(tuple(tuple(u) for u in faces[face_of_label[lab]]) for lab in range(1, n + 1))
    label_of_face = {f: lab for lab, f in face_of_label.items()}
    arc_labels = tuple(label_of_face[arc_start_face[v]] for v in vertices)
    return Diagram(
        n,
        chords_t,
        tuple(ml),
        vertices,
        tuple(tuple(g) for g in clusters),
        regions,
        arc_labels,
    )


def regions_report(d: Diagram) -> list[dict]:
    """Per-region boundary loops (arcs and chord jumps) with perimeters."""
    out = []
    for lab in range(1, d.n + 1):
        loop = []
        for u in d.regions[lab - 1]:
            if u[0] == "seg":
                loop.append({"arc": [str(u[1]), str(u[2])]})
            else:
                loop.append({"jump": [[int(j), int(r)] for j, r in u[4]]})
        out.append({"label": lab, "perimeter": str(d.perimeter(lab)), "loop": loop})
    return out


# canonical classes ----------------------------------------------------------


@dataclass(frozen=True)
class MDClass:
    """Canonical representative of a marked chord diagram class.

    Only the data surviving the quotients is kept: cluster partition of the
    chord endpoints, interval labels, and the marks (marks on a cluster are
    normalized to its least coordinate).
    """

    n: int
    marks: tuple[Fraction, ...]
    clusters: tuple[tuple[Fraction, ...], ...]
    arc_starts: tuple[Fraction, ...]
    arc_labels: tuple[int, ...]

    def rep_chords(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Path-tree representative chords, sorted."""
        out = []
        for grp in self.clusters:
            for a, b in zip(grp, grp[1:]):
                out.append((a, b))
        return tuple(sorted(out))

    def perimeter(self, label: int) -> Fraction:
        return rep_diagram(self).perimeter(label)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "chords": [
                [c[0].numerator, c[0].denominator, c[1].numerator, c[1].denominator]
                for c in self.rep_chords()
            ],
            "marks": [[z.numerator, z.denominator] for z in self.marks],
            "clusters": [[[v.numerator, v.denominator] for v in g] for g in self.clusters],
            "interval_labels": list(self.arc_labels),
        }


@lru_cache(maxsize=4096)
def rep_diagram(md: MDClass) -> Diagram:
    return validate_diagram(md.n, md.rep_chords(), md.marks, forced_arc_labels=md.arc_labels)


def canonical_md(d: Diagram) -> MDClass:
    cluster_min = {v: grp[0] for grp in d.clusters for v in grp}
    marks = tuple(cluster_min.get(z, z) for z in d.marks)
    return MDClass(d.n, marks, d.clusters, d.vertices, d.arc_labels)


def md_from_data(n, chords, marks, arc_labels=None) -> MDClass:
    return canonical_md(validate_diagram(n, chords, marks, arc_labels))


def identity_md() -> MDClass:
    return MDClass(1, (Fraction(0),), (), (), ())


def relabel(md: MDClass, perm: Sequence[int]) -> MDClass:
    """Push the class along a permutation of region labels; perm[old] = new (0-based)."""
    if sorted(perm) != list(range(md.n)):
        raise DiagramError("arity", "not a permutation of the labels", tuple(perm))
    marks = [None] * md.n
    for old, z in enumerate(md.marks):
        marks[perm[old]] = z
    labels = tuple(perm[lab - 1] + 1 for lab in md.arc_labels)
    return MDClass(md.n, tuple(marks), md.clusters, md.arc_starts, labels)


# region walks ---------------------------------------------------------------


@dataclass(frozen=True)
class WalkTape:
    """The boundary of one region unrolled from its mark, for laying parts along."""

    label: int
    total: Fraction
    start_cluster: int | None       # set when the mark sits on a cluster
    start_depart: Fraction | None   # departure vertex of the starting passage
    end_arrival: Fraction | None    # arrival vertex of the closing passage
    entries: tuple                  # ("seg", start, length) | ("pass", cluster, arr, dep, jumps)


def region_walk(md: MDClass, label: int) -> WalkTape:
    d = rep_diagram(md)
    units = list(d.regions[label - 1])
    z = md.marks[label - 1]
    total = d.perimeter(label)
    if not d.vertices:
        return WalkTape(label, Fraction(1), None, None, None, (("seg", z, Fraction(1)),))
    if z in d.vertices:
        ci = d.cluster_of(z)
        pos = next(
            (k for k, u in enumerate(units) if u[0] == "pass" and u[1] == ci), None
        )
        if pos is None:
            raise DiagramError("mark-off-region", f"mark {label} is not on region {label}", label)
        u = units[pos]
        rotated = units[pos + 1 :] + units[:pos]
        return WalkTape(label, total, ci, u[3], u[2], tuple(rotated))
    for k, u in enumerate(units):
        if u[0] == "seg":
            off = _ccw(u[1], z)
            if 0 < off < u[2]:
                rotated = units[k + 1 :] + units[:k]
                entries = [("seg", z, u[2] - off)] + rotated + [("seg", u[1], off)]
                return WalkTape(label, total, None, None, None, tuple(entries))
    raise DiagramError("mark-off-region", f"mark {label} is not on region {label}", label)


def locate(tape: WalkTape, s: Fraction):
    """Position at arc length s along the tape.

    Returns ("point", coord) strictly inside an arc, or ("vertex", coord) when
    s falls on a cluster passage; the coordinate is then the passage's arrival
    vertex, which is on the region's closure.
    """
    if s < 0 or s >= tape.total:
        raise DiagramError("bad-coordinate", "walk position out of range", s)
    if s == 0:
        if tape.start_cluster is not None:
            return ("vertex", tape.end_arrival)
        first = tape.entries[0]
        return ("point", first[1])
    cum = Fraction(0)
    prev_pass = None
    for u in tape.entries:
        if u[0] == "pass":
            prev_pass = u
            continue
        if s == cum:
            assert prev_pass is not None
            return ("vertex", prev_pass[2])
        if s < cum + u[2]:
            return ("point", _mod1(u[1] + (s - cum)))
        cum += u[2]
    raise DiagramError("bad-coordinate", "walk position out of range", s)


# composition ----------------------------------------------------------------


def _interior_witness(part: MDClass, label: int, base_tape: WalkTape, avoid: set[Fraction]) -> Fraction:
    """A transported interior point of the part's region, avoiding given coordinates."""
    pd = rep_diagram(part)
    seg = next(u for u in pd.regions[label - 1] if u[0] == "seg")
    for k in range(2, 67):
        w = _mod1(seg[1] + seg[2] / k)  # strictly inside one arc of the part region
        kind, coord = locate(base_tape, base_tape.total * w)
        if kind == "point" and coord not in avoid:
            return coord
    raise DiagramError("traversal", "could not find an interior witness", label)


def _walk_position(md: MDClass, label: int, point: Fraction) -> Fraction:
    """Arc length of a circle point along the region walk (point must be interior
    to one of the region's arcs)."""
    tape = region_walk(md, label)
    cum = Fraction(0)
    for u in tape.entries:
        if u[0] != "seg":
            continue
        off = _ccw(u[1], point)
        if off < u[2]:
            return cum + off
        cum += u[2]
    raise DiagramError("mark-off-region", "point is not interior to the region", point)


def compose(base: MDClass, parts: Sequence[MDClass]) -> MDClass:
    """Operad composition: part i is rescaled to the perimeter of region i and
    laid along its boundary starting at the mark, following the orientation."""
    if len(parts) != base.n:
        raise DiagramError("arity", f"need {base.n} parts, got {len(parts)}", len(parts))
    new_chords: list[tuple[Fraction, Fraction]] = list(rep_diagram(base).chords)
    new_marks: list[Fraction] = []
    placements: list[tuple[int, int, Fraction]] = []  # (part index, part label, witness coord)
    tapes = [region_walk(base, i + 1) for i in range(base.n)]

    def place(tape, r, t):
        kind, coord = locate(tape, r * t)
        return coord

    for pi, part in enumerate(parts):
        tape = tapes[pi]
        r = tape.total
        for x, y in part.rep_chords():
            new_chords.append((place(tape, r, x), place(tape, r, y)))
        for z in part.marks:
            new_marks.append(place(tape, r, z))

    total_n = sum(p.n for p in parts)
    # label the composite regions through interior witness points: the region
    # containing a transported interior point of part i's region j gets the
    # corresponding renumbered label, so marks on shared clusters stay unambiguous
    cl = [(_mod1(Fraction(c[0])), _mod1(Fraction(c[1]))) for c in new_chords]
    _check_crossings(cl)
    clusters = _clusters(cl)
    cluster_index = {v: ci for ci, grp in enumerate(clusters) for v in grp}
    vertices = tuple(sorted(cluster_index))
    faces = (
        [[("seg", Fraction(0), Fraction(1))]]
        if not vertices
        else _face_units(vertices, tuple(cl), cluster_index)
    )
    if len(faces) != total_n:
        raise DiagramError("zero-measure", "composite region count mismatch", len(faces))
    arc_start_face = {}
    for fi, units in enumerate(faces):
        for u in units:
            if u[0] == "seg":
                arc_start_face[u[1]] = fi
    vertex_set = set(vertices)
    offset = 0
    face_label: dict[int, int] = {}
    for pi, part in enumerate(parts):
        tape = tapes[pi]
        for j in range(1, part.n + 1):
            w = _interior_witness(part, j, tape, vertex_set)
            if vertices:
                i = bisect_right(vertices, w) - 1
                if i < 0:
                    i = len(vertices) - 1
                fi = arc_start_face[vertices[i]]
            else:
                fi = 0
            lab = offset + j
            if face_label.setdefault(fi, lab) != lab:
                raise DiagramError("traversal", "two part regions map to one composite region", (pi, j))
        offset += part.n
    arc_labels = tuple(face_label[arc_start_face[v]] for v in vertices)
    out = validate_diagram(total_n, new_chords, new_marks, forced_arc_labels=arc_labels)
    return canonical_md(out)


# cactus correspondence ------------------------------------------------------


class CactusError(ValueError):
    pass


@dataclass(frozen=True)
class Cactus:
    """Lobes with perimeters, joints with cyclic incidence, and the base point.

    Lobe i is parameterized from its own marked point; a joint incidence
    (lobe, offset) records where the joint sits on that lobe.  base_offset is
    the position of the global base point on its lobe.
    """

    perimeters: tuple[Fraction, ...]
    joints: tuple[tuple[tuple[int, Fraction], ...], ...]
    base_lobe: int
    base_offset: Fraction
    base_on_joint: bool = False

    def to_json(self) -> dict:
        return {
            "perimeters": [[p.numerator, p.denominator] for p in self.perimeters],
            "joints": [
                [[lobe, [off.numerator, off.denominator]] for lobe, off in j] for j in self.joints
            ],
            "base_lobe": self.base_lobe,
            "base_offset": [self.base_offset.numerator, self.base_offset.denominator],
            "base_on_joint": self.base_on_joint,
        }


def _canonical_joint(joint: Sequence[tuple[int, Fraction]]) -> tuple[tuple[int, Fraction], ...]:
    rotations = [tuple(joint[k:]) + tuple(joint[:k]) for k in range(len(joint))]
    return min(rotations)


def _pass_offset(tape: WalkTape, cluster: int) -> Fraction:
    if tape.start_cluster == cluster:
        return Fraction(0)
    cum = Fraction(0)
    for u in tape.entries:
        if u[0] == "seg":
            cum += u[2]
        elif u[1] == cluster:
            return cum
    raise CactusError(f"region {tape.label} does not pass cluster {cluster}")


def to_cactus(md: MDClass) -> Cactus:
    d = rep_diagram(md)
    tapes = [region_walk(md, i + 1) for i in range(md.n)]
    perims = tuple(t.total for t in tapes)
    joints = []
    for ci, grp in enumerate(d.clusters):
        incid = []
        for v in grp:
            vi = d.vertices.index(v)
            lobe = d.arc_labels[vi]  # region of the arc leaving v
            incid.append((lobe, _pass_offset(tapes[lobe - 1], ci)))
        joints.append(_canonical_joint(incid))
    u = Fraction(0)
    if u in d.vertices:
        vi = d.vertices.index(u)
        lobe = d.arc_labels[vi]
        ci = d.cluster_of(u)
        return Cactus(perims, tuple(sorted(joints)), lobe, _pass_offset(tapes[lobe - 1], ci), True)
    if d.vertices:
        lobe = _region_of_point(d.vertices, d.arc_labels, u)
    else:
        lobe = 1
    return Cactus(perims, tuple(sorted(joints)), lobe, _walk_position(md, lobe, u), False)


def from_cactus(c: Cactus) -> MDClass:
    """Unroll the cactus boundary from the base point into the unit circle."""
    n = len(c.perimeters)
    if sum(c.perimeters, Fraction(0)) != 1:
        raise CactusError("lobe perimeters must sum to 1")
    by_lobe: dict[int, list[tuple[Fraction, int]]] = {i + 1: [] for i in range(n)}
    for qi, joint in enumerate(c.joints):
        if len(joint) < 2:
            raise CactusError(f"joint {qi} touches fewer than two lobes")
        seen_lobes = set()
        for lobe, off in joint:
            if lobe < 1 or lobe > n:
                raise CactusError(f"joint {qi} touches unknown lobe {lobe}")
            if lobe in seen_lobes:
                raise CactusError(f"joint {qi} touches lobe {lobe} twice")
            seen_lobes.add(lobe)
            if not 0 <= off < c.perimeters[lobe - 1]:
                raise CactusError(f"joint {qi} offset out of range on lobe {lobe}")
            by_lobe[lobe].append((off, qi))
    for lobe, offs in by_lobe.items():
        offs.sort()
        for (o1, _), (o2, _) in zip(offs, offs[1:]):
            if o1 == o2:
                raise CactusError(f"two joints at the same point of lobe {lobe}")

    def next_joint(lobe: int, off: Fraction) -> tuple[Fraction, int] | None:
        """First joint strictly ahead of the given lobe offset (cyclically)."""
        offs = by_lobe[lobe]
        if not offs:
            return None
        r = c.perimeters[lobe - 1]
        best = None
        for o, qi in offs:
            d = (o - off) % r
            if d == 0:
                d = r
            if best is None or d < best[0]:
                best = (d, o, qi)
        return best[1], best[2]

    cur_lobe, cur_off = c.base_lobe, c.base_offset
    s = Fraction(0)
    # (global start, length, lobe, lobe offset at start)
    segments: list[tuple[Fraction, Fraction, int, Fraction]] = []
    visits: dict[int, list[Fraction]] = {}
    guard = 0
    max_steps = 4 + sum(len(j) for j in c.joints) + n
    while s < 1:
        r = c.perimeters[cur_lobe - 1]
        nj = next_joint(cur_lobe, cur_off)
        remaining = 1 - s
        if nj is None:
            delta, endpoint = r, None
        else:
            off2, qi = nj
            delta = (off2 - cur_off) % r
            if delta == 0:
                delta = r
            endpoint = (off2, qi)
        if delta > remaining:
            # the walk must close mid-lobe exactly at the base point
            if (
                c.base_on_joint
                or cur_lobe != c.base_lobe
                or (cur_off + remaining) % r != c.base_offset
            ):
                raise CactusError("boundary walk does not close at the base point")
            segments.append((s, remaining, cur_lobe, cur_off))
            s = Fraction(1)
            break
        segments.append((s, delta, cur_lobe, cur_off))
        s += delta
        if endpoint is None:
            if s != 1 or c.base_on_joint or cur_lobe != c.base_lobe:
                raise CactusError("boundary walk does not close")
            break
        off2, qi = endpoint
        joint = c.joints[qi]
        pos = next((k for k, (lo, of) in enumerate(joint) if lo == cur_lobe and of == off2), None)
        if pos is None:
            raise CactusError("walk arrived at a joint with no matching incidence")
        if s == 1:
            # the closing arrival switches back onto the base incidence
            if not c.base_on_joint or joint[(pos + 1) % len(joint)] != (c.base_lobe, c.base_offset):
                raise CactusError("boundary walk ends on a joint away from the base point")
            visits.setdefault(qi, []).append(Fraction(0))
            break
        visits.setdefault(qi, []).append(s)
        cur_lobe, cur_off = joint[(pos + 1) % len(joint)]
        guard += 1
        if guard > max_steps:
            raise CactusError("boundary walk does not close; dual graph is not a tree")
    if s != 1:
        raise CactusError("boundary walk came back early; cactus is disconnected")
    for qi, joint in enumerate(c.joints):
        if len(visits.get(qi, [])) != len(joint):
            raise CactusError(f"joint {qi} was not visited once per incident lobe")

    chords: list[tuple[Fraction, Fraction]] = []
    for qi in sorted(visits):
        pos = sorted(visits[qi])
        for a, b in zip(pos, pos[1:]):
            chords.append((a, b))
    marks: list[Fraction] = []
    for lobe in range(1, n + 1):
        r = c.perimeters[lobe - 1]
        at_joint = next(
            (qi for qi, joint in enumerate(c.joints) if any(lo == lobe and of == 0 for lo, of in joint)),
            None,
        )
        if at_joint is not None:
            marks.append(min(visits[at_joint]))
            continue
        z = None
        for g0, dl, lo, off0 in segments:
            if lo != lobe:
                continue
            t = (0 - off0) % r
            if t < dl:
                z = _mod1(g0 + t)
                break
        if z is None:
            raise CactusError(f"could not locate the marked point of lobe {lobe}")
        marks.append(z)
    arc_labels_map: dict[Fraction, int] = {}
    for g0, dl, lo, off0 in segments:
        arc_labels_map[_mod1(g0)] = lo
    vertex_list = sorted({v for pos in visits.values() for v in pos})
    arc_labels = tuple(arc_labels_map[v] for v in vertex_list)
    return md_from_data(n, chords, marks, arc_labels)


# JSON interchange -----------------------------------------------------------


def parse_diagram(data: str | dict) -> MDClass:
    """Diagram from JSON {"n", "chords": [[xn,xd,yn,yd],...], "marks": [[n,d],...]};
    canonical-class output also carries "clusters" and "interval_labels"."""
    import json as _json

    if isinstance(data, str):
        try:
            data = _json.loads(data)
        except _json.JSONDecodeError as e:
            raise DiagramError("bad-coordinate", f"malformed JSON: {e}") from None
    if not isinstance(data, dict):
        raise DiagramError("bad-coordinate", "diagram JSON must be an object")
    try:
        n = int(data["n"])
        chords = [
            (Fraction(int(c[0]), int(c[1])), Fraction(int(c[2]), int(c[3])))
            for c in data.get("chords", [])
        ]
        marks = [Fraction(int(m[0]), int(m[1])) for m in data["marks"]]
    except (KeyError, IndexError, TypeError, ZeroDivisionError) as e:
        raise DiagramError("bad-coordinate", f"bad diagram JSON: {e}") from None
    labels = data.get("interval_labels")
    if labels is not None:
        labels = [int(v) for v in labels]
    return md_from_data(n, chords, marks, labels)


def parse_cactus(data: str | dict) -> Cactus:
    import json as _json

    if isinstance(data, str):
        try:
            data = _json.loads(data)
        except _json.JSONDecodeError as e:
            raise CactusError(f"malformed JSON: {e}") from None
    try:
        perims = tuple(Fraction(int(p[0]), int(p[1])) for p in data["perimeters"])
        joints = tuple(
            _canonical_joint([(int(lobe), Fraction(int(off[0]), int(off[1]))) for lobe, off in j])
            for j in data["joints"]
        )
        base_lobe = int(data["base_lobe"])
        bo = data["base_offset"]
        base_offset = Fraction(int(bo[0]), int(bo[1]))
        base_on_joint = bool(data.get("base_on_joint", False))
    except (KeyError, IndexError, TypeError, ZeroDivisionError) as e:
        raise CactusError(f"bad cactus JSON: {e}") from None
    return Cactus(perims, tuple(sorted(joints)), base_lobe, base_offset, base_on_joint)


# randomized diagrams for property testing -----------------------------------


def _random_fraction(rng, max_den: int = 16) -> Fraction:
    den = rng.randint(2, max_den)
    return Fraction(rng.randrange(den), den)


def _random_noncrossing_matching(rng, m: int) -> list[tuple[int, int]]:
    """Random non-crossing perfect matching of 2m points 0..2m-1."""
    pts = list(range(2 * m))

    def rec(seq):
        if not seq:
            return []
        k = rng.randrange(len(seq) // 2)
        j = 2 * k + 1
        return [(seq[0], seq[j])] + rec(seq[1:j]) + rec(seq[j + 1 :])

    return rec(pts)


def random_md(rng, n: int, max_den: int = 16) -> MDClass:
    """A random marked chord diagram class with n regions and small denominators."""
    for _ in range(400):
        try:
            m = n - 1
            coords = sorted({_random_fraction(rng, max_den) for _ in range(2 * m)})
            if len(coords) < 2 * m:
                continue
            pairs = _random_noncrossing_matching(rng, m)
            chords = [(coords[a], coords[b]) for a, b in pairs]
            # occasionally merge two vertices to create a shared endpoint
            if m >= 2 and rng.random() < 0.35:
                i = rng.randrange(2 * m - 1)
                a, b = coords[i], coords[i + 1]
                chords = [
                    (a if x == b else x, a if y == b else y) for x, y in chords
                ]
                if any(x == y for x, y in chords):
                    continue
            d0 = validate_diagram_unmarked(n, chords)
            marks = []
            for lab in range(1, n + 1):
                segs = [u for u in d0[lab - 1] if u[0] == "seg"]
                u = segs[rng.randrange(len(segs))]
                if rng.random() < 0.2:
                    # place the mark on a vertex of a touching cluster
                    passes = [p for p in d0[lab - 1] if p[0] == "pass"]
                    if passes:
                        p = passes[rng.randrange(len(passes))]
                        marks.append(p[2])
                        continue
                den = u[2].denominator * rng.randint(2, 5)
                num = rng.randrange(1, int(u[2] * den)) if int(u[2] * den) > 1 else 0
                marks.append(_mod1(u[1] + Fraction(num, den)))
            return md_from_data(n, chords, marks)
        except DiagramError:
            continue
    raise RuntimeError("random diagram generation failed")


def validate_diagram_unmarked(n: int, chords) -> list[list[tuple]]:
    """Region unit lists for a chord set, without marks (used by the generator)."""
    cl = [(_mod1(Fraction(c[0])), _mod1(Fraction(c[1]))) for c in chords]
    _check_crossings(cl)
    clusters = _clusters(cl)
    cluster_index = {v: ci for ci, grp in enumerate(clusters) for v in grp}
    vertices = tuple(sorted(cluster_index))
    if not vertices:
        return [[("seg", Fraction(0), Fraction(1))]]
    faces = _face_units(vertices, tuple(cl), cluster_index)
    if len(faces) != n:
        raise DiagramError("zero-measure", "region count mismatch", len(faces))
    return faces


def _cactus_walk_segments(c: Cactus):
    """Boundary walk of a cactus as (global start, length, lobe, lobe offset) tuples.

    Shares the traversal rules with from_cactus; used by the independent
    cactus-side composition.
    """
    n = len(c.perimeters)
    by_lobe: dict[int, list[tuple[Fraction, int]]] = {i + 1: [] for i in range(n)}
    for qi, joint in enumerate(c.joints):
        for lobe, off in joint:
            by_lobe[lobe].append((off, qi))
    for offs in by_lobe.values():
        offs.sort()

    def next_joint(lobe, off):
        offs = by_lobe[lobe]
        if not offs:
            return None
        r = c.perimeters[lobe - 1]
        best = None
        for o, qi in offs:
            d = (o - off) % r
            if d == 0:
                d = r
            if best is None or d < best[0]:
                best = (d, o, qi)
        return best[1], best[2]

    segments = []
    cur_lobe, cur_off = c.base_lobe, c.base_offset
    s = Fraction(0)
    guard = 0
    while s < 1:
        r = c.perimeters[cur_lobe - 1]
        nj = next_joint(cur_lobe, cur_off)
        remaining = 1 - s
        if nj is None:
            segments.append((s, r, cur_lobe, cur_off))
            s += r
            break
        off2, qi = nj
        delta = (off2 - cur_off) % r
        if delta == 0:
            delta = r
        if delta > remaining:
            segments.append((s, remaining, cur_lobe, cur_off))
            s = Fraction(1)
            break
        segments.append((s, delta, cur_lobe, cur_off))
        s += delta
        joint = c.joints[qi]
        pos = next(k for k, (lo, of) in enumerate(joint) if lo == cur_lobe and of == off2)
        cur_lobe, cur_off = joint[(pos + 1) % len(joint)]
        guard += 1
        if guard > 4 + sum(len(j) for j in c.joints) + n:
            raise CactusError("boundary walk does not close")
    if s != 1:
        raise CactusError("boundary walk came back early")
    return segments


def compose_cactus(base: Cactus, parts: Sequence[Cactus]) -> Cactus:
    """Operad composition on the cactus side, independent of chord diagrams.

    Lobe i of the base is replaced by part i scaled to its perimeter, anchored
    at the lobe's marked point; base joints transfer through the part's
    boundary parameterization.  Raises on the degenerate case where a base
    joint lands exactly on a part joint (the joints would merge; the diagram
    route handles that case).
    """
    n = len(base.perimeters)
    if len(parts) != n:
        raise CactusError(f"need {n} parts, got {len(parts)}")
    offsets = []
    acc = 0
    for p in parts:
        offsets.append(acc)
        acc += len(p.perimeters)
    walks = [_cactus_walk_segments(p) for p in parts]

    def locate(i: int, off: Fraction) -> tuple[int, Fraction]:
        """Base-lobe-i offset -> (composite lobe, composite lobe offset)."""
        r_i = base.perimeters[i - 1]
        s = off / r_i  # position along part i's unit boundary
        part = parts[i - 1]
        for g0, dl, lobe, loff in walks[i - 1]:
            if g0 <= s < g0 + dl:
                t = (loff + (s - g0)) % part.perimeters[lobe - 1]
                for joint in part.joints:
                    if any(lo == lobe and of == t for lo, of in joint):
                        raise CactusError("base joint lands on a part joint")
                return offsets[i - 1] + lobe, t * r_i
        raise CactusError("position not found on the part boundary")

    perims = []
    for i, p in enumerate(parts):
        for q in p.perimeters:
            perims.append(q * base.perimeters[i])
    joints = []
    for p, off0, i in zip(parts, offsets, range(1, n + 1)):
        for joint in p.joints:
            joints.append(
                _canonical_joint([(off0 + lo, of * base.perimeters[i - 1]) for lo, of in joint])
            )
    for joint in base.joints:
        joints.append(_canonical_joint([locate(lo, of) for lo, of in joint]))
    if base.base_on_joint:
        raise CactusError("base point on a joint is outside the generic composition")
    bl, boff = locate(base.base_lobe, base.base_offset)
    return Cactus(tuple(perims), tuple(sorted(joints)), bl, boff, False)
