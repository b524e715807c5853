"""Oriented link-diagram combinatorics on planar crossing codes.

A diagram is a list of 4-valent crossings, each carrying the four incident
arc labels in counterclockwise order plus orientation data, together with
crossing-free circles.  The planar embedding is the rotation system; faces
come from combinatorial face traversal and are validated against the Euler
count per connected component (F = c + 2 on the sphere).

Conventions baked into the encoding:

  * positions 0..3 go counterclockwise around a crossing;
  * the over-strand always occupies the diagonal (0, 2) and enters at
    ``over_in`` (0 or 2);
  * the under-strand direction follows from the sign: rotating the under
    direction counterclockwise by 90 degrees gives the over direction at a
    positive crossing, so ``under_in = over_in + 3`` for sign +1 and
    ``over_in + 1`` for sign -1 (mod 4).

Everything is immutable after construction and safe to share.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

V3 = 1.01494  # volume of the regular hyperbolic ideal 3-simplex


class DiagramError(ValueError):
    pass


class ParseError(DiagramError):
    pass


class OrientationError(DiagramError):
    pass


class PlanarityError(DiagramError):
    pass


class NotSpecialAlternatingError(DiagramError):
    pass


@dataclass(frozen=True)
class CrossingRec:
    cid: str
    sign: int
    ends: tuple[str, str, str, str]
    over_in: int  # 0 or 2

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DiagramError(f"{self.cid}: sign must be +1 or -1")
        if self.over_in not in (0, 2):
            raise DiagramError(f"{self.cid}: over_in must be 0 or 2")
        if len(self.ends) != 4:
            raise DiagramError(f"{self.cid}: need exactly 4 ends")

    @property
    def under_in(self) -> int:
        return (self.over_in + (3 if self.sign > 0 else 1)) % 4

    @property
    def in_positions(self) -> frozenset[int]:
        return frozenset((self.over_in, self.under_in))

    def is_over_position(self, pos: int) -> bool:
        return pos % 2 == 0


Dart = tuple[str, int]


@dataclass(frozen=True)
class Face:
    """A complementary region: corners (cid, k) with k between ends k, k+1."""

    corners: tuple[tuple[str, int], ...]

    def crossings(self) -> set[str]:
        return {c for c, _ in self.corners}

    def is_bigon(self) -> bool:
        return len(self.corners) == 2 and len(self.crossings()) == 2


@dataclass(frozen=True)
class SeifertCircle:
    index: int
    arcs: tuple[str, ...]
    chords: tuple[tuple[str, int], ...]  # (cid, chord corner index)

    @property
    def is_free_circle(self) -> bool:
        return not self.chords and len(self.arcs) == 1


@dataclass(frozen=True)
class SeifertData:
    circles: tuple[SeifertCircle, ...]
    circle_of_arc: Mapping[str, int]
    # smoothed-diagram regions: faces merged across every crossing band
    region_of_face: tuple[int, ...]
    band_region: Mapping[str, int]          # crossing id -> region holding its band
    sides: tuple[tuple[int, int], ...]      # circle index -> its two regions
    separating: tuple[bool, ...]
    n_regions: int


@dataclass(frozen=True)
class GraphEdge:
    eid: int
    tail: int
    head: int
    cid: str
    class_id: int | None  # anti-parallel multi-edge class, if any


@dataclass(frozen=True)
class CheckerGraph:
    """Oriented checkerboard graph of a special alternating diagram.

    Vertices are black regions; one edge per crossing, oriented so that
    directions alternate in and out around every vertex.  Anti-parallel
    twists of the diagram appear as multi-edge classes.
    """

    n_vertices: int
    edges: tuple[GraphEdge, ...]
    rotations: tuple[tuple[int, ...], ...]   # per vertex, edge ids in rotation order
    root: int
    classes: Mapping[int, tuple[int, ...]]   # class id -> edge ids

    def degree(self, v: int) -> int:
        return sum((e.tail == v) + (e.head == v) for e in self.edges)


def make_checker_graph(n_vertices: int,
                       arcs: Sequence[tuple[int, int]],
                       classes: Mapping[int, Sequence[int]] | None = None,
                       root: int = 0) -> CheckerGraph:
    """Build a bare oriented multigraph (for tests and synthetic inputs)."""
    edges = tuple(GraphEdge(eid=i, tail=t, head=h, cid=f"e{i}",
                            class_id=_class_of(i, classes))
                  for i, (t, h) in enumerate(arcs))
    rot = [[] for _ in range(n_vertices)]
    for e in edges:
        rot[e.tail].append(e.eid)
        rot[e.head].append(e.eid)
    cls = {k: tuple(v) for k, v in (classes or {}).items()}
    return CheckerGraph(n_vertices=n_vertices, edges=edges,
                        rotations=tuple(tuple(r) for r in rot), root=root,
                        classes=cls)


def _class_of(eid: int, classes) -> int | None:
    for k, eids in (classes or {}).items():
        if eid in eids:
            return k
    return None


class DiagramCode:
    """Validated oriented planar diagram code."""

    __slots__ = ("crossings", "circles", "_cache")

    def __init__(self, crossings: Iterable[CrossingRec], circles: Iterable[str] = ()):
        object.__setattr__(self, "crossings",
                           tuple(sorted(crossings, key=lambda c: c.cid)))
        object.__setattr__(self, "circles", tuple(sorted(circles)))
        object.__setattr__(self, "_cache", {})
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("DiagramCode is immutable")

    # -- raw structure -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, DiagramCode):
            return NotImplemented
        return self.crossings == other.crossings and self.circles == other.circles

    def __hash__(self):
        return hash((self.crossings, self.circles))

    def __repr__(self):
        return (f"DiagramCode({len(self.crossings)} crossings, "
                f"{len(self.circles)} free circles)")

    def crossing(self, cid: str) -> CrossingRec:
        return self._by_id()[cid]

    def _by_id(self) -> dict[str, CrossingRec]:
        if "by_id" not in self._cache:
            self._cache["by_id"] = {c.cid: c for c in self.crossings}
        return self._cache["by_id"]

    def arc_darts(self) -> dict[str, list[Dart]]:
        if "arc_darts" not in self._cache:
            m: dict[str, list[Dart]] = {}
            for c in self.crossings:
                for p, label in enumerate(c.ends):
                    m.setdefault(label, []).append((c.cid, p))
            self._cache["arc_darts"] = m
        return self._cache["arc_darts"]

    def other_end(self, dart: Dart) -> Dart:
        cid, p = dart
        label = self.crossing(cid).ends[p]
        d1, d2 = self.arc_darts()[label]
        return d2 if d1 == dart else d1

    def is_out_dart(self, dart: Dart) -> bool:
        c = self.crossing(dart[0])
        return dart[1] in ((c.over_in + 2) % 4, (c.under_in + 2) % 4)

    def arc_source(self, label: str) -> Dart:
        d1, d2 = self.arc_darts()[label]
        return d1 if self.is_out_dart(d1) else d2

    def arc_target(self, label: str) -> Dart:
        d1, d2 = self.arc_darts()[label]
        return d2 if self.is_out_dart(d1) else d1

    # -- validation ----------------------------------------------------

    def _validate(self):
        seen = {}
        for c in self.crossings:
            for p, label in enumerate(c.ends):
                seen.setdefault(label, []).append((c.cid, p))
        for label, darts in seen.items():
            if len(darts) != 2:
                raise ParseError(
                    f"arc {label!r} has {len(darts)} ends at {darts}, expected 2")
        for label in self.circles:
            if label in seen:
                raise ParseError(f"label {label!r} used both as arc and circle")
        if len(set(self.circles)) != len(self.circles):
            raise ParseError("duplicate circle labels")
        dup = [c.cid for c in self.crossings]
        if len(set(dup)) != len(dup):
            raise ParseError("duplicate crossing ids")
        # orientation: every arc must leave one crossing and enter another
        for label, darts in self.arc_darts().items():
            outs = [d for d in darts if self.is_out_dart(d)]
            if len(outs) != 1:
                raise OrientationError(
                    f"arc {label!r} has {len(outs)} outgoing ends at {darts}")
        # planarity via the Euler count on every connected component
        for crossings, faces in self._component_faces():
            if len(faces) != len(crossings) + 2:
                raise PlanarityError(
                    f"component {sorted(crossings)} has {len(faces)} faces, "
                    f"expected {len(crossings) + 2}")

    def _component_faces(self):
        comp = self.crossing_components()
        faces_by_comp: dict[int, list[Face]] = {}
        for f in self.faces():
            cid = next(iter(f.crossings()))
            for i, comp_set in enumerate(comp):
                if cid in comp_set:
                    faces_by_comp.setdefault(i, []).append(f)
                    break
        return [(comp[i], faces_by_comp.get(i, [])) for i in range(len(comp))]

    def crossing_components(self) -> list[set[str]]:
        """Connected components of the 4-valent graph (free circles excluded)."""
        if "comps" in self._cache:
            return self._cache["comps"]
        parent = {c.cid: c.cid for c in self.crossings}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for darts in self.arc_darts().values():
            a, b = find(darts[0][0]), find(darts[1][0])
            if a != b:
                parent[a] = b
        groups: dict[str, set[str]] = {}
        for cid in parent:
            groups.setdefault(find(cid), set()).add(cid)
        comps = sorted(groups.values(), key=lambda s: min(s))
        self._cache["comps"] = comps
        return comps

    def is_connected(self) -> bool:
        return not self.circles and len(self.crossing_components()) <= 1

    def has_trivial_split_component(self) -> bool:
        return bool(self.circles)

    # -- faces -----------------------------------------------------------

    def faces(self) -> tuple[Face, ...]:
        """Complementary regions from face traversal (free circles excluded)."""
        if "faces" in self._cache:
            return self._cache["faces"]
        visited: set[Dart] = set()
        out: list[Face] = []
        all_darts = [(c.cid, p) for c in self.crossings for p in range(4)]
        for start in all_darts:
            if start in visited:
                continue
            corners = []
            d = start
            while True:
                visited.add(d)
                cid, p = d
                turn = (p - 1) % 4
                corners.append((cid, turn))
                d = self.other_end((cid, turn))
                if d == start:
                    break
            out.append(Face(tuple(corners)))
        faces = tuple(out)
        self._cache["faces"] = faces
        return faces

    def bigons(self) -> list[Face]:
        return [f for f in self.faces() if f.is_bigon()]

    def face_at_corner(self) -> dict[tuple[str, int], int]:
        if "corner_face" not in self._cache:
            m = {}
            for i, f in enumerate(self.faces()):
                for corner in f.corners:
                    m[corner] = i
            self._cache["corner_face"] = m
        return self._cache["corner_face"]

    # -- link components / orientation-level queries ----------------------

    def link_components(self) -> list[list[str]]:
        """Arc labels grouped by link component, in strand order."""
        if "link_comps" in self._cache:
            return self._cache["link_comps"]
        comps = []
        seen: set[str] = set()
        for label in sorted(self.arc_darts()):
            if label in seen:
                continue
            cycle = []
            cur = label
            while cur not in seen:
                seen.add(cur)
                cycle.append(cur)
                cid, p = self.arc_target(cur)
                cur = self.crossing(cid).ends[(p + 2) % 4]
            comps.append(cycle)
        comps.extend([[lbl] for lbl in self.circles])
        self._cache["link_comps"] = comps
        return comps

    def n_link_components(self) -> int:
        return len(self.link_components())

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def is_alternating(self) -> bool:
        for label, darts in self.arc_darts().items():
            overs = sum(1 for d in darts if d[1] % 2 == 0)
            if overs != 1:
                return False
        return True


# ----------------------------------------------------------------------
# twist number
# ----------------------------------------------------------------------

def twist_number(d: DiagramCode) -> int:
    """Number of twists: maximal rows of bigons plus bigon-free crossings."""
    parent = {c.cid: c.cid for c in d.crossings}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in d.bigons():
        a, b = sorted(f.crossings())
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(c.cid) for c in d.crossings})


def lackenby_lower_bound(d: DiagramCode) -> float:
    """Volume lower bound v3 * (t(D) - 2) / 2 for prime alternating diagrams."""
    return V3 * (twist_number(d) - 2) / 2.0


# ----------------------------------------------------------------------
# Seifert circles, separating circles, Murasugi factors
# ----------------------------------------------------------------------

def _chord_pairing(c: CrossingRec) -> dict[int, int]:
    """Orientation-respecting smoothing as a position pairing."""
    ins = c.in_positions
    for pairs in (((0, 1), (2, 3)), ((1, 2), (3, 0))):
        if all(len(ins.intersection(p)) == 1 for p in pairs):
            return {a: b for a, b in pairs} | {b: a for a, b in pairs}
    raise OrientationError(f"{c.cid}: no valid smoothing pairing")  # unreachable


def _chord_corners(c: CrossingRec) -> tuple[int, int]:
    """Corner indices cut by the two smoothing chords."""
    pairing = _chord_pairing(c)
    return tuple(sorted(a for a in (0, 1, 2, 3) if pairing[a] == (a + 1) % 4))


def seifert_circles(d: DiagramCode) -> SeifertData:
    pairings = {c.cid: _chord_pairing(c) for c in d.crossings}

    # trace circles arc by arc
    circle_of_arc: dict[str, int] = {}
    circles: list[SeifertCircle] = []
    for label in sorted(d.arc_darts()):
        if label in circle_of_arc:
            continue
        idx = len(circles)
        arcs, chords = [], []
        cur = label
        while cur not in circle_of_arc:
            circle_of_arc[cur] = idx
            arcs.append(cur)
            cid, p = d.arc_target(cur)
            p2 = pairings[cid][p]
            corner = p if (p + 1) % 4 == p2 else p2
            chords.append((cid, corner))
            cur = d.crossing(cid).ends[p2]
        circles.append(SeifertCircle(index=idx, arcs=tuple(arcs), chords=tuple(chords)))
    for label in d.circles:
        idx = len(circles)
        circle_of_arc[label] = idx
        circles.append(SeifertCircle(index=idx, arcs=(label,), chords=()))

    # merge faces across the crossing bands: the two non-chord corners join
    faces = d.faces()
    corner_face = d.face_at_corner()
    parent = list(range(len(faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    band_face: dict[str, int] = {}
    for c in d.crossings:
        cc = _chord_corners(c)
        band = [k for k in range(4) if k not in cc]
        f1, f2 = corner_face[(c.cid, band[0])], corner_face[(c.cid, band[1])]
        band_face[c.cid] = f1
        a, b = find(f1), find(f2)
        if a != b:
            parent[a] = b

    region_of_face = tuple(find(i) for i in range(len(faces)))
    band_region = {cid: region_of_face[f] for cid, f in band_face.items()}

    # sides of each circle: the merged regions left and right of its arcs
    sides = []
    for circ in circles:
        if circ.is_free_circle:
            sides.append((-1, -1))
            continue
        pair: set[int] = set()
        for label in circ.arcs:
            for dart in d.arc_darts()[label]:
                pair.add(region_of_face[corner_face[(dart[0], (dart[1] - 1) % 4)]])
        side_pair = sorted(pair)
        if len(side_pair) != 2:
            raise PlanarityError(
                f"Seifert circle {circ.index} does not have two sides: {side_pair}")
        sides.append(tuple(side_pair))

    n_regions = len(set(region_of_face)) if region_of_face else 0

    separating = _separating_flags(circles, sides, band_region)

    return SeifertData(circles=tuple(circles), circle_of_arc=circle_of_arc,
                       region_of_face=region_of_face, band_region=band_region,
                       sides=tuple(sides), separating=tuple(separating),
                       n_regions=n_regions)


def _separating_flags(circles, sides, band_region):
    """A circle separates iff both of its sides carry diagram material.

    The region immediately adjacent to a circle on one side carries material
    exactly when a crossing band lives there or another circle is incident to
    it (that circle's arcs are diagram material strictly on this side).
    """
    incident: dict[int, list[int]] = {}
    for circ in circles:
        if circ.is_free_circle:
            continue
        u, v = sides[circ.index]
        incident.setdefault(u, []).append(circ.index)
        incident.setdefault(v, []).append(circ.index)
    material_regions = set(band_region.values())

    def side_has_material(region: int, blocked: int) -> bool:
        if region in material_regions:
            return True
        return any(c != blocked for c in incident.get(region, ()))

    flags = []
    for circ in circles:
        if circ.is_free_circle:
            flags.append(False)
            continue
        u, v = sides[circ.index]
        flags.append(side_has_material(u, circ.index)
                     and side_has_material(v, circ.index))
    return flags


def is_special(d: DiagramCode) -> bool:
    """True when no Seifert circle is separating (and the diagram is connected)."""
    if not d.is_connected():
        raise DiagramError("speciality is defined for connected diagrams")
    return not any(seifert_circles(d).separating)


@dataclass(frozen=True)
class MurasugiFactor:
    diagram: "DiagramCode"
    crossing_ids: tuple[str, ...]
    boundary_circles: tuple[int, ...]


def murasugi_factorization(d: DiagramCode) -> list[MurasugiFactor]:
    """Split along every separating Seifert circle into special factors."""
    if not d.is_connected():
        raise DiagramError("Murasugi factorization needs a connected diagram")
    sd = seifert_circles(d)

    # region graph: nodes smoothed regions, edges circles; cut separating edges
    region_parent: dict[int, int] = {}

    def rfind(x):
        region_parent.setdefault(x, x)
        while region_parent[x] != x:
            region_parent[x] = region_parent[region_parent[x]]
            x = region_parent[x]
        return x

    for circ in sd.circles:
        if circ.is_free_circle or sd.separating[circ.index]:
            continue
        ru, rv = (rfind(s) for s in sd.sides[circ.index])
        if ru != rv:
            region_parent[ru] = rv

    groups: dict[int, list[str]] = {}
    for c in d.crossings:
        groups.setdefault(rfind(sd.band_region[c.cid]), []).append(c.cid)

    factors = []
    for key in sorted(groups, key=lambda k: min(groups[k])):
        kept = set(groups[key])
        boundary = tuple(circ.index for circ in sd.circles
                         if sd.separating[circ.index]
                         and any(rfind(s) == key for s in sd.sides[circ.index]))
        factors.append(_build_factor(d, kept, boundary, sd))
    return factors


def _build_factor(d: DiagramCode, kept: set[str], boundary: tuple[int, ...],
                  sd: SeifertData) -> MurasugiFactor:
    pairings = {c.cid: _chord_pairing(c) for c in d.crossings}
    new_arc_of_dart: dict[Dart, str] = {}
    arcs_done: set[Dart] = set()

    def walk_arc(start_out: Dart) -> tuple[str, Dart]:
        """Follow arcs, smoothing through dropped crossings, to a kept in-dart."""
        labels = []
        cur = start_out
        while True:
            label = d.crossing(cur[0]).ends[cur[1]]
            labels.append(label)
            tgt = d.other_end(cur)
            if tgt[0] in kept:
                return min(labels), tgt
            p2 = pairings[tgt[0]][tgt[1]]
            cur = (tgt[0], p2)

    ends_map: dict[tuple[str, int], str] = {}
    for cid in kept:
        c = d.crossing(cid)
        for p in range(4):
            if not d.is_out_dart((cid, p)) or (cid, p) in arcs_done:
                continue
            label, tgt = walk_arc((cid, p))
            ends_map[(cid, p)] = label
            ends_map[tgt] = label
            arcs_done.add((cid, p))

    crossings = []
    for cid in sorted(kept):
        c = d.crossing(cid)
        ends = tuple(ends_map[(cid, p)] for p in range(4))
        crossings.append(CrossingRec(cid=cid, sign=c.sign, ends=ends,
                                     over_in=c.over_in))

    # boundary circles that lost all their crossings become free circles
    free = []
    for idx in boundary:
        circ = sd.circles[idx]
        if not any(cid in kept for cid, _ in circ.chords):
            free.append(f"o{idx}")

    return MurasugiFactor(
        diagram=DiagramCode(crossings, free),
        crossing_ids=tuple(sorted(kept)),
        boundary_circles=boundary)


def murasugi_factors(d: DiagramCode) -> list[DiagramCode]:
    return [f.diagram for f in murasugi_factorization(d)]


# ----------------------------------------------------------------------
# checkerboard graph of a special alternating diagram
# ----------------------------------------------------------------------

def checkerboard_graph(d: DiagramCode) -> CheckerGraph:
    if not d.is_connected():
        raise NotSpecialAlternatingError("diagram must be connected")
    if not d.is_alternating():
        raise NotSpecialAlternatingError("diagram must be alternating")
    if not is_special(d):
        raise NotSpecialAlternatingError("diagram must be special "
                                         "(no separating Seifert circle)")
    faces = d.faces()
    corner_face = d.face_at_corner()

    # 2-color the regions; adjacency = sharing an arc
    color = {0: 0}
    order = [0]
    adj: dict[int, set[int]] = {i: set() for i in range(len(faces))}
    for label, darts in d.arc_darts().items():
        f1 = corner_face[(darts[0][0], (darts[0][1] - 1) % 4)]
        f2 = corner_face[(darts[1][0], (darts[1][1] - 1) % 4)]
        adj[f1].add(f2)
        adj[f2].add(f1)
    while order:
        f = order.pop()
        for g in adj[f]:
            if g not in color:
                color[g] = 1 - color[f]
                order.append(g)
    if len(color) != len(faces):
        raise PlanarityError("region adjacency is not connected")

    def qualifies(cls: int) -> bool:
        # every region of the class is bounded purely by smoothing chords,
        # i.e. its boundary is a single Seifert circle
        return all(_is_chord_corner(d, c, k)
                   for i in range(len(faces)) if color[i] == cls
                   for c, k in faces[i].corners)

    q0, q1 = qualifies(0), qualifies(1)
    if not (q0 or q1):
        raise NotSpecialAlternatingError(
            "no checkerboard coloring bounds every white region by a Seifert circle")
    if q0 and q1:
        # fewer black regions wins; remaining tie broken lexicographically
        n_black0 = sum(1 for i in color.values() if i == 1)
        n_black1 = sum(1 for i in color.values() if i == 0)
        white = 0 if (n_black0, 0) <= (n_black1, 1) else 1
    else:
        white = 0 if q0 else 1

    black_faces = sorted(i for i in range(len(faces)) if color[i] != white)
    vid = {f: i for i, f in enumerate(black_faces)}

    edges = []
    for c in sorted(d.crossings, key=lambda c: c.cid):
        tail_corner = _corner_between(c.over_in, c.under_in)
        head_corner = (tail_corner + 2) % 4
        tail = vid[corner_face[(c.cid, tail_corner)]]
        head = vid[corner_face[(c.cid, head_corner)]]
        edges.append(GraphEdge(eid=len(edges), tail=tail, head=head,
                               cid=c.cid, class_id=None))

    edge_of_cid = {e.cid: e for e in edges}

    # rotation at each black vertex: corner order along the face boundary
    rotations = []
    for f in black_faces:
        rotations.append(tuple(edge_of_cid[cid].eid for cid, _k in faces[f].corners))

    # orientation sanity: directions must alternate in/out around each vertex
    for v, rot in enumerate(rotations):
        if len(rot) % 2:
            raise NotSpecialAlternatingError(f"vertex {v} has odd degree")
        outs = [edges[eid].tail == v for eid in rot]
        for i in range(len(outs)):
            if outs[i] == outs[(i + 1) % len(outs)]:
                raise NotSpecialAlternatingError(
                    f"edges do not alternate in/out around vertex {v}")

    # anti-parallel twists: bigon chains whose bigons are chord-corner regions
    classes = _antiparallel_classes(d, edge_of_cid, corner_face, color, white)
    edges = [GraphEdge(eid=e.eid, tail=e.tail, head=e.head, cid=e.cid,
                       class_id=_class_of(e.eid, classes))
             for e in edges]

    return CheckerGraph(n_vertices=len(black_faces), edges=tuple(edges),
                        rotations=tuple(rotations), root=0,
                        classes={k: tuple(v) for k, v in classes.items()})


def _is_chord_corner(d: DiagramCode, cid: str, k: int) -> bool:
    return k in _chord_corners(d.crossing(cid))


def _corner_between(p1: int, p2: int) -> int:
    if (p1 + 1) % 4 == p2:
        return p1
    if (p2 + 1) % 4 == p1:
        return p2
    raise OrientationError(f"positions {p1},{p2} are not adjacent")


def _antiparallel_classes(d, edge_of_cid, corner_face, color, white):
    parent = {c.cid: c.cid for c in d.crossings}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in d.bigons():
        c1, c2 = sorted(f.crossings())
        corner = f.corners[0]
        if color[corner_face[corner]] == white:
            a, b = find(c1), find(c2)
            if a != b:
                parent[a] = b
    groups: dict[str, list[str]] = {}
    for c in d.crossings:
        groups.setdefault(find(c.cid), []).append(c.cid)
    classes: dict[int, tuple[int, ...]] = {}
    next_id = 0
    for key in sorted(groups, key=lambda k: min(groups[k])):
        cids = sorted(groups[key])
        if len(cids) < 2:
            continue
        classes[next_id] = tuple(edge_of_cid[cid].eid for cid in cids)
        next_id += 1
    return classes


# ----------------------------------------------------------------------
# text format
# ----------------------------------------------------------------------

_X_RE = re.compile(
    r"^X(?P<cid>\S+)\s+sign=(?P<sign>[+-])\s+"
    r"ends=\((?P<ends>[^)]*)\)\s+over=(?P<over>[02])$")
_O_RE = re.compile(r"^O(?P<label>\S+)$")


def parse_diagram(text: str) -> DiagramCode:
    crossings = []
    circles = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _X_RE.match(line)
        if m:
            ends = tuple(s.strip() for s in m.group("ends").split(","))
            if len(ends) != 4 or not all(ends):
                raise ParseError(f"line {lineno}: need 4 arc labels, got {ends}")
            crossings.append(CrossingRec(
                cid=m.group("cid"),
                sign=1 if m.group("sign") == "+" else -1,
                ends=ends,
                over_in=int(m.group("over"))))
            continue
        m = _O_RE.match(line)
        if m:
            circles.append(m.group("label"))
            continue
        raise ParseError(f"line {lineno}: cannot parse {line!r}")
    return DiagramCode(crossings, circles)


def print_diagram(d: DiagramCode) -> str:
    lines = []
    for c in d.crossings:
        sign = "+" if c.sign > 0 else "-"
        lines.append(f"X{c.cid} sign={sign} ends=({','.join(c.ends)}) over={c.over_in}")
    for label in d.circles:
        lines.append(f"O{label}")
    return "\n".join(lines) + "\n"
