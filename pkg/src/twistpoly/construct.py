"""Programmatic construction of diagram codes.

Builders work on *pre-diagrams*: crossings that know their counterclockwise
end order and which diagonal passes over, but not yet the strand directions.
``orient`` walks the strands, picks a direction for each component (optionally
overridden), and emits a validated ``DiagramCode``.

The crossing template used throughout is a vertical band element:

        TL   TR                ends counterclockwise: (TL, BL, BR, TR)
          \ /                  strand diagonals: TL-BR and BL-TR
           X
          / \
        BL   BR

Stacking such crossings with a constant over-diagonal produces an alternating
twist region.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import CrossingRec, DiagramCode

TL, BL, BR, TR = 0, 1, 2, 3   # positions in the band template


@dataclass
class PreCrossing:
    cid: str
    ends: list[str]        # 4 arc labels, counterclockwise
    over_diag: int         # 0: diagonal (0,2) passes over; 1: diagonal (1,3)


@dataclass
class PreDiagram:
    crossings: list[PreCrossing] = field(default_factory=list)
    circles: list[str] = field(default_factory=list)

    def orient(self, flip_components: set[int] | None = None) -> DiagramCode:
        """Assign strand directions and emit a validated DiagramCode.

        Components are discovered in order of their smallest arc label; the
        default direction starts each component at that arc, and components
        listed in ``flip_components`` are reversed.
        """
        flip = flip_components or set()
        darts: dict[str, list[tuple[str, int]]] = {}
        by_id = {}
        for c in self.crossings:
            by_id[c.cid] = c
            for p, label in enumerate(c.ends):
                darts.setdefault(label, []).append((c.cid, p))
        for label, ds in darts.items():
            if len(ds) != 2:
                raise ValueError(f"arc {label!r} has {len(ds)} ends")

        # walk strands; out_dart[(cid, p)] = True when the strand exits there
        is_out: dict[tuple[str, int], bool] = {}
        comp_index = 0
        for label in sorted(darts):
            if any(d in is_out for d in darts[label]):
                continue
            start, other = darts[label]
            if comp_index in flip:
                start, other = other, start
            # strand leaves `start` side and enters `other`
            cur_out, cur_in = start, other
            while True:
                is_out[cur_out] = True
                is_out[cur_in] = False
                cid, p = cur_in
                nxt = (cid, (p + 2) % 4)
                if nxt in is_out:
                    break
                nxt_label = by_id[cid].ends[(p + 2) % 4]
                d1, d2 = darts[nxt_label]
                cur_out = nxt
                cur_in = d2 if d1 == nxt else d1
            comp_index += 1

        out = []
        for c in self.crossings:
            over_positions = (c.over_diag, c.over_diag + 2)
            over_in = next(p for p in over_positions if not is_out[(c.cid, p)])
            under_positions = (1 - c.over_diag, 3 - c.over_diag)
            under_in = next(p for p in under_positions if not is_out[(c.cid, p)])
            sign = 1 if under_in == (over_in + 3) % 4 else -1
            # rotate so the over diagonal sits on (0, 2)
            r = c.over_diag
            ends = tuple(c.ends[(p + r) % 4] for p in range(4))
            out.append(CrossingRec(cid=c.cid, sign=sign, ends=ends,
                                   over_in=(over_in - r) % 4))
        return DiagramCode(out, self.circles)


def braid2_closure(m: int, mirror: bool = False, coherent: bool = True) -> DiagramCode:
    """Closure of the 2-strand braid with m equal crossings ((2, m) torus).

    m = 0 gives the 2-component unlink as two free circles.  For even m the
    closure has two components; ``coherent`` orients them so all crossings
    share one sign (the braid-coherent orientation).
    """
    if m == 0:
        return DiagramCode([], ["u1", "u2"])
    pre = PreDiagram()
    for i in range(m):
        pre.crossings.append(PreCrossing(
            cid=f"c{i}",
            ends=[f"L{i}", f"L{(i + 1) % m}", f"R{(i + 1) % m}", f"R{i}"],
            over_diag=1 if mirror else 0))
    flip = {1} if (coherent and m % 2 == 0) else None
    return pre.orient(flip)


def pretzel(*bands: int, mirror: bool = False) -> DiagramCode:
    """Standard pretzel diagram with the given numbers of half-twists per band.

    Positive entries twist one way, negative the other; every entry must be
    nonzero (use a wiring site for an empty band).
    """
    if any(b == 0 for b in bands) or not bands:
        raise ValueError("each pretzel band needs at least one crossing")
    pre = PreDiagram()
    n = len(bands)
    for i, b in enumerate(bands):
        k = abs(b)
        over = (0 if b > 0 else 1) ^ (1 if mirror else 0)
        for j in range(k):
            top = f"b{i}v{j}" if j else f"T{i}"
            bottom = f"b{i}v{j + 1}" if j < k - 1 else f"B{i}"
            # vertical band element: left/right arcs split per level
            pre.crossings.append(PreCrossing(
                cid=f"b{i}c{j}",
                ends=[f"{top}l", f"{bottom}l", f"{bottom}r", f"{top}r"],
                over_diag=over))
    # join adjacent bands along the top and bottom; wrap the outer arcs
    rename: dict[str, str] = {}
    for i in range(n):
        j = (i + 1) % n
        rename[f"T{j}l"] = f"t{i}"
        rename[f"T{i}r"] = f"t{i}"
        rename[f"B{j}l"] = f"b{i}"
        rename[f"B{i}r"] = f"b{i}"
    for c in pre.crossings:
        c.ends = [rename.get(e, e) for e in c.ends]
    return pre.orient()


# ----------------------------------------------------------------------
# unoriented 4-ended tangles and rational diagrams
# ----------------------------------------------------------------------

@dataclass
class PreTangle:
    """A 2-string pre-tangle with boundary posts nw, ne, sw, se."""

    crossings: list[PreCrossing] = field(default_factory=list)
    circles: list[str] = field(default_factory=list)
    nw: str = "nw0"
    ne: str = "ne0"
    sw: str = "sw0"
    se: str = "se0"
    counter: int = 0

    def fresh(self, stem: str) -> str:
        self.counter += 1
        return f"{stem}{self.counter}"


def t_vertical() -> PreTangle:
    """The identity tangle: nw-sw and ne-se strands."""
    t = PreTangle()
    t.nw = t.sw = "lv0"
    t.ne = t.se = "rv0"
    return t


def t_horizontal() -> PreTangle:
    """The cap-cup tangle: nw-ne over sw-se."""
    t = PreTangle()
    t.nw = t.ne = "th0"
    t.sw = t.se = "bh0"
    return t


def twist_bottom(t: PreTangle, k: int) -> PreTangle:
    """Stack |k| vertical crossings under the tangle; sign of k picks the hand."""
    over = 0 if k > 0 else 1
    for j in range(abs(k)):
        cid = t.fresh("vb")
        new_l, new_r = t.fresh("al"), t.fresh("ar")
        t.crossings.append(PreCrossing(
            cid=cid, ends=[t.sw, new_l, new_r, t.se], over_diag=over))
        t.sw, t.se = new_l, new_r
    return t


def twist_right(t: PreTangle, k: int) -> PreTangle:
    """Append |k| horizontal crossings to the east side of the tangle."""
    over = 0 if k > 0 else 1
    for j in range(abs(k)):
        cid = t.fresh("hr")
        new_t, new_b = t.fresh("at"), t.fresh("ab")
        # rotate the band template a quarter turn: west ends (TL, BL) attach
        # to the current ne/se, east ends become the new boundary
        t.crossings.append(PreCrossing(
            cid=cid, ends=[t.ne, t.se, new_b, new_t], over_diag=over))
        t.ne, t.se = new_t, new_b
    return t


def rational_pretangle(twists: list[int]) -> PreTangle:
    """Standard rational tangle from a twist vector.

    Entries are applied right-to-left alternating bottom twists and right
    twists, ending with a right twist block (Conway's convention for a
    continued-fraction expansion [a_1, a_2, ...]).
    """
    t = t_horizontal()
    bottom = len(twists) % 2 == 0
    for i, a in enumerate(twists):
        if bottom:
            twist_bottom(t, a)
        else:
            twist_right(t, a)
        bottom = not bottom
    return t


def _join(t: PreTangle, a: str, b: str):
    """Connect two boundary posts with an arc (merging labels)."""
    if a == b:
        t.circles.append(a)
        return
    for c in t.crossings:
        c.ends = [b if e == a else e for e in c.ends]
    for attr in ("nw", "ne", "sw", "se"):
        if getattr(t, attr) == a:
            setattr(t, attr, b)


def close_numerator(t: PreTangle, flip_components: set[int] | None = None) -> DiagramCode:
    """Join nw-ne and sw-se."""
    _join(t, t.nw, t.ne)
    _join(t, t.sw, t.se)
    pre = PreDiagram(crossings=t.crossings, circles=t.circles)
    return pre.orient(flip_components)


def close_denominator(t: PreTangle, flip_components: set[int] | None = None) -> DiagramCode:
    """Join nw-sw and ne-se."""
    _join(t, t.nw, t.sw)
    _join(t, t.ne, t.se)
    pre = PreDiagram(crossings=t.crossings, circles=t.circles)
    return pre.orient(flip_components)


def rational_diagram(twists: list[int], numerator: bool = True,
                     flip_components: set[int] | None = None) -> DiagramCode:
    t = rational_pretangle(twists)
    close = close_numerator if numerator else close_denominator
    return close(t, flip_components)


def figure_eight() -> DiagramCode:
    return rational_diagram([2, 2, 0], numerator=False)


# ----------------------------------------------------------------------
# splicing (connected sum inside an arc)
# ----------------------------------------------------------------------

def splice(host: DiagramCode, host_arc: str, summand: DiagramCode,
           summand_arc: str | None = None) -> DiagramCode:
    """Insert a knot diagram into an arc of the host (connected sum).

    Cuts ``host_arc`` and an arc of the summand and reconnects the four loose
    ends respecting orientation.  When both inputs alternate, a summand arc is
    chosen so that the result still alternates (summand_arc=None picks it).
    """
    if summand.circles or len(summand.crossing_components()) != 1:
        raise ValueError("summand must be a connected diagram")
    if summand.n_link_components() != 1:
        raise ValueError("summand must be a knot diagram")

    out_h = host.arc_source(host_arc)
    in_h = host.arc_target(host_arc)

    if summand_arc is None:
        # passage at the host tail and summand head must differ (over/under)
        # for alternation to survive the splice
        want = not host.crossing(out_h[0]).is_over_position(out_h[1])
        summand_arc = next(
            (label for label in sorted(summand.arc_darts())
             if summand.crossing(summand.arc_target(label)[0])
             .is_over_position(summand.arc_target(label)[1]) == want),
            sorted(summand.arc_darts())[0])

    out_s = summand.arc_source(summand_arc)
    in_s = summand.arc_target(summand_arc)

    def remap(d: DiagramCode, prefix: str, cut_arc: str, new_for: dict):
        recs = []
        for c in d.crossings:
            ends = []
            for p, label in enumerate(c.ends):
                if label == cut_arc:
                    ends.append(new_for[(c.cid, p)])
                else:
                    ends.append(prefix + label)
            recs.append(CrossingRec(cid=prefix + c.cid, sign=c.sign,
                                    ends=tuple(ends), over_in=c.over_in))
        return recs

    # new arcs: host tail -> summand head side, summand tail -> host head side
    host_new = {out_h: "spliceA", in_h: "spliceB"}
    summand_new = {in_s: "spliceA", out_s: "spliceB"}

    crossings = remap(host, "h.", host_arc, host_new) + \
        remap(summand, "s.", summand_arc, summand_new)
    circles = ["h." + x for x in host.circles]
    return DiagramCode(crossings, circles)
