"""
Planar combinatorial codes for Kirby diagrams.

A diagram is a collection of nodes in the plane (4-valent crossings,
1-handle feet, bivalent markers for crossing-free components) joined by
strands.  Each node carries named slots; a framed component is a cyclic
list of (node, entry-slot) events, the exit slot being forced: the
opposite slot at a crossing, the paired slot on the other foot at a
handle, the other slot at a marker.  Strands join the exit port of one
event to the entry port of the next.

Conventions fixed here and relied on everywhere else:

* Crossing slots are listed counterclockwise.  The sign of a crossing is
  +1 when the under-strand exits one step counterclockwise from the
  over-strand's exit, else -1.
* Foot 0 slots are recorded counterclockwise in the plane; foot 1 slots
  are recorded as seen through the handle, i.e. clockwise in the plane.
  With this mirror convention the slot pairing of an ordinary handle is
  cyclic-order preserving, and that of an orientation-reversing handle
  is cyclic-order reversing.
* Each connected piece of the planar code must satisfy V - E + F = 2.
  Pieces beyond the first sit inside a named face of an earlier piece
  (or the outer face) via an anchor.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .surface import CombSurface


class KirbyError(ValueError):
    pass


@dataclass(frozen=True)
class Framing:
    kind: str  # "blackboard" | "coeff"
    value: int

    def __post_init__(self):
        if self.kind not in ("blackboard", "coeff"):
            raise KirbyError(f"unknown framing kind {self.kind!r}")


@dataclass
class OneHandle:
    id: str
    reversing: bool
    feet: tuple[tuple[str, ...], tuple[str, ...]] = ((), ())
    pairing: dict[str, str] = field(default_factory=dict)


@dataclass
class CrossingNode:
    id: str
    slots: tuple[str, str, str, str]
    over: tuple[str, str]


@dataclass
class MarkerNode:
    id: str
    slots: tuple[str, str]


@dataclass
class FramedComponent:
    id: str
    framing: Framing
    events: list[tuple[str, str]]


@dataclass
class Anchor:
    piece: str                      # a node id inside the anchored piece
    face: tuple[str, str] | None    # (node, slot) corner, or None = outer


@dataclass
class KirbyDiagram:
    handles: list[OneHandle] = field(default_factory=list)
    crossings: list[CrossingNode] = field(default_factory=list)
    markers: list[MarkerNode] = field(default_factory=list)
    components: list[FramedComponent] = field(default_factory=list)
    anchors: list[Anchor] = field(default_factory=list)

    # -- lookups -------------------------------------------------------------

    def handle(self, hid: str) -> OneHandle:
        return next(h for h in self.handles if h.id == hid)

    def crossing(self, cid: str) -> CrossingNode:
        return next(c for c in self.crossings if c.id == cid)

    def component(self, cid: str) -> FramedComponent:
        for c in self.components:
            if c.id == cid:
                return c
        raise KirbyError(f"unknown component {cid!r}")

    def node_ids(self) -> list[str]:
        return ([h.id for h in self.handles] + [c.id for c in self.crossings]
                + [m.id for m in self.markers])

    def node_kind(self, nid: str) -> str:
        if any(h.id == nid for h in self.handles):
            return "handle"
        if any(c.id == nid for c in self.crossings):
            return "crossing"
        if any(m.id == nid for m in self.markers):
            return "marker"
        raise KirbyError(f"unknown node {nid!r}")

    def slot_home(self) -> dict[str, str]:
        """Map each slot id to its node id (validating uniqueness)."""
        home: dict[str, str] = {}

        def put(slot, nid):
            if slot in home:
                raise KirbyError(f"slot {slot!r} declared twice")
            home[slot] = nid

        for h in self.handles:
            for foot in h.feet:
                for s in foot:
                    put(s, h.id)
        for c in self.crossings:
            for s in c.slots:
                put(s, c.id)
        for m in self.markers:
            for s in m.slots:
                put(s, m.id)
        return home

    def exit_slot(self, nid: str, entry: str) -> str:
        kind = self.node_kind(nid)
        if kind == "crossing":
            c = self.crossing(nid)
            i = c.slots.index(entry)
            return c.slots[(i + 2) % 4]
        if kind == "marker":
            m = next(m for m in self.markers if m.id == nid)
            return m.slots[1] if entry == m.slots[0] else m.slots[0]
        h = self.handle(nid)
        if entry in h.pairing:
            return h.pairing[entry]
        for a, b in h.pairing.items():
            if b == entry:
                return a
        raise KirbyError(f"slot {entry!r} is not paired on handle {nid!r}")

    # -- strands ---------------------------------------------------------------

    def strands(self, comp: FramedComponent) -> list[tuple[tuple[str, str],
                                                           tuple[str, str]]]:
        """Strand list as ((node, exit-slot), (node, entry-slot)) pairs,
        strand i running from event i's exit to event i+1's entry."""
        out = []
        ev = comp.events
        for i, (nid, entry) in enumerate(ev):
            nxt = ev[(i + 1) % len(ev)]
            out.append(((nid, self.exit_slot(nid, entry)), nxt))
        return out

    def crossing_passes(self, xid: str) -> list[tuple[str, str, str]]:
        """(component, entry, exit) for the two passes through a crossing."""
        out = []
        for comp in self.components:
            for nid, entry in comp.events:
                if nid == xid:
                    out.append((comp.id, entry, self.exit_slot(nid, entry)))
        return out

    def crossing_sign(self, xid: str) -> int:
        c = self.crossing(xid)
        passes = self.crossing_passes(xid)
        if len(passes) != 2:
            raise KirbyError(f"crossing {xid!r} has {len(passes)} passes")
        over = next(p for p in passes if set((p[1], p[2])) == set(c.over))
        under = next(p for p in passes if set((p[1], p[2])) != set(c.over))
        oi = c.slots.index(over[2])
        ui = c.slots.index(under[2])
        return 1 if ui == (oi + 1) % 4 else -1

    def self_writhe(self, cid: str) -> int:
        self.component(cid)
        total = 0
        for x in self.crossings:
            passes = self.crossing_passes(x.id)
            if len(passes) == 2 and all(p[0] == cid for p in passes):
                total += self.crossing_sign(x.id)
        return total

    def has_overcrossing(self, cid: str) -> bool:
        self.component(cid)
        for x in self.crossings:
            for comp_id, entry, exit_ in self.crossing_passes(x.id):
                if comp_id == cid and set((entry, exit_)) == set(x.over):
                    return True
        return False

    def handle_pass_count(self, cid: str, hid: str) -> int:
        return sum(1 for nid, _ in self.component(cid).events if nid == hid)

    # -- the planar map ----------------------------------------------------------

    def planar_map(self) -> tuple[CombSurface, dict[tuple[str, str], int]]:
        """Rotation system of the planar code; darts are ports.

        Returns the map plus the port -> dart translation.  Raises on
        dangling or doubly-used ports.
        """
        home = self.slot_home()
        port_dart: dict[tuple[str, str], int] = {}
        s = CombSurface()
        n = 0

        def vertex(slots: tuple[str, ...], nid: str):
            nonlocal n
            if not slots:
                return
            darts = []
            for slot in slots:
                port_dart[(nid, slot)] = n
                darts.append(n)
                n += 1
            s.add_vertex(darts)

        for c in self.crossings:
            vertex(c.slots, c.id)
        for m in self.markers:
            vertex(m.slots, m.id)
        for h in self.handles:
            vertex(h.feet[0], h.id)
            vertex(tuple(reversed(h.feet[1])), h.id)  # recorded CW in plane

        used: set[tuple[str, str]] = set()
        for comp in self.components:
            for (fn, fs), (tn, ts) in self.strands(comp):
                for port in ((fn, fs), (tn, ts)):
                    if port in used:
                        raise KirbyError(f"port {port} used twice")
                    if port not in port_dart:
                        raise KirbyError(f"unknown port {port}")
                    used.add(port)
                if home[fs] != fn or home[ts] != tn:
                    raise KirbyError("event references a foreign slot")
                s.set_edge(port_dart[(fn, fs)], port_dart[(tn, ts)])
        dangling = set(port_dart) - used
        if dangling:
            raise KirbyError(f"dangling slots: {sorted(dangling)}")
        return s, port_dart

    def pieces(self) -> list[list[str]]:
        """Connected pieces of the diagram (node-id lists), sorted by
        their minimal node id; feet of one handle count as connected."""
        parent: dict[str, str] = {nid: nid for nid in self.node_ids()}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            parent[find(a)] = find(b)

        for comp in self.components:
            ev = comp.events
            for i in range(len(ev)):
                union(ev[i][0], ev[(i + 1) % len(ev)][0])
        groups: dict[str, list[str]] = {}
        for nid in self.node_ids():
            groups.setdefault(find(nid), []).append(nid)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])

    # -- validation -----------------------------------------------------------

    def validate(self) -> None:
        home = self.slot_home()
        ids = self.node_ids() + [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise KirbyError("duplicate ids")
        for h in self.handles:
            if len(h.feet[0]) != len(h.feet[1]):
                raise KirbyError(f"handle {h.id!r}: feet of unequal size")
            if (sorted(h.pairing) != sorted(h.feet[0])
                    or sorted(h.pairing.values()) != sorted(h.feet[1])):
                raise KirbyError(f"handle {h.id!r}: pairing is not a "
                                 "bijection between the feet")
            _check_pairing_order(h)
        for c in self.crossings:
            if len(set(c.slots)) != 4:
                raise KirbyError(f"crossing {c.id!r}: need 4 distinct slots")
            i, j = c.slots.index(c.over[0]), c.slots.index(c.over[1])
            if (i - j) % 4 != 2:
                raise KirbyError(f"crossing {c.id!r}: over pair must be "
                                 "an opposite slot pair")
        for comp in self.components:
            if not comp.events:
                raise KirbyError(f"component {comp.id!r} has no events "
                                 "(crossing-free components need a marker)")
            touches_handle = False
            for nid, entry in comp.events:
                if home.get(entry) != nid:
                    raise KirbyError(f"component {comp.id!r}: bad event "
                                     f"({nid!r}, {entry!r})")
                if self.node_kind(nid) == "handle":
                    touches_handle = True
            if comp.framing.kind == "coeff" and touches_handle:
                raise KirbyError(
                    f"component {comp.id!r}: coefficient framing is only "
                    "legal on components that avoid 1-handles")
            for h in self.handles:
                if h.reversing and self.handle_pass_count(comp.id, h.id) % 2:
                    raise KirbyError(
                        f"component {comp.id!r} passes reversing handle "
                        f"{h.id!r} an odd number of times")
        for x in self.crossings:
            if len(self.crossing_passes(x.id)) != 2:
                raise KirbyError(f"crossing {x.id!r} is not visited by "
                                 "exactly two passes")
        smap, _ = self.planar_map()
        for comp in smap.component_darts():
            sub = CombSurface({d: smap.rot[d] for d in comp},
                              {d: smap.inv[d] for d in comp}, set())
            if sub.euler_characteristic() != 2:
                raise KirbyError("planarity violation: a connected piece "
                                 "has V - E + F != 2")
        pieces = self.pieces()
        piece_of = {nid: i for i, p in enumerate(pieces) for nid in p}
        anchored = {a.piece for a in self.anchors}
        if len(anchored) != len(self.anchors):
            raise KirbyError("duplicate anchors")
        for a in self.anchors:
            if a.piece not in piece_of:
                raise KirbyError(f"anchor names unknown node {a.piece!r}")
            if piece_of[a.piece] == 0:
                raise KirbyError("the first piece cannot be anchored")
            if a.face is not None:
                nid, slot = a.face
                if home.get(slot) != nid:
                    raise KirbyError(f"anchor face ({nid!r},{slot!r}) invalid")
                if piece_of[nid] >= piece_of[a.piece]:
                    raise KirbyError("anchor must reference an earlier piece")

    def anchor_for_piece(self, piece_index: int) -> Anchor | None:
        pieces = self.pieces()
        members = set(pieces[piece_index])
        for a in self.anchors:
            if a.piece in members:
                return a
        return None

    # -- editing (used by the conversion pipeline) ------------------------------

    def fresh_ids(self, base: str, count: int) -> list[str]:
        taken = set(self.node_ids()) | {c.id for c in self.components}
        taken |= set(self.slot_home())
        out, i = [], 0
        while len(out) < count:
            cand = f"{base}{i}"
            if cand not in taken:
                out.append(cand)
                taken.add(cand)
            i += 1
        return out

    def insert_kink(self, cid: str, strand_index: int, sign: int) -> str:
        """Insert a one-crossing curl on the given strand of a component.

        Changes the self-writhe by exactly ``sign``; returns the new
        crossing id.
        """
        comp = self.component(cid)
        (xid,) = self.fresh_ids(f"k.{cid}.", 1)
        slots = tuple(f"{xid}.{p}" for p in "wsen")  # CCW: W,S,E,N
        w, s_, e, n_ = slots
        over = (w, e) if sign > 0 else (s_, n_)
        self.crossings.append(CrossingNode(xid, slots, over))
        comp.events[strand_index + 1:strand_index + 1] = [(xid, w), (xid, s_)]
        return xid

    def insert_r2(self, cid: str, strand_index: int) -> tuple[str, str]:
        """Reidemeister-2 poke of a strand over itself (net writhe 0).

        Gives the component two overcrossings; returns the crossing ids.
        """
        comp = self.component(cid)
        xid, yid = self.fresh_ids(f"r.{cid}.", 2)
        # slots CCW: (bottom-east, dip-in/out, bottom-west, dip-out/in)
        xs = tuple(f"{xid}.{p}" for p in ("be", "di", "bw", "do"))
        ys = tuple(f"{yid}.{p}" for p in ("be", "do", "bw", "di"))
        self.crossings.append(CrossingNode(xid, xs, (xs[1], xs[3])))
        self.crossings.append(CrossingNode(yid, ys, (ys[1], ys[3])))
        comp.events[strand_index + 1:strand_index + 1] = [
            (xid, xs[1]), (yid, ys[3]), (yid, ys[0]), (xid, xs[0])]
        return xid, yid

    def copy(self) -> KirbyDiagram:
        return KirbyDiagram(
            [OneHandle(h.id, h.reversing, (tuple(h.feet[0]), tuple(h.feet[1])),
                       dict(h.pairing)) for h in self.handles],
            [CrossingNode(c.id, tuple(c.slots), tuple(c.over))
             for c in self.crossings],
            [MarkerNode(m.id, tuple(m.slots)) for m in self.markers],
            [FramedComponent(c.id, c.framing, list(c.events))
             for c in self.components],
            [Anchor(a.piece, a.face) for a in self.anchors],
        )


def _check_pairing_order(h: OneHandle) -> None:
    m = len(h.feet[0])
    if m <= 1:
        return
    pos1 = {s: i for i, s in enumerate(h.feet[1])}
    seq = [pos1[h.pairing[s]] for s in h.feet[0]]
    direction = -1 if h.reversing else 1
    offset = seq[0]
    for i, v in enumerate(seq):
        if v != (offset + direction * i) % m:
            kind = "order-reversing" if h.reversing else "order-preserving"
            raise KirbyError(
                f"handle {h.id!r}: pairing must be {kind} with respect to "
                "the recorded foot orders (draw other gluings with "
                "explicit crossings)")


# -- isomorphism ----------------------------------------------------------------


def _erase_markers(d: KirbyDiagram) -> KirbyDiagram:
    out = d.copy()
    marker_ids = {m.id for m in out.markers}
    out.markers = []
    out.anchors = []   # anchors are placement data, not diagram structure
    for comp in out.components:
        comp.events = [(n, s) for n, s in comp.events if n not in marker_ids]
    return out


def _component_key(d: KirbyDiagram, comp: FramedComponent):
    kinds = tuple(d.node_kind(n) for n, _ in comp.events)
    return (comp.framing.kind, comp.framing.value, len(comp.events), kinds)


def diagram_isomorphic(a: KirbyDiagram, b: KirbyDiagram) -> bool:
    """Relabeling equivalence of planar codes, allowing one global
    reflection; framings must match on the nose.  Markers are invisible
    subdivision points and are ignored."""
    a = _erase_markers(a)
    b = _erase_markers(b)
    for mirror in (False, True):
        bb = _mirror(b) if mirror else b
        if _match(a, bb):
            return True
    return False


def _mirror(d: KirbyDiagram) -> KirbyDiagram:
    out = d.copy()
    for c in out.crossings:
        c.slots = tuple(reversed(c.slots))
    for h in out.handles:
        h.feet = (tuple(reversed(h.feet[0])), tuple(reversed(h.feet[1])))
    return out


def _match(a: KirbyDiagram, b: KirbyDiagram) -> bool:
    if (len(a.handles) != len(b.handles)
            or len(a.crossings) != len(b.crossings)
            or len(a.components) != len(b.components)):
        return False
    if sorted(_component_key(a, c) for c in a.components) != \
            sorted(_component_key(b, c) for c in b.components):
        return False

    a_comp = sorted(a.components, key=lambda c: (_component_key(a, c), c.id))

    def extend(node_map: dict[str, str], slot_map: dict[str, str],
               idx: int) -> bool:
        if idx == len(a_comp):
            return _check_full(a, b, node_map, slot_map)
        ca = a_comp[idx]
        for cb in b.components:
            if _component_key(a, ca) != _component_key(b, cb):
                continue
            n = len(ca.events)
            for direction in (1, -1):
                for offset in range(n):
                    trial_nodes = dict(node_map)
                    trial_slots = dict(slot_map)
                    if _try_align(a, b, ca, cb, offset, direction,
                                  trial_nodes, trial_slots):
                        if extend(trial_nodes, trial_slots, idx + 1):
                            return True
        return False

    if not a.components:
        return _check_full(a, b, {}, {})
    return extend({}, {}, 0)


def _events_oriented(d: KirbyDiagram, comp: FramedComponent, offset: int,
                     direction: int) -> list[tuple[str, str]]:
    ev = comp.events
    n = len(ev)
    if direction == 1:
        return [ev[(offset + i) % n] for i in range(n)]
    # reversed traversal enters where the forward one exited
    out = []
    for i in range(n):
        nid, entry = ev[(offset - i) % n]
        out.append((nid, d.exit_slot(nid, entry)))
    return out


def _try_align(a, b, ca, cb, offset, direction, node_map, slot_map) -> bool:
    ea = _events_oriented(a, ca, 0, 1)
    eb = _events_oriented(b, cb, offset, direction)
    for (na, sa), (nb, sb) in zip(ea, eb):
        if a.node_kind(na) != b.node_kind(nb):
            return False
        if node_map.get(na, nb) != nb:
            return False
        node_map[na] = nb
        for s_from, s_to in ((sa, sb),
                             (a.exit_slot(na, sa), b.exit_slot(nb, sb))):
            if slot_map.get(s_from, s_to) != s_to:
                return False
            slot_map[s_from] = s_to
    return True


def _check_full(a: KirbyDiagram, b: KirbyDiagram,
                node_map: dict[str, str], slot_map: dict[str, str]) -> bool:
    if len(set(node_map.values())) != len(node_map):
        return False
    # handles not touched by any component may map freely
    free_a = [h for h in a.handles if h.id not in node_map]
    used_b = set(node_map.values())
    free_b = [h for h in b.handles if h.id not in used_b]
    if sorted(h.reversing for h in free_a) != sorted(h.reversing
                                                     for h in free_b):
        return False
    for ha in a.handles:
        if ha.id not in node_map:
            continue
        hb = b.handle(node_map[ha.id])
        if ha.reversing != hb.reversing:
            return False
        if not _feet_match(ha, hb, slot_map):
            return False
    for xa in a.crossings:
        if xa.id not in node_map:
            return False
        xb = b.crossing(node_map[xa.id])
        if not _cyclic_match(xa.slots, xb.slots, slot_map):
            return False
        if {slot_map[s] for s in xa.over} != set(xb.over):
            return False
    return True


def _cyclic_match(slots_a, slots_b, slot_map) -> bool:
    mapped = [slot_map.get(s) for s in slots_a]
    if None in mapped:
        return False
    n = len(slots_b)
    return any(tuple(slots_b[(k + i) % n] for i in range(n)) == tuple(mapped)
               for k in range(n))


def _feet_match(ha: OneHandle, hb: OneHandle, slot_map) -> bool:
    for fa, fb in ((0, 0), (1, 1)):
        if len(ha.feet[fa]) != len(hb.feet[fb]):
            return False
        if ha.feet[fa] and not _cyclic_match(ha.feet[fa], hb.feet[fb],
                                             slot_map):
            return False
    for s, t in ha.pairing.items():
        if slot_map.get(t) != hb.pairing.get(slot_map.get(s)):
            return False
    return True
