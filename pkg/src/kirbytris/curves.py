"""
Embedded curve systems on a combinatorial surface.

Curves live in the 1-skeleton: every edge of the surface map is owned
either by exactly one curve or by the scaffolding ("frame").  A curve is
recovered from its edge set by walking; embeddedness means every vertex
carries either zero or exactly two darts of the curve, so the walk is
forced.  Transverse crossings of two curves are explicit 4-valent
vertices whose rotation alternates between the two.

Families follow the trisection colouring: alpha, beta, gamma for the
three cut systems, link for attaching-link curves in mid-pipeline
states, frame for scaffolding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .surface import CombSurface, Edge, edge_of

FRAME = "frame"
FAMILIES = ("alpha", "beta", "gamma", "link", FRAME)


@dataclass
class Curve:
    id: str
    family: str


@dataclass
class DecoratedSurface:
    surface: CombSurface
    curves: dict[str, Curve] = field(default_factory=dict)
    owner: dict[Edge, str] = field(default_factory=dict)
    layout: dict[int, tuple[float, float]] = field(default_factory=dict)
    provenance: dict[str, dict] = field(default_factory=dict)

    # -- bookkeeping --------------------------------------------------------

    def copy(self) -> DecoratedSurface:
        return DecoratedSurface(
            self.surface.copy(),
            {k: Curve(c.id, c.family) for k, c in self.curves.items()},
            dict(self.owner),
            dict(self.layout),
            {k: dict(v) for k, v in self.provenance.items()},
        )

    def family(self, fam: str) -> list[str]:
        return sorted(cid for cid, c in self.curves.items() if c.family == fam)

    def owner_of_dart(self, d: int) -> str:
        return self.owner[edge_of(d, self.surface.inv[d])]

    def curve_edges(self, cid: str) -> list[Edge]:
        return [e for e, o in self.owner.items() if o == cid]

    def curve_darts_at(self, d: int, cid: str) -> list[int]:
        """Darts of curve cid at the vertex containing dart d."""
        return [x for x in self.surface.vertex_cycle(d)
                if self.owner_of_dart(x) == cid]

    # -- traversal ----------------------------------------------------------

    def curve_cycle(self, cid: str) -> list[int]:
        """The curve as a cyclic dart sequence d_1, ..., d_m, where dart
        d_i leaves the i-th vertex along the i-th edge.  Raises if the
        edge set is not a single embedded closed walk."""
        s = self.surface
        edges = self.curve_edges(cid)
        if not edges:
            raise ValueError(f"curve {cid} has no edges")
        start = min(min(e) for e in edges)
        walk = [start]
        used = {edge_of(start, s.inv[start])}
        d = start
        while True:
            arrive = s.inv[d]
            nxt = [x for x in s.vertex_cycle(arrive)
                   if x != arrive and self.owner_of_dart(x) == cid]
            if len(nxt) != 1:
                raise ValueError(
                    f"curve {cid} is not embedded at vertex of dart {arrive}")
            d = nxt[0]
            if d == start:
                break
            e = edge_of(d, s.inv[d])
            if e in used:
                raise ValueError(f"curve {cid} reuses an edge")
            used.add(e)
            walk.append(d)
        if len(used) != len(edges):
            raise ValueError(f"curve {cid} is not a single closed walk")
        return walk

    def validate(self) -> None:
        """Check all decoration invariants; raise ValueError on failure."""
        s = self.surface
        s.check()
        for e in s.edges():
            if e not in self.owner:
                raise ValueError(f"edge {sorted(e)} has no owner")
        for e, o in self.owner.items():
            if o != FRAME and o not in self.curves:
                raise ValueError(f"edge {sorted(e)} owned by unknown {o!r}")
        for cid in self.curves:
            self.curve_cycle(cid)
        # vertex-level: per curve 0 or 2 darts; crossings alternate
        for vert in s.vertices():
            by_curve: dict[str, list[int]] = {}
            for d in vert:
                o = self.owner_of_dart(d)
                if o != FRAME:
                    by_curve.setdefault(o, []).append(d)
            for cid, ds in by_curve.items():
                if len(ds) != 2:
                    raise ValueError(
                        f"curve {cid} uses {len(ds)} darts at a vertex")
            curve_ids = [cid for cid in by_curve
                         if self.curves[cid].family != FRAME]
            if len(curve_ids) == 2 and len(vert) == 4:
                a, b = curve_ids
                pattern = [self.owner_of_dart(d) for d in vert]
                if pattern[0] == pattern[1]:
                    raise ValueError(
                        f"curves {a},{b} do not alternate at a vertex")
        # within-family disjointness
        for fam in ("alpha", "beta", "gamma", "link"):
            ids = self.family(fam)
            occupied: dict[int, str] = {}
            for cid in ids:
                for d in self.curve_vertices(cid):
                    if d in occupied and occupied[d] != cid:
                        raise ValueError(
                            f"family {fam} curves {occupied[d]},{cid} meet")
                    occupied[d] = cid

    def curve_vertices(self, cid: str) -> list[int]:
        """Canonical vertex keys visited by the curve."""
        s = self.surface
        return [s.vertex_key(d) for d in self.curve_cycle(cid)]

    def shared_vertices(self, a: str, b: str) -> list[int]:
        if a == b:
            return []
        va = set(self.curve_vertices(a))
        return sorted(v for v in self.curve_vertices(b) if v in va)

    # -- sidedness ----------------------------------------------------------

    def two_sided(self, cid: str) -> bool:
        """A curve is two-sided iff it preserves local orientation, i.e.
        crosses an even number of twisted edges."""
        s = self.surface
        parity = 0
        for d in self.curve_cycle(cid):
            if edge_of(d, s.inv[d]) in s.twisted:
                parity ^= 1
        return parity == 0

    # -- cutting ------------------------------------------------------------

    def cut_along(self, fam: str) -> list[tuple[int, int, bool]]:
        """Cut the surface along every curve of the family.

        Returns one (chi, boundary_circles, orientable) triple per
        connected component of the cut surface, where chi is the Euler
        characteristic of the bounded piece.  The decoration itself is
        not modified; the cut happens on a scratch copy.
        """
        ids = self.family(fam)
        for cid in ids:
            if not self.two_sided(cid):
                raise ValueError(f"curve {cid} is one-sided; cannot cut")
        work = self.copy()
        circles: list[list[Edge]] = []
        for cid in ids:
            circles.extend(_cut_one(work, cid))
        s = work.surface
        out = []
        for comp in s.component_darts():
            sub = CombSurface(
                {d: s.rot[d] for d in comp},
                {d: s.inv[d] for d in comp},
                {e for e in s.twisted if e <= comp},
            )
            boundary = sum(1 for circ in circles if min(circ[0]) in comp)
            chi = sub.euler_characteristic() - boundary
            out.append((chi, boundary, sub.is_orientable()))
        return sorted(out)

    def is_cut_system(self, fam: str) -> bool:
        """True iff the family cuts the surface to a single sphere with
        2g holes: g disjoint two-sided curves, connected complement,
        chi = 2 - 2g, 2g boundary circles, orientable."""
        try:
            g, _ = self.surface.genus_orientability()
        except ValueError:
            return False
        ids = self.family(fam)
        if len(ids) != g:
            return False
        for cid in ids:
            try:
                if not self.two_sided(cid):
                    return False
            except ValueError:
                return False
        seen: set[int] = set()
        for cid in ids:
            for v in self.curve_vertices(cid):
                if v in seen:
                    return False
                seen.add(v)
        if g == 0:
            return True
        pieces = self.cut_along(fam)
        return pieces == [(2 - 2 * g, 2 * g, True)]

    # -- intersection numbers (algebraic) ------------------------------------

    def orientation_signs(self) -> dict[int, int]:
        """Consistent +-1 per vertex key; raises if non-orientable."""
        s = self.surface
        if not s.is_orientable():
            raise ValueError("surface is non-orientable")
        sign: dict[int, int] = {}
        for comp in s.component_darts():
            start = min(comp)
            sign[s.vertex_key(start)] = 1
            stack = [start]
            while stack:
                d = stack.pop()
                kd = s.vertex_key(d)
                for x in s.vertex_cycle(d):
                    y = s.inv[x]
                    ky = s.vertex_key(y)
                    want = (-sign[kd] if edge_of(x, y) in s.twisted
                            else sign[kd])
                    if ky not in sign:
                        sign[ky] = want
                        stack.append(y)
        return sign

    def crossing_sign(self, a: str, b: str, vkey: int,
                      vsign: dict[int, int]) -> int:
        """Sign of the transverse crossing of a and b at a vertex.

        With the vertex's true CCW rotation (a_out, b_out, a_back,
        b_back) the sign is +1, with (a_out, b_back, a_back, b_out) it
        is -1.  Antisymmetric in (a, b).
        """
        s = self.surface
        cyc_a = self.curve_cycle(a)
        cyc_b = self.curve_cycle(b)
        a_out = next(d for d in cyc_a if s.vertex_key(d) == vkey)
        b_out = next(d for d in cyc_b if s.vertex_key(d) == vkey)
        cyc = s.vertex_cycle(a_out)
        if vsign[vkey] < 0:
            cyc = [cyc[0]] + list(reversed(cyc[1:]))
        i = cyc.index(b_out)
        return 1 if i == 1 else -1

    def algebraic_intersection_matrix(
            self, fam_a: str, fam_b: str, mod2: bool = False
    ) -> list[list[int]]:
        ids_a = self.family(fam_a)
        ids_b = self.family(fam_b)
        if mod2:
            return [[len(self.shared_vertices(a, b)) % 2 for b in ids_b]
                    for a in ids_a]
        vsign = self.orientation_signs()
        mat = []
        for a in ids_a:
            row = []
            for b in ids_b:
                row.append(sum(self.crossing_sign(a, b, v, vsign)
                               for v in self.shared_vertices(a, b)))
            mat.append(row)
        return mat


def _cut_one(work: DecoratedSurface, cid: str) -> list[list[Edge]]:
    """Cut work's surface along one two-sided curve in place.

    Returns the two scar circles as edge lists (original copy, fresh
    copy).  The curve's edges end up duplicated with the same owner on
    both copies.
    """
    s = work.surface
    cyc = work.curve_cycle(cid)
    m = len(cyc)
    # gauge: flip vertices so every curve edge is untwisted
    for i in range(m):
        if edge_of(cyc[i], s.inv[cyc[i]]) in s.twisted:
            nxt = cyc[(i + 1) % m]
            s.flip_vertex(nxt)
    if any(edge_of(d, s.inv[d]) in s.twisted for d in cyc):
        raise ValueError(f"curve {cid} is one-sided")

    backs = [s.inv[cyc[i - 1]] for i in range(m)]  # back dart at vertex i
    fresh = s.fresh_dart()
    dup_out = {}
    dup_back = {}
    for i in range(m):
        dup_out[i] = fresh
        dup_back[i] = fresh + 1
        fresh += 2

    new_rot: dict[int, int] = {}

    def chain(darts: list[int]) -> None:
        n = len(darts)
        for j, d in enumerate(darts):
            new_rot[d] = darts[(j + 1) % n]

    for i in range(m):
        out_d, back_d = cyc[i], backs[i]
        vert = s.vertex_cycle(out_d)
        j = vert.index(back_d)
        side_a = vert[1:j]
        side_b = vert[j + 1:]
        chain([out_d] + side_a + [back_d])
        chain([dup_out[i], dup_back[i]] + side_b)
    for d, nd in new_rot.items():
        s.rot[d] = nd
    # duplicate curve edges: original darts on side A, fresh on side B
    circle_a, circle_b = [], []
    for i in range(m):
        j = (i + 1) % m
        e_new = s.set_edge(dup_out[i], dup_back[j])
        work.owner[e_new] = cid
        circle_b.append(e_new)
        circle_a.append(edge_of(cyc[i], s.inv[cyc[i]]))
    return [circle_a, circle_b]
