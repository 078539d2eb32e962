"""
Closed combinatorial surfaces as rotation systems with edge twists.

A surface is encoded by a finite set of darts (half-edges) together with

* ``rot`` : a permutation of the darts whose cycles are the vertices,
  giving the cyclic (counterclockwise) order of darts around each vertex;
* ``inv`` : a fixed-point-free involution pairing the two darts of each
  edge;
* ``twisted`` : the set of edges across which the local orientation flips.

Untwisted rotation systems describe oriented surfaces.  Allowing twisted
edges extends the encoding to non-orientable surfaces: a closed walk
preserves local orientation exactly when it crosses an even number of
twisted edges.

Faces are *derived*, never stored.  They are computed on the orientation
double cover: each dart is doubled into two signed copies, the rotation
lifts to ``rot`` on the + sheet and ``rot``-inverse on the - sheet, and
crossing a twisted edge exchanges sheets.  Every face of the base surface
lifts to exactly two faces of the cover, so the face count (and hence the
Euler characteristic) is read off directly.

Edges are keyed by ``frozenset`` of their two darts.  Darts are plain
integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field


Edge = frozenset


def edge_of(d1: int, d2: int) -> Edge:
    return frozenset((d1, d2))


@dataclass
class CombSurface:
    """Mutable rotation system with twists.

    ``rot[d]`` is the next dart counterclockwise around the vertex of
    ``d``; ``inv[d]`` is the opposite dart of the same edge.
    """

    rot: dict[int, int] = field(default_factory=dict)
    inv: dict[int, int] = field(default_factory=dict)
    twisted: set[Edge] = field(default_factory=set)

    # -- basic structure ---------------------------------------------------

    def darts(self) -> list[int]:
        return sorted(self.rot)

    def edges(self) -> list[Edge]:
        return sorted({edge_of(d, self.inv[d]) for d in self.rot},
                      key=lambda e: sorted(e))

    def is_twisted(self, e: Edge) -> bool:
        return e in self.twisted

    def check(self) -> None:
        """Validate the permutation structure; raise ValueError if bad."""
        darts = set(self.rot)
        if set(self.inv) != darts:
            raise ValueError("rot and inv defined on different dart sets")
        for d in darts:
            if self.inv[d] == d:
                raise ValueError(f"edge involution fixes dart {d}")
            if self.inv[self.inv[d]] != d:
                raise ValueError(f"inv is not an involution at dart {d}")
            if self.rot[d] not in darts:
                raise ValueError(f"rot leaves the dart set at {d}")
        seen = set()
        for d in darts:
            if d in seen:
                continue
            cyc = self.vertex_cycle(d)
            if len(set(cyc)) != len(cyc):
                raise ValueError("rotation cycle repeats a dart")
            seen.update(cyc)
        for e in self.twisted:
            d1, d2 = tuple(e) if len(e) == 2 else (None, None)
            if d1 is None or self.inv.get(d1) != d2:
                raise ValueError(f"twist flag on non-edge {set(e)}")

    # -- vertices ----------------------------------------------------------

    def vertex_cycle(self, d: int) -> list[int]:
        """All darts at the vertex of d, starting from d, in rot order."""
        cyc = [d]
        x = self.rot[d]
        while x != d:
            cyc.append(x)
            x = self.rot[x]
        return cyc

    def vertices(self) -> list[list[int]]:
        out, seen = [], set()
        for d in self.darts():
            if d in seen:
                continue
            cyc = self.vertex_cycle(d)
            seen.update(cyc)
            out.append(cyc)
        return out

    def vertex_key(self, d: int) -> int:
        """Canonical label (minimum dart) of the vertex containing d."""
        return min(self.vertex_cycle(d))

    def degree(self, d: int) -> int:
        return len(self.vertex_cycle(d))

    # -- global counts -----------------------------------------------------

    def component_darts(self) -> list[set[int]]:
        """Dart sets of the connected components of the underlying graph."""
        comps, seen = [], set()
        for d0 in self.darts():
            if d0 in seen:
                continue
            comp, stack = set(), [d0]
            while stack:
                d = stack.pop()
                if d in comp:
                    continue
                comp.add(d)
                stack.append(self.rot[d])
                stack.append(self.inv[d])
            seen.update(comp)
            comps.append(comp)
        return comps

    def cover_faces(self) -> list[list[tuple[int, int]]]:
        """Faces of the orientation double cover as signed-dart orbits.

        Signed darts are (dart, sign) with sign in {+1, -1}.  The face
        permutation on the + sheet is d -> rot^-1(inv(d)); twisted edges
        exchange sheets.
        """
        rot_inv = {v: k for k, v in self.rot.items()}
        orbits = []
        seen: set[tuple[int, int]] = set()
        for d0 in self.darts():
            for s0 in (1, -1):
                if (d0, s0) in seen:
                    continue
                orbit = []
                d, s = d0, s0
                while (d, s) not in seen:
                    seen.add((d, s))
                    orbit.append((d, s))
                    e = self.inv[d]
                    s2 = -s if edge_of(d, e) in self.twisted else s
                    d = rot_inv[e] if s2 == 1 else self.rot[e]
                    s = s2
                orbits.append(orbit)
        return orbits

    def face_count(self) -> int:
        return len(self.cover_faces()) // 2

    def counts(self) -> tuple[int, int, int]:
        v = len(self.vertices())
        e = len(self.edges())
        f = self.face_count()
        return v, e, f

    def euler_characteristic(self) -> int:
        v, e, f = self.counts()
        return v - e + f

    def is_orientable(self) -> bool:
        """True iff local orientations extend globally.

        Assigns a sign to every vertex by BFS; an untwisted edge demands
        equal signs at its endpoints, a twisted edge opposite signs.
        Decided per connected component; all must be consistent.
        """
        sign: dict[int, int] = {}
        for comp in self.component_darts():
            start = min(comp)
            k0 = self.vertex_key(start)
            sign[k0] = 1
            queue = [start]
            while queue:
                d = queue.pop()
                kd = self.vertex_key(d)
                for x in self.vertex_cycle(d):
                    y = self.inv[x]
                    ky = self.vertex_key(y)
                    want = -sign[kd] if edge_of(x, y) in self.twisted else sign[kd]
                    if ky in sign:
                        if sign[ky] != want:
                            return False
                    else:
                        sign[ky] = want
                        queue.append(y)
        return True

    def genus_orientability(self) -> tuple[int, bool]:
        """Genus and orientability, with chi = 2 - 2*genus in both cases.

        The non-orientable surfaces handled here are connected sums of
        Klein bottles (even crosscap number); inputs with odd Euler
        characteristic are rejected.
        """
        if len(self.component_darts()) > 1:
            raise ValueError("surface is disconnected")
        chi = self.euler_characteristic()
        if chi % 2 != 0:
            raise ValueError(f"chi = {chi} is odd; no genus under the "
                             "Klein-sum convention")
        return (2 - chi) // 2, self.is_orientable()

    # -- copying and editing ----------------------------------------------

    def copy(self) -> CombSurface:
        return CombSurface(dict(self.rot), dict(self.inv), set(self.twisted))

    def fresh_dart(self) -> int:
        return max(self.rot, default=-1) + 1

    def add_vertex(self, darts: list[int]) -> None:
        """Add a vertex with the given (new) darts in CCW order."""
        n = len(darts)
        for i, d in enumerate(darts):
            if d in self.rot:
                raise ValueError(f"dart {d} already present")
            self.rot[d] = darts[(i + 1) % n]

    def set_edge(self, d1: int, d2: int, twist: bool = False) -> Edge:
        self.inv[d1] = d2
        self.inv[d2] = d1
        e = edge_of(d1, d2)
        if twist:
            self.twisted.add(e)
        else:
            self.twisted.discard(e)
        return e

    def insert_dart_after(self, anchor: int, new: int) -> None:
        """Insert a new dart into anchor's vertex, CCW right after anchor."""
        if new in self.rot:
            raise ValueError(f"dart {new} already present")
        self.rot[new] = self.rot[anchor]
        self.rot[anchor] = new

    def remove_dart(self, d: int) -> None:
        """Remove a dart from its vertex cycle (does not touch inv)."""
        cyc = self.vertex_cycle(d)
        if len(cyc) == 1:
            del self.rot[d]
            return
        prev = cyc[-1]
        self.rot[prev] = self.rot[d]
        del self.rot[d]

    def flip_vertex(self, d: int) -> None:
        """Gauge move: reverse the rotation at d's vertex and toggle the
        twist of every incident edge.  Preserves the surface."""
        cyc = self.vertex_cycle(d)
        for i, x in enumerate(cyc):
            self.rot[x] = cyc[i - 1]
        for x in cyc:
            # loops toggle twice and end up unchanged, as they should
            e = edge_of(x, self.inv[x])
            if e in self.twisted:
                self.twisted.discard(e)
            else:
                self.twisted.add(e)
