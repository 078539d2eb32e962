"""
Curve surgery on decorated surfaces: parallel pushoffs, handle slides,
bigon reduction, geometric intersection counts, stabilization.

All moves are built on one walker, ``_lay_parallel``, which draws a new
arc alongside a dart path.  Before walking, the path's edges are gauged
untwisted (vertex flips, a surface isomorphism), which makes "left of
the walk" globally consistent; the new arc then crosses exactly the
transversal edges hanging off the path's vertices on the chosen side,
in the order a parallel line would meet them.

Bigon reduction works on the overlay of the two curves: the complex
whose vertices are their crossings and whose edges are the connecting
arcs.  Faces of that overlay see through scaffolding and third curves,
so a disk swept out by one arc of each curve is found even when frame
edges subdivide it in the full complex.  Removing the bigon reroutes
one curve's arc along the far side of the other's, which changes no
intersection count except the pair's own (down by two).
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import Curve, DecoratedSurface, FRAME
from .surface import CombSurface, edge_of

LEFT, RIGHT = 1, -1


# -- twist gauging -----------------------------------------------------------


def gauge_path_untwisted(dec: DecoratedSurface, path: list[int],
                         closed: bool) -> None:
    """Flip vertices so every edge of the dart path is untwisted.

    A closed path must be orientation preserving (even twist parity);
    raises ValueError otherwise.
    """
    s = dec.surface
    n = len(path)
    for i, d in enumerate(path):
        if edge_of(d, s.inv[d]) in s.twisted:
            if closed and i == n - 1:
                raise ValueError("closed path is orientation reversing")
            s.flip_vertex(s.inv[d])
    if any(edge_of(d, s.inv[d]) in s.twisted for d in path):
        raise ValueError("gauge failed; path is one-sided")


# -- the parallel walker -------------------------------------------------------


@dataclass
class _Lane:
    start: int | None = None   # loose dart at the walk's start
    end: int | None = None     # loose dart at the walk's end
    crossings: int = 0


def _side_block(s: CombSurface, out: int, back: int, side: int) -> list[int]:
    """Transversal darts on one side of a walk passing out/back, in the
    order a parallel line next to the walk meets their edges."""
    cyc = s.vertex_cycle(out)
    i = cyc.index(back)
    if side == LEFT:
        return list(reversed(cyc[1:i]))
    return cyc[i + 1:]


def _cross_edge(dec: DecoratedSurface, side_dart: int, side: int,
                prev_loose: int | None, owner: str
                ) -> tuple[int, int | None]:
    """Subdivide the side dart's edge next to its vertex and run the new
    arc through the subdivision point.  Returns (out_dart, start_dart);
    start_dart is the arc's loose start if this was its first crossing.
    """
    s = dec.surface
    far = s.inv[side_dart]
    e_old = edge_of(side_dart, far)
    twist = e_old in s.twisted
    old_owner = dec.owner.pop(e_old)
    s.twisted.discard(e_old)
    base = s.fresh_dart()
    n_v, n_f, a_back, a_out = base, base + 1, base + 2, base + 3
    if side == LEFT:
        s.add_vertex([a_out, n_f, a_back, n_v])
    else:
        s.add_vertex([a_out, n_v, a_back, n_f])
    dec.owner[s.set_edge(side_dart, n_v)] = old_owner
    dec.owner[s.set_edge(n_f, far, twist=twist)] = old_owner
    start = None
    if prev_loose is None:
        start = a_back
    else:
        dec.owner[s.set_edge(prev_loose, a_back)] = owner
    kv = s.vertex_key(side_dart)
    if kv in dec.layout:
        dec.layout[s.vertex_key(n_v)] = dec.layout[kv]
    return a_out, start


def _lay_parallel(dec: DecoratedSurface, path: list[int], side: int,
                  owner: str, closed: bool) -> _Lane:
    """Draw an open arc parallel to the dart path on the given side.

    An open path is shadowed past its interior vertices only.  A closed
    path is shadowed past every vertex, the start vertex coming last, so
    the arc's loose ends flank the start vertex's corner.  The caller
    wires lane.start and lane.end.
    """
    s = dec.surface
    gauge_path_untwisted(dec, path, closed)
    lane = _Lane()
    n = len(path)
    stop = n + 1 if closed else n
    for i in range(1, stop):
        if i == n:
            out, back = path[0], s.inv[path[-1]]
        else:
            out, back = path[i], s.inv[path[i - 1]]
        for sd in _side_block(s, out, back, side):
            ao, st = _cross_edge(dec, sd, side, lane.end, owner)
            if st is not None:
                lane.start = st
            lane.end = ao
            lane.crossings += 1
    return lane


# -- parallel pushoff ----------------------------------------------------------


def parallel_pushoff(dec: DecoratedSurface, cid: str, new_id: str,
                     new_family: str) -> DecoratedSurface:
    """Add a disjoint parallel copy of a two-sided curve, running on the
    left of the curve's traversal orientation."""
    out = dec.copy()
    if not out.two_sided(cid):
        raise ValueError(f"curve {cid} is one-sided; no parallel pushoff")
    path = out.curve_cycle(cid)
    lane = _lay_parallel(out, path, LEFT, new_id, closed=True)
    if lane.crossings == 0:
        raise ValueError(f"curve {cid} has no transversals; the pushoff "
                         "would be disconnected from the complex")
    out.owner[out.surface.set_edge(lane.end, lane.start)] = new_id
    out.curves[new_id] = Curve(new_id, new_family)
    out.provenance[new_id] = {"kind": "pushoff", "of": cid}
    return out


# -- handle slide ---------------------------------------------------------------


def handle_slide(dec: DecoratedSurface, slider: str, over: str,
                 band: list[int], side: int = LEFT) -> DecoratedSurface:
    """Band-sum ``slider`` with a parallel copy of ``over``.

    ``band`` is a dart path along some transversal curve, from a
    crossing vertex p on ``slider`` to a crossing vertex q on ``over``.
    The band runs alongside the path on ``side``; its interior must stay
    clear of the whole slider/over family.
    """
    if slider == over:
        raise ValueError("cannot slide a curve over itself")
    out = dec.copy()
    s = out.surface
    fam = out.curves[slider].family
    if out.curves[over].family != fam:
        raise ValueError("slider and over must belong to one family")
    interior = {s.vertex_key(d) for d in band[1:]}
    for cid in out.family(fam):
        if set(out.curve_vertices(cid)) & interior:
            raise ValueError(f"band interior touches family curve {cid}")
    p = s.vertex_key(band[0])
    q = s.vertex_key(s.inv[band[-1]])
    if p not in set(out.curve_vertices(slider)):
        raise ValueError("band must start on the slider")
    if q not in set(out.curve_vertices(over)):
        raise ValueError("band must end on the over curve")

    sl_block = _side_block(s, band[0], _other_curve_dart(out, band[0]), side)
    sl_cands = [d for d in sl_block if out.owner_of_dart(d) == slider]
    if len(sl_cands) != 1:
        raise ValueError("slider does not cross the band start transversally")
    sl = sl_cands[0]

    # outer lane first (it crosses the original side edges), inner second
    outer = _lay_parallel(out, band, side, slider, closed=False)
    inner = _lay_parallel(out, band, side, slider, closed=False)

    # cut the slider's band-side edge at p
    sl_far = s.inv[sl]
    e_cut = edge_of(sl, sl_far)
    cut_twist = e_cut in s.twisted
    s.twisted.discard(e_cut)
    del out.owner[e_cut]

    # parallel copy of `over`, gap at q facing the band's arrival
    ov_cycle = out.curve_cycle(over)
    q_pos = next(i for i, d in enumerate(ov_cycle) if s.vertex_key(d) == q)
    ov_cycle = ov_cycle[q_pos:] + ov_cycle[:q_pos]
    q_back = s.inv[band[-1]]
    l_block = _side_block(s, ov_cycle[0], s.inv[ov_cycle[-1]], LEFT)
    if q_back in l_block:
        copy_side = LEFT
    else:
        r_block = _side_block(s, ov_cycle[0], s.inv[ov_cycle[-1]], RIGHT)
        if q_back not in r_block:
            raise ValueError("band does not end transversally on over")
        copy_side = RIGHT
    copy = _lay_parallel(out, ov_cycle, copy_side, slider, closed=True)
    if copy.crossings == 0:
        raise ValueError("over curve has no transversals; degenerate slide")

    # the stub at p joins the near lane; the far cut end joins the far
    # lane; the copy's last dart sits just past its crossing with the
    # band's final edge, so it is the near (path-proximal) copy end.
    def wire(d1, d2, twist=False):
        out.owner[s.set_edge(d1, d2, twist=twist)] = slider

    if inner.crossings == 0:
        wire(sl, copy.end)
        wire(sl_far, copy.start, twist=cut_twist)
    else:
        wire(sl, inner.start)
        wire(inner.end, copy.end)
        wire(sl_far, outer.start, twist=cut_twist)
        wire(outer.end, copy.start)
    out.provenance.setdefault(slider, {}).setdefault("slid_over", []) \
        .append(over)
    return out


# -- bigon reduction -------------------------------------------------------------


@dataclass
class _Bigon:
    v: int                 # corner where the a-arc starts
    w: int                 # corner where the b-arc starts
    a_path: list[int]      # surface darts of the a-arc, v -> w
    b_path: list[int]      # surface darts of the b-arc, w -> v
    b_far_side: int        # side of the b-walk away from the bigon


def _overlay_arcs(dec: DecoratedSurface, cid: str, shared: set[int]):
    """Split a curve's cycle at the shared vertices; returns a list of
    (out_dart, back_dart, dart_path) per connecting arc."""
    s = dec.surface
    cyc = dec.curve_cycle(cid)
    marks = [i for i, d in enumerate(cyc) if s.vertex_key(d) in shared]
    arcs = []
    for a, b in zip(marks, marks[1:] + [marks[0] + len(cyc)]):
        path = [cyc[i % len(cyc)] for i in range(a, b)]
        arcs.append((path[0], s.inv[path[-1]], path))
    return arcs


def find_bigon(dec: DecoratedSurface, a: str, b: str) -> _Bigon | None:
    """Locate a bigon between two curves on their overlay complex."""
    s = dec.surface
    shared = set(dec.shared_vertices(a, b))
    if len(shared) < 2:
        return None
    ov = CombSurface()
    paths: dict[int, list[int]] = {}
    owner_of: dict[int, str] = {}
    for cid in (a, b):
        for out, back, path in _overlay_arcs(dec, cid, shared):
            ov.inv[out] = back
            ov.inv[back] = out
            paths[out] = path
            paths[back] = [s.inv[d] for d in reversed(path)]
            owner_of[out] = owner_of[back] = cid
            if sum(1 for d in path
                   if edge_of(d, s.inv[d]) in s.twisted) % 2:
                ov.twisted.add(edge_of(out, back))
    for vk in shared:
        cyc = [d for d in s.vertex_cycle(vk) if d in ov.inv]
        if len(cyc) != 4:
            raise ValueError("curve crossing is not 4-valent")
        for i, d in enumerate(cyc):
            ov.rot[d] = cyc[(i + 1) % 4]
    for orbit in ov.cover_faces():
        if len(orbit) != 2:
            continue
        (d1, s1), (d2, s2) = orbit
        if owner_of[d1] == owner_of[d2]:
            continue
        if owner_of[d1] == b:
            (d1, s1), (d2, s2) = (d2, s2), (d1, s1)
        if s1 == -1:
            continue  # the paired orbit carries the a-dart with sign +1
        v = s.vertex_key(d1)
        w = s.vertex_key(d2)
        if v == w:
            continue
        return _Bigon(v, w, paths[d1], paths[d2],
                      RIGHT if s2 == 1 else LEFT)
    return None


def _other_curve_dart(dec: DecoratedSurface, d: int) -> int:
    """The second dart of d's own curve at d's vertex."""
    own = dec.owner_of_dart(d)
    cand = [x for x in dec.surface.vertex_cycle(d)
            if x != d and dec.owner_of_dart(x) == own]
    if len(cand) != 1:
        raise ValueError("vertex is not a plain transversal crossing")
    return cand[0]


def _dissolve_vertex(dec: DecoratedSurface, some_dart: int) -> None:
    """Merge the two edges at a 2-valent vertex (same owner required).
    Lone circles (a loop at its only vertex) are left alone."""
    s = dec.surface
    cyc = s.vertex_cycle(some_dart)
    if len(cyc) != 2:
        return
    d1, d2 = cyc
    if s.inv[d1] == d2:
        return
    p, q = s.inv[d1], s.inv[d2]
    e1, e2 = edge_of(d1, p), edge_of(d2, q)
    twist = (e1 in s.twisted) != (e2 in s.twisted)
    owner = dec.owner[e1]
    if dec.owner[e2] != owner:
        raise ValueError("cannot dissolve: edge owners differ")
    s.twisted.discard(e1)
    s.twisted.discard(e2)
    del dec.owner[e1]
    del dec.owner[e2]
    del s.rot[d1], s.rot[d2], s.inv[d1], s.inv[d2]
    dec.owner[s.set_edge(p, q, twist=twist)] = owner


def sweep_bigon(dec: DecoratedSurface, a: str, b: str, big: _Bigon) -> None:
    """Isotope a's bigon arc across to the far side of b's arc."""
    s = dec.surface
    pa = big.a_path
    v_dart = pa[0]
    w_dart = s.inv[pa[-1]]
    ext_v = _other_curve_dart(dec, v_dart)
    ext_w = _other_curve_dart(dec, w_dart)
    ext_v_far, ext_w_far = s.inv[ext_v], s.inv[ext_w]
    ext_v_twist = edge_of(ext_v, ext_v_far) in s.twisted
    ext_w_twist = edge_of(ext_w, ext_w_far) in s.twisted
    b_v = next(d for d in s.vertex_cycle(v_dart)
               if dec.owner_of_dart(d) == b)
    b_w = next(d for d in s.vertex_cycle(w_dart)
               if dec.owner_of_dart(d) == b)

    # remember pass-through transversals at the arc's interior vertices
    keeps = []
    for d in pa[:-1]:
        arrive = s.inv[d]
        keeps.append([x for x in s.vertex_cycle(arrive)
                      if dec.owner_of_dart(x) != a])

    doomed = set(pa) | {s.inv[d] for d in pa} | {ext_v, ext_w}
    for e in [edge_of(d, s.inv[d]) for d in pa] + \
             [edge_of(ext_v, ext_v_far), edge_of(ext_w, ext_w_far)]:
        s.twisted.discard(e)
        dec.owner.pop(e, None)
    for d in doomed:
        s.remove_dart(d)
    for d in doomed:
        s.inv.pop(d, None)

    # dissolve freed interior crossings
    for keep in keeps:
        if len(keep) == 2:
            _dissolve_vertex(dec, keep[0])

    # new a-arc along the far side of the b-arc (w -> v)
    lane = _lay_parallel(dec, big.b_path, big.b_far_side, a, closed=False)
    if lane.crossings == 0:
        dec.owner[s.set_edge(ext_w_far, ext_v_far,
                             twist=ext_v_twist != ext_w_twist)] = a
    else:
        dec.owner[s.set_edge(ext_w_far, lane.start,
                             twist=ext_w_twist)] = a
        dec.owner[s.set_edge(lane.end, ext_v_far,
                             twist=ext_v_twist)] = a

    # the corners are plain b-vertices now
    _dissolve_vertex(dec, b_v)
    _dissolve_vertex(dec, b_w)


def reduce_bigons(dec: DecoratedSurface, a: str, b: str) -> DecoratedSurface:
    """Remove all bigons between two curves; each sweep removes exactly
    two intersection points and leaves every other count unchanged."""
    out = dec.copy()
    while True:
        big = find_bigon(out, a, b)
        if big is None:
            return out
        sweep_bigon(out, a, b, big)


def intersection_count(dec: DecoratedSurface, a: str, b: str) -> int:
    """Geometric intersection number of the drawn representatives:
    shared vertices remaining after bigon reduction."""
    if a == b:
        raise ValueError("intersection_count needs two distinct curves")
    reduced = reduce_bigons(dec, a, b)
    return len(reduced.shared_vertices(a, b))


# -- stabilization ----------------------------------------------------------------


def add_stabilization_tile(dec: DecoratedSurface, names: dict[str, str],
                           families: dict[str, str]) -> DecoratedSurface:
    """Connect-sum a torus carrying two parallel meridians and one
    longitude, hung off a canonical corner by a frame cord.

    ``names``/``families`` give ids and families for the keys
    "meridian_a", "meridian_b", "longitude".  The meridians form the new
    parallel pair; the longitude crosses each once.
    """
    out = dec.copy()
    s = out.surface
    if not s.rot:
        raise ValueError("stabilizing an empty surface is not supported")
    anchor = min(s.rot)
    base = s.fresh_dart()
    (ma1, ma2, l1a, l1b, mb1, mb2, l2a, l2b,
     u1, u2, cord_t, cord_a) = range(base, base + 12)
    s.add_vertex([ma1, l1a, ma2, l1b])       # meridian_a x longitude
    s.add_vertex([mb1, l2a, mb2, l2b])       # meridian_b x longitude
    s.add_vertex([u1, cord_t, u2])           # frame junction on the longitude
    ma, mb, lg = (names["meridian_a"], names["meridian_b"],
                  names["longitude"])
    out.owner[s.set_edge(ma1, ma2)] = ma
    out.owner[s.set_edge(mb1, mb2)] = mb
    out.owner[s.set_edge(l1a, l2b)] = lg
    out.owner[s.set_edge(l2a, u1)] = lg
    out.owner[s.set_edge(u2, l1b)] = lg
    for key in ("meridian_a", "meridian_b", "longitude"):
        out.curves[names[key]] = Curve(names[key], families[key])
        out.provenance[names[key]] = {"kind": "stabilization", "role": key}
    s.insert_dart_after(anchor, cord_a)
    out.owner[s.set_edge(cord_t, cord_a)] = FRAME
    return out
