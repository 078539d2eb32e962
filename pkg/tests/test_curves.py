import pytest

from kirbytris.curves import Curve, DecoratedSurface, FRAME
from kirbytris.surface import CombSurface


def square_torus(a_owner="alpha1", b_owner="beta1", twist_a=False):
    # one vertex, loops a and b crossing once; a twisted gives the Klein bottle
    s = CombSurface()
    s.add_vertex([0, 1, 2, 3])
    ea = s.set_edge(0, 2, twist=twist_a)
    eb = s.set_edge(1, 3)
    d = DecoratedSurface(s)
    fam = {"alpha1": "alpha", "beta1": "beta", "core": "gamma", "merid": "alpha"}
    for cid in (a_owner, b_owner):
        if cid != FRAME:
            d.curves[cid] = Curve(cid, fam.get(cid, "gamma"))
    d.owner[ea] = a_owner
    d.owner[eb] = b_owner
    return d


def two_meridian_torus():
    # two disjoint meridian loops joined by a frame longitude cut in two arcs
    s = CombSurface()
    s.add_vertex([0, 1, 2, 3])    # v1: m1 crossing the frame circle
    s.add_vertex([4, 5, 6, 7])    # v2: m2 crossing the frame circle
    em1 = s.set_edge(0, 2)
    em2 = s.set_edge(4, 6)
    ef1 = s.set_edge(1, 7)
    ef2 = s.set_edge(5, 3)
    d = DecoratedSurface(s)
    d.curves["m1"] = Curve("m1", "alpha")
    d.curves["m2"] = Curve("m2", "alpha")
    d.owner[em1] = "m1"
    d.owner[em2] = "m2"
    d.owner[ef1] = FRAME
    d.owner[ef2] = FRAME
    return d


def torus_with_contractible():
    # square torus plus a small trivial circle tied in with a frame cord
    d = square_torus(FRAME, FRAME)
    s = d.surface
    s.insert_dart_after(3, 4)          # cord end at the torus vertex
    s.add_vertex([5, 6, 7])            # circle vertex with cord slot
    ec = s.set_edge(5, 7)              # the contractible circle
    ek = s.set_edge(4, 6)              # the cord
    d.curves["triv"] = Curve("triv", "alpha")
    d.owner[ec] = "triv"
    d.owner[ek] = FRAME
    return d


def genus2_two_meridians():
    # two one-vertex torus lobes joined by a frame bridge
    s = CombSurface()
    s.add_vertex([0, 1, 2, 3, 4])
    s.add_vertex([5, 6, 7, 8, 9])
    em1 = s.set_edge(0, 2)
    ef1 = s.set_edge(1, 3)
    em2 = s.set_edge(5, 7)
    ef2 = s.set_edge(6, 8)
    ebr = s.set_edge(4, 9)
    d = DecoratedSurface(s)
    d.curves["m1"] = Curve("m1", "alpha")
    d.curves["m2"] = Curve("m2", "alpha")
    d.owner[em1] = "m1"
    d.owner[em2] = "m2"
    for e in (ef1, ef2, ebr):
        d.owner[e] = FRAME
    return d


def test_square_torus_valid():
    d = square_torus()
    d.validate()
    assert d.surface.genus_orientability() == (1, True)
    assert d.two_sided("alpha1") and d.two_sided("beta1")
    assert d.shared_vertices("alpha1", "beta1") == [0]


def test_torus_cut_meridian():
    d = square_torus("merid", FRAME)
    assert d.cut_along("alpha") == [(0, 2, True)]
    assert d.is_cut_system("alpha")


def test_torus_cut_contractible():
    d = torus_with_contractible()
    d.validate()
    assert d.surface.genus_orientability() == (1, True)
    pieces = d.cut_along("alpha")
    assert len(pieces) == 2
    assert sorted(pieces) == [(-1, 1, True), (1, 1, True)]
    assert not d.is_cut_system("alpha")


def test_two_meridians_not_cut_system():
    d = two_meridian_torus()
    d.validate()
    assert d.surface.genus_orientability() == (1, True)
    assert not d.is_cut_system("alpha")
    pieces = d.cut_along("alpha")
    assert len(pieces) == 2


def test_genus2_cut_system():
    d = genus2_two_meridians()
    d.validate()
    assert d.surface.genus_orientability() == (2, True)
    assert d.cut_along("alpha") == [(-2, 4, True)]
    assert d.is_cut_system("alpha")


def test_klein_sides():
    d = square_torus("core", "merid", twist_a=True)
    d.validate()
    assert d.surface.genus_orientability() == (1, False)
    assert not d.two_sided("core")      # Moebius core
    assert d.two_sided("merid")


def test_klein_cut_meridian():
    d = square_torus(FRAME, "merid", twist_a=True)
    assert d.cut_along("alpha") == [(0, 2, True)]
    assert d.is_cut_system("alpha")


def test_cut_one_sided_rejected():
    d = square_torus("core", FRAME, twist_a=True)
    with pytest.raises(ValueError):
        d.cut_along("gamma")


def test_algebraic_torus():
    d = square_torus()
    m = d.algebraic_intersection_matrix("alpha", "beta")
    assert m in ([[1]], [[-1]])
    m2 = d.algebraic_intersection_matrix("alpha", "beta", mod2=True)
    assert m2 == [[1]]
    # antisymmetry of the sign convention
    mt = d.algebraic_intersection_matrix("beta", "alpha")
    assert mt[0][0] == -m[0][0]


def test_algebraic_nonorientable_rejected():
    d = square_torus("core", "merid", twist_a=True)
    with pytest.raises(ValueError):
        d.algebraic_intersection_matrix("gamma", "alpha")
    assert d.algebraic_intersection_matrix("gamma", "alpha", mod2=True) == [[1]]


def test_cut_preserves_chi():
    for make in (lambda: square_torus("merid", FRAME),
                 two_meridian_torus, genus2_two_meridians):
        d = make()
        chi = d.surface.euler_characteristic()
        pieces = d.cut_along("alpha")
        assert sum(p[0] for p in pieces) == chi
