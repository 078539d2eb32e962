import pytest

from kirbytris.surface import CombSurface, edge_of


def loop_sphere():
    # one vertex, one untwisted loop: a circle on the sphere
    s = CombSurface()
    s.add_vertex([0, 1])
    s.set_edge(0, 1)
    return s


def one_vertex_torus():
    # rotation (a, b, a*, b*), inv a<->a*, b<->b*
    s = CombSurface()
    s.add_vertex([0, 1, 2, 3])
    s.set_edge(0, 2)
    s.set_edge(1, 3)
    return s


def one_vertex_klein():
    # same as the torus but the a-edge is twisted
    s = one_vertex_torus()
    s.twisted.add(edge_of(0, 2))
    return s


def projective_plane():
    s = CombSurface()
    s.add_vertex([0, 1])
    s.set_edge(0, 1, twist=True)
    return s


def tetrahedron():
    # K4 with planar rotations: outer triangle 0,1,2 CCW, vertex 3 inside
    order = {0: (1, 3, 2), 1: (2, 3, 0), 2: (0, 3, 1), 3: (2, 0, 1)}
    s = CombSurface()
    names = {}
    n = 0
    for i, nbrs in order.items():
        darts = []
        for j in nbrs:
            names[(i, j)] = n
            darts.append(n)
            n += 1
        s.add_vertex(darts)
    for i in range(4):
        for j in range(i + 1, 4):
            s.set_edge(names[(i, j)], names[(j, i)])
    return s


def test_sphere_loop_counts():
    s = loop_sphere()
    s.check()
    assert s.counts() == (1, 1, 2)
    assert s.euler_characteristic() == 2
    assert s.genus_orientability() == (0, True)


def test_tetrahedron():
    s = tetrahedron()
    s.check()
    assert s.counts() == (4, 6, 4)
    assert s.euler_characteristic() == 2
    assert s.genus_orientability() == (0, True)


def test_torus():
    s = one_vertex_torus()
    s.check()
    assert s.counts() == (1, 2, 1)
    assert s.euler_characteristic() == 0
    assert s.genus_orientability() == (1, True)


def test_klein_bottle():
    s = one_vertex_klein()
    s.check()
    assert s.euler_characteristic() == 0
    assert s.genus_orientability() == (1, False)


def test_projective_plane():
    s = projective_plane()
    s.check()
    assert s.euler_characteristic() == 1
    assert not s.is_orientable()
    with pytest.raises(ValueError):
        s.genus_orientability()


def test_gauge_flip_preserves_surface():
    for make in (one_vertex_torus, one_vertex_klein, tetrahedron):
        s = make()
        chi, orient = s.euler_characteristic(), s.is_orientable()
        s.flip_vertex(s.darts()[0])
        s.check()
        assert s.euler_characteristic() == chi
        assert s.is_orientable() == orient


def test_disconnected_genus_rejected():
    s = loop_sphere()
    s.add_vertex([10, 11])
    s.set_edge(10, 11)
    with pytest.raises(ValueError):
        s.genus_orientability()
