import math
import random
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from kirbytris.homology import (
    AbelianGroup,
    cokernel,
    invariant_factors,
    kernel_basis,
    mat_mul,
    mod2_rank,
    smith_normal_form,
    solve_in_lattice,
)


def det(mat):
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        if mat[0][j]:
            minor = [row[:j] + row[j + 1:] for row in mat[1:]]
            total += (-1) ** j * mat[0][j] * det(minor)
    return total


def divisor_oracle(mat):
    """Invariant factors via gcds of k x k minors (independent oracle)."""
    m, n = len(mat), len(mat[0]) if mat else 0
    dks = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                sub = [[mat[i][j] for j in cols] for i in rows]
                g = math.gcd(g, det(sub))
        dks.append(g)
    factors = []
    for k in range(1, len(dks)):
        if dks[k] == 0:
            break
        factors.append(dks[k] // dks[k - 1])
    return tuple(factors)


def test_identity():
    assert invariant_factors([[1, 0], [0, 1]]) == ((1, 1), 2)


def test_zero():
    factors, rank = invariant_factors([[0] * 3 for _ in range(3)])
    assert factors == () and rank == 0


def test_diag_2_3():
    assert invariant_factors([[2, 0], [0, 3]]) == ((1, 6), 2)


def test_cokernels():
    assert cokernel([[0, 0], [0, 0]]) == AbelianGroup(2)
    assert cokernel([[1, 0], [0, 1]]) == AbelianGroup(0)
    assert cokernel([[2, 0], [0, 3]]) == AbelianGroup(0, (6,))
    assert cokernel([], ambient=3) == AbelianGroup(3)
    assert str(cokernel([[2]])) == "Z/2"


def test_transforms_multiply_out():
    rng = random.Random(7)
    for _ in range(200):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        mat = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        d, u, v = smith_normal_form(mat)
        assert mat_mul(mat_mul(u, mat), v) == d
        assert abs(det(u)) == 1 and abs(det(v)) == 1


def test_against_minor_gcd_oracle():
    rng = random.Random(13)
    for _ in range(1000):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        mat = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        factors, _ = invariant_factors(mat)
        assert factors == divisor_oracle(mat)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                min_size=3, max_size=3))
@settings(max_examples=200, deadline=None)
def test_invariance_under_permutation_and_sign(mat):
    base, _ = invariant_factors(mat)
    flipped = [[-x for x in row] for row in mat]
    assert invariant_factors(flipped)[0] == base
    rotated = mat[1:] + mat[:1]
    assert invariant_factors(rotated)[0] == base
    cols = [list(row[::-1]) for row in mat]
    assert invariant_factors(cols)[0] == base


def test_kernel_and_solve():
    rng = random.Random(99)
    for _ in range(300):
        m = rng.randint(1, 3)
        n = rng.randint(1, 4)
        mat = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        basis = kernel_basis(mat)
        for col in basis:
            assert all(sum(mat[i][j] * col[j] for j in range(n)) == 0
                       for i in range(m))
        if basis:
            coeffs = [rng.randint(-2, 2) for _ in basis]
            target = [sum(c * col[i] for c, col in zip(coeffs, basis))
                      for i in range(n)]
            sol = solve_in_lattice(basis, target)
            assert sol is not None
            rebuilt = [sum(s * col[i] for s, col in zip(sol, basis))
                       for i in range(n)]
            assert rebuilt == target


def test_mod2_rank():
    assert mod2_rank([[1, 0], [0, 1]]) == 2
    assert mod2_rank([[2, 4], [6, 8]]) == 0
    assert mod2_rank([[1, 1], [1, 1]]) == 1
    assert mod2_rank([]) == 0


def test_coker_transpose_symmetry():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 4)
        mat = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        a = cokernel(mat)
        b = cokernel([list(r) for r in zip(*mat)])
        assert a == b
