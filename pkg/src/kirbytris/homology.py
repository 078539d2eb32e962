"""
Exact integer linear algebra: Smith normal form and friends.

Everything runs on plain Python integers, so intermediate entry growth
is harmless.  Matrices are lists of row lists.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in invariant-factor form."""

    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"torsion {self.torsion} violates d_i | d_i+1")
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be >= 2")

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def zeros(m: int, n: int) -> list[list[int]]:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> list[list[int]]:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = 1
    return out


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    oi[j] += x * bt[j]
    return out


def transpose(a: list[list[int]]) -> list[list[int]]:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def smith_normal_form(mat: list[list[int]]
                      ) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (D, U, V) with U * mat * V = D in Smith normal form.

    D is diagonal with nonnegative entries d_1 | d_2 | ..., and U, V are
    unimodular.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [list(row) for row in mat]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None
                                     or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                add_row(i, t, -q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                add_col(j, t, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # divisibility: fold in any entry the pivot does not divide
        culprit = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t] != 0:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(t, culprit, 1)
            continue
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    return a, u, v


def invariant_factors(mat: list[list[int]]) -> tuple[tuple[int, ...], int]:
    """All nonzero diagonal SNF entries (including 1s) and the rank."""
    d, _, _ = smith_normal_form(mat)
    diag = [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
    nz = tuple(x for x in diag if x != 0)
    return nz, len(nz)


def cokernel(mat: list[list[int]], ambient: int | None = None) -> AbelianGroup:
    """Z^rows / column-span(mat) as an AbelianGroup.

    ``ambient`` overrides the row count for empty matrices.
    """
    m = len(mat)
    if ambient is None:
        ambient = m
    if m == 0 or not mat[0]:
        return AbelianGroup(ambient)
    factors, rank = invariant_factors(mat)
    return AbelianGroup(ambient - rank, tuple(f for f in factors if f > 1))


def kernel_basis(mat: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel lattice {x : mat . x = 0} as columns."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [col for col in identity(n)]
    d, _, v = smith_normal_form(mat)
    rank = sum(1 for i in range(min(m, n)) if d[i][i] != 0)
    return [[v[i][j] for i in range(n)] for j in range(rank, n)]


def solve_in_lattice(basis: list[list[int]], target: list[int]
                     ) -> list[int] | None:
    """Integer coordinates of target in the lattice spanned by the basis
    columns, or None.  basis: list of columns (each a length-n vector)."""
    if not basis:
        return [] if all(x == 0 for x in target) else None
    n = len(basis[0])
    mat = [[basis[j][i] for j in range(len(basis))] for i in range(n)]
    d, u, v = smith_normal_form(mat)
    ub = [sum(u[i][k] * target[k] for k in range(n)) for i in range(n)]
    k = len(basis)
    y = [0] * k
    for i in range(n):
        di = d[i][i] if i < k else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            if i < k:
                y[i] = ub[i] // di
    return [sum(v[i][j] * y[j] for j in range(k)) for i in range(k)]


def mod2_rank(mat: list[list[int]]) -> int:
    rows = [sum((x & 1) << j for j, x in enumerate(row)) for row in mat]
    rank = 0
    for bit in range(max((len(r) for r in mat), default=0)):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i] >> bit & 1:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] >> bit & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank
