"""Integer lattices and finite abelian groups, exactly.

Everything downstream (ideal carriers, module kernels, quotient
presentations) reduces to row-style Hermite forms and a small Smith-style
diagonalization that tracks column transforms. Matrices are lists/tuples
of rows; all arithmetic is arbitrary-precision int.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Callable, Iterator, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _transpose(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    return [[row[j] for row in rows] for j in range(ncols)]


def hnf_rows(rows: Sequence[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Canonical row Hermite form of the lattice spanned by ``rows``.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    Zero rows are dropped; the result is sorted by pivot column.
    """
    work = [list(r) for r in rows if any(r)]
    basis: list[list[int]] = []   # kept in pivot-column order
    pivots: list[int] = []

    def insert(vec: list[int]) -> None:
        while True:
            j = next((c for c, v in enumerate(vec) if v), None)
            if j is None:
                return
            if j in pivots:
                i = pivots.index(j)
                row = basis[i]
                a, b = row[j], vec[j]
                if b % a == 0:
                    q = b // a
                    for c in range(j, ncols):
                        vec[c] -= q * row[c]
                else:
                    x, y, g = xgcd(a, b)
                    ag, bg = a // g, b // g
                    for c in range(j, ncols):
                        rc, vc = row[c], vec[c]
                        row[c] = x * rc + y * vc
                        vec[c] = -bg * rc + ag * vc
            else:
                if vec[j] < 0:
                    vec = [-v for v in vec]
                pos = sum(1 for p in pivots if p < j)
                basis.insert(pos, vec)
                pivots.insert(pos, j)
                return

    for r in work:
        insert(r)

    # reduce entries above each pivot
    for i in range(len(basis) - 1, -1, -1):
        p = pivots[i]
        d = basis[i][p]
        for k in range(i):
            q = basis[k][p] // d
            if q:
                for c in range(p, ncols):
                    basis[k][c] -= q * basis[i][c]
    return tuple(tuple(r) for r in basis)


def reduce_by_hnf(
    basis: Sequence[Sequence[int]], vec: Sequence[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reduce ``vec`` by an HNF basis; return (remainder, coefficients)."""
    v = list(vec)
    coeffs = [0] * len(basis)
    for i, row in enumerate(basis):
        j = next(c for c, x in enumerate(row) if x)
        q = v[j] // row[j]
        if q:
            coeffs[i] = q
            for c in range(j, len(v)):
                v[c] -= q * row[c]
    return tuple(v), tuple(coeffs)


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def snf_with_colops(
    rows: Sequence[Sequence[int]], ncols: int
) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Diagonalize by unimodular row and column operations.

    Returns (diag, V, Vinv) where U * A * V is diagonal with the given
    diagonal (padded conceptually with zeros), V collects the column
    operations and Vinv is its exact inverse. The row transform U is not
    needed by any caller and is not tracked. No divisibility chain is
    enforced; diagonal entries are nonnegative.
    """
    A = [list(r) for r in rows]
    m, n = len(A), ncols
    V = _identity(n)
    Vinv = _identity(n)

    def col_swap(i: int, j: int) -> None:
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_addmul(dst: int, src: int, q: int) -> None:
        # column dst += q * column src; inverse acts on Vinv rows
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        for c in range(n):
            Vinv[src][c] -= q * Vinv[dst][c]

    def col_negate(i: int) -> None:
        for row in A:
            row[i] = -row[i]
        for row in V:
            row[i] = -row[i]
        Vinv[i] = [-v for v in Vinv[i]]

    def col_gcd_combine(i: int, j: int, r: int) -> None:
        # make A[r][i] = gcd, A[r][j] = 0 via a 2x2 unimodular block
        a, b = A[r][i], A[r][j]
        x, y, g = xgcd(a, b)
        ag, bg = a // g, b // g
        for row in A:
            u, v = row[i], row[j]
            row[i] = x * u + y * v
            row[j] = -bg * u + ag * v
        for row in V:
            u, v = row[i], row[j]
            row[i] = x * u + y * v
            row[j] = -bg * u + ag * v
        for c in range(n):
            u, v = Vinv[i][c], Vinv[j][c]
            Vinv[i][c] = ag * u + bg * v
            Vinv[j][c] = -y * u + x * v

    def row_addmul(dst: int, src: int, q: int) -> None:
        for c in range(n):
            A[dst][c] += q * A[src][c]

    def row_gcd_combine(i: int, j: int, c: int) -> None:
        a, b = A[i][c], A[j][c]
        x, y, g = xgcd(a, b)
        ag, bg = a // g, b // g
        for col in range(n):
            u, v = A[i][col], A[j][col]
            A[i][col] = x * u + y * v
            A[j][col] = -bg * u + ag * v

    rank = min(m, n)
    for k in range(rank):
        # find a nonzero pivot in the trailing block
        piv = next(
            ((i, j) for i in range(k, m) for j in range(k, n) if A[i][j]), None
        )
        if piv is None:
            rank = k
            break
        if piv[0] != k:
            A[k], A[piv[0]] = A[piv[0]], A[k]
        if piv[1] != k:
            col_swap(k, piv[1])
        while True:
            for i in range(k + 1, m):
                if A[i][k]:
                    if A[i][k] % A[k][k] == 0:
                        row_addmul(i, k, -(A[i][k] // A[k][k]))
                    else:
                        row_gcd_combine(k, i, k)
            if all(A[k][j] == 0 for j in range(k + 1, n)):
                break
            for j in range(k + 1, n):
                if A[k][j]:
                    if A[k][j] % A[k][k] == 0:
                        col_addmul(j, k, -(A[k][j] // A[k][k]))
                    else:
                        col_gcd_combine(k, j, k)
            if all(A[i][k] == 0 for i in range(k + 1, m)):
                break
        if A[k][k] < 0:
            col_negate(k)

    diag = [A[i][i] for i in range(rank)]
    return diag, V, Vinv


def right_kernel_cols(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of the full integer kernel {c : A @ c == 0}, as column vectors."""
    diag, V, _ = snf_with_colops(rows, ncols)
    out = []
    for j in range(ncols):
        if j >= len(diag) or diag[j] == 0:
            out.append(tuple(V[i][j] for i in range(ncols)))
    return out


def left_kernel_rows(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis rows of {x : x @ A == 0} for A given by ``rows``."""
    return right_kernel_cols(_transpose(rows, ncols), len(rows))


def _mat_mul_vec(vec: Sequence[int], rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    out = [0] * ncols
    for coef, row in zip(vec, rows):
        if coef:
            for c in range(ncols):
                out[c] += coef * row[c]
    return out


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of Z/d1 x ... x Z/dk, stored as the canonical HNF lift lattice."""

    orders: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        det = prod(r[i] for i, r in enumerate(self.rows))
        return prod(self.orders) // det

    def contains(self, vec: Sequence[int]) -> bool:
        rem, _ = reduce_by_hnf(self.rows, vec)
        return not any(rem)

    def generators(self) -> list[tuple[int, ...]]:
        """Lattice basis rows reduced into the ambient group (may include 0)."""
        return [
            tuple(v % d for v, d in zip(row, self.orders)) for row in self.rows
        ]

    def elements(self, limit: int | None = None) -> list[tuple[int, ...]]:
        """All elements, by additive closure. ``limit`` guards the size."""
        if limit is not None and self.size > limit:
            raise ValueError(f"subgroup of size {self.size} exceeds limit {limit}")
        gens = [g for g in self.generators() if any(g)]
        zero = tuple(0 for _ in self.orders)
        seen = {zero}
        queue = [zero]
        while queue:
            x = queue.pop()
            for g in gens:
                y = tuple((a + b) % d for a, b, d in zip(x, g, self.orders))
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return all(other.contains(g) for g in self.generators())


def subgroup(orders: Sequence[int], gens: Sequence[Sequence[int]]) -> Subgroup:
    """Subgroup of the ambient group generated by ``gens``."""
    orders = tuple(orders)
    k = len(orders)
    relation_rows = [
        [orders[i] if j == i else 0 for j in range(k)] for i in range(k)
    ]
    rows = hnf_rows(list(gens) + relation_rows, k)
    return Subgroup(orders, rows)


def subgroup_sum(a: Subgroup, b: Subgroup) -> Subgroup:
    assert a.orders == b.orders
    return subgroup(a.orders, list(a.rows) + list(b.rows))


@dataclass(frozen=True)
class GroupPresentation:
    """A finite abelian group re-presented on its own cyclic basis.

    ``gens[i]`` lives in the ambient coordinates and has order
    ``orders[i]``; ``to_coords``/``from_coords`` convert between ambient
    vectors (members only) and the new coordinates.
    """

    orders: tuple[int, ...]
    gens: tuple[tuple[int, ...], ...]
    to_coords: Callable[[Sequence[int]], tuple[int, ...]]
    from_coords: Callable[[Sequence[int]], tuple[int, ...]]


def subgroup_presentation(sub: Subgroup) -> GroupPresentation:
    """Cyclic decomposition of ``sub`` with explicit generator vectors."""
    ambient = sub.orders
    k = len(ambient)
    B = sub.rows
    relation_rows = [
        [ambient[i] if j == i else 0 for j in range(k)] for i in range(k)
    ]
    stacked = list(B) + relation_rows
    # relations among the rows of B inside the ambient group
    null = left_kernel_rows(stacked, k)
    K = [row[: len(B)] for row in null]
    diag, V, Vinv = snf_with_colops(K, len(B))
    assert len(diag) == len(B) and all(d > 0 for d in diag), "relation lattice not full rank"

    kept = [i for i, d in enumerate(diag) if d > 1]
    orders = tuple(diag[i] for i in kept)
    gens = []
    for i in kept:
        vec = _mat_mul_vec(Vinv[i], B, k)
        gens.append(tuple(v % d for v, d in zip(vec, ambient)))

    def to_coords(vec: Sequence[int]) -> tuple[int, ...]:
        rem, coeffs = reduce_by_hnf(B, vec)
        if any(rem):
            raise ValueError("vector is not a member of the subgroup")
        full = [
            sum(coeffs[r] * V[r][i] for r in range(len(B))) % diag[i]
            for i in range(len(diag))
        ]
        return tuple(full[i] for i in kept)

    def from_coords(coords: Sequence[int]) -> tuple[int, ...]:
        acc = [0] * k
        for c, g in zip(coords, gens):
            if c:
                for j in range(k):
                    acc[j] += c * g[j]
        return tuple(a % d for a, d in zip(acc, ambient))

    return GroupPresentation(orders, tuple(gens), to_coords, from_coords)


def quotient_presentation(
    ambient_orders: Sequence[int], sub: Subgroup
) -> GroupPresentation:
    """Presentation of (ambient group)/sub with projection and lift maps.

    ``to_coords`` is the projection (defined on every ambient vector),
    ``from_coords`` is a set-theoretic section.
    """
    ambient = tuple(ambient_orders)
    k = len(ambient)
    diag, V, Vinv = snf_with_colops(sub.rows, k)
    assert len(diag) == k and all(d > 0 for d in diag)

    kept = [i for i, d in enumerate(diag) if d > 1]
    orders = tuple(diag[i] for i in kept)

    def to_coords(vec: Sequence[int]) -> tuple[int, ...]:
        full = [
            sum(vec[r] * V[r][i] for r in range(k)) % diag[i]
            for i in range(k)
        ]
        return tuple(full[i] for i in kept)

    def from_coords(coords: Sequence[int]) -> tuple[int, ...]:
        acc = [0] * k
        for c, i in zip(coords, kept):
            if c:
                for j in range(k):
                    acc[j] += c * Vinv[i][j]
        return tuple(a % d for a, d in zip(acc, ambient))

    gens = tuple(from_coords(tuple(1 if j == i else 0 for j in range(len(kept))))
                 for i in range(len(kept)))
    return GroupPresentation(orders, gens, to_coords, from_coords)


def iterate_vectors(orders: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All coefficient vectors of the ambient group, lexicographically."""
    from itertools import product

    yield from product(*(range(d) for d in orders))
