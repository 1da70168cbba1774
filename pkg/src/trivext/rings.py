"""Finite commutative unital rings presented by structure constants.

A ring is an additive group Z/d1 x ... x Z/dk plus a table of pairwise
basis products. One presentation serves quotient constructions, products
and ring extensions uniformly; element sets are only materialized on
demand. Ring equality is identity of construction, never isomorphism.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from math import prod
from typing import Iterator, Sequence

from .lattice import iterate_vectors

DEFAULT_BUDGET = 4096
_BUDGET_ENV = "TRIVEXT_BUDGET"


class BudgetExceeded(RuntimeError):
    """An exhaustive operation would enumerate more elements than allowed."""


def enumeration_budget() -> int:
    raw = os.environ.get(_BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{_BUDGET_ENV} must be an integer, got {raw!r}")


def check_budget(size: int, what: str, limit: int | None = None) -> None:
    cap = enumeration_budget() if limit is None else limit
    if size > cap:
        raise BudgetExceeded(f"{what}: {size} elements exceeds budget {cap}")


class FiniteRing:
    """Finite commutative ring with identity, on an explicit additive basis.

    ``orders`` are the cyclic orders of the additive basis, ``table[i][j]``
    is the coefficient vector of (basis_i * basis_j), ``one`` the vector of
    the identity. Coefficient vectors are always reduced componentwise.
    Instances are immutable and safe to share between threads; caches are
    filled lazily but idempotently.
    """

    __slots__ = ("orders", "table", "one", "label", "components", "_cache")

    def __init__(
        self,
        orders: Sequence[int],
        table: Sequence[Sequence[Sequence[int]]],
        one: Sequence[int],
        label: str,
        components: tuple["FiniteRing", ...] | None = None,
    ):
        object.__setattr__(self, "orders", tuple(orders))
        object.__setattr__(
            self,
            "table",
            tuple(tuple(tuple(v % d for v, d in zip(vec, orders)) for vec in row)
                  for row in table),
        )
        object.__setattr__(self, "one", tuple(v % d for v, d in zip(one, orders)))
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *args):  # pragma: no cover
        raise AttributeError("FiniteRing is immutable")

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, size={self.size})"

    # rings compare by identity; isomorphism testing is out of scope
    __hash__ = object.__hash__

    @property
    def size(self) -> int:
        return prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def zero_vec(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.orders)

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(v % d for v, d in zip(vec, self.orders))

    def add_vec(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(u, v, self.orders))

    def neg_vec(self, u: Sequence[int]) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(u, self.orders))

    def sub_vec(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        return tuple((a - b) % d for a, b, d in zip(u, v, self.orders))

    def mul_vec(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        acc = [0] * len(self.orders)
        table = self.table
        for i, a in enumerate(u):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                c = a * b
                base = row[j]
                for t in range(len(acc)):
                    acc[t] += c * base[t]
        return tuple(x % d for x, d in zip(acc, self.orders))

    def scalar_vec(self, n: int, u: Sequence[int]) -> tuple[int, ...]:
        return tuple((n * a) % d for a, d in zip(u, self.orders))

    def basis_vec(self, i: int) -> tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def vectors(self) -> Iterator[tuple[int, ...]]:
        return iterate_vectors(self.orders)

    def element(self, coeffs: Sequence[int]) -> "RingElement":
        if len(coeffs) != self.rank:
            raise ValueError(
                f"expected {self.rank} coefficients for {self.label}, got {len(coeffs)}"
            )
        return RingElement(self, self.reduce(coeffs))

    def elements(self, limit: int | None = None) -> list["RingElement"]:
        check_budget(self.size, f"elements of {self.label}", limit)
        return [RingElement(self, v) for v in self.vectors()]

    def sample_vec(self, rng: random.Random) -> tuple[int, ...]:
        return tuple(rng.randrange(d) for d in self.orders)

    def is_unit_vec(self, u: Sequence[int]) -> bool:
        cache = self._cache.get("units")
        if cache is None:
            check_budget(self.size, f"unit search in {self.label}")
            cache = set()
            one = self.one
            for v in self.vectors():
                for w in self.vectors():
                    if self.mul_vec(v, w) == one:
                        cache.add(v)
                        break
            self._cache["units"] = cache
        return tuple(u) in cache

    def is_regular_vec(self, u: Sequence[int]) -> bool:
        # injective multiplication == no nonzero annihilating partner
        check_budget(self.size, f"regularity search in {self.label}")
        u = tuple(u)
        zero = self.zero_vec
        for v in self.vectors():
            if v != zero and self.mul_vec(u, v) == zero:
                return False
        return True


@dataclass(frozen=True)
class RingElement:
    ring: FiniteRing
    coeffs: tuple[int, ...]

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.ring, self.ring.add_vec(self.coeffs, other.coeffs))

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.ring, self.ring.sub_vec(self.coeffs, other.coeffs))

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, self.ring.neg_vec(self.coeffs))

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.ring, self.ring.mul_vec(self.coeffs, other.coeffs))

    def _check(self, other: "RingElement") -> None:
        if self.ring is not other.ring:
            raise ValueError(
                f"elements of different rings: {self.ring.label} vs {other.ring.label}"
            )

    def __repr__(self) -> str:
        return f"{self.coeffs}@{self.ring.label}"


def is_unit(x: RingElement) -> bool:
    return x.ring.is_unit_vec(x.coeffs)


def is_regular(x: RingElement) -> bool:
    return x.ring.is_regular_vec(x.coeffs)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def make_zmod(n: int) -> FiniteRing:
    """Z/nZ on the canonical single-generator presentation."""
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    return FiniteRing([n], [[[1]]], [1], f"Z/{n}")


def make_quotient_poly(p: int, f: Sequence[int]) -> FiniteRing:
    """F_p[x]/(f) for a monic f, on the basis 1, x, ..., x^(deg f - 1).

    Coefficients are given lowest degree first. Truncated local algebras
    F_p[x]/(x^t) and small fields both come from here.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    f = [c % p for c in f]
    deg = len(f) - 1
    if deg < 1:
        raise ValueError("polynomial must have degree >= 1")
    if f[-1] != 1:
        raise ValueError("polynomial must be monic (leading coefficient 1 mod p)")

    # powers of x modulo f, up to degree 2*(deg-1)
    powers = [[1 if i == k else 0 for i in range(deg)] for k in range(deg)]
    last = powers[-1]
    for _ in range(deg - 1):
        shifted = [0] + last[:-1]
        carry = last[-1]
        nxt = [(shifted[i] - carry * f[i]) % p for i in range(deg)]
        powers.append(nxt)
        last = nxt

    table = [
        [powers[i + j] for j in range(deg)]
        for i in range(deg)
    ]
    one = [1] + [0] * (deg - 1)
    terms = []
    for k in range(deg, -1, -1):
        c = f[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        elif k == 1:
            terms.append("x" if c == 1 else f"{c}x")
        else:
            terms.append(f"x^{k}" if c == 1 else f"{c}x^{k}")
    return FiniteRing([p] * deg, table, one, f"F{p}[x]/({'+'.join(terms)})")


def make_product(rings: Sequence[FiniteRing]) -> FiniteRing:
    """Componentwise product ring, carrying its component projections."""
    if not rings:
        raise ValueError("product of an empty family")
    if len(rings) == 1:
        return rings[0]
    orders: list[int] = []
    offsets: list[int] = []
    for ring in rings:
        offsets.append(len(orders))
        orders.extend(ring.orders)
    k = len(orders)

    def embed(vec: Sequence[int], which: int) -> list[int]:
        out = [0] * k
        off = offsets[which]
        for t, v in enumerate(vec):
            out[off + t] = v
        return out

    table = [[[0] * k for _ in range(k)] for _ in range(k)]
    for w, ring in enumerate(rings):
        off = offsets[w]
        for i in range(ring.rank):
            for j in range(ring.rank):
                table[off + i][off + j] = embed(ring.table[i][j], w)
    one = [0] * k
    for w, ring in enumerate(rings):
        for t, v in enumerate(ring.one):
            one[offsets[w] + t] = v
    label = " x ".join(r.label for r in rings)
    return FiniteRing(orders, table, one, label, components=tuple(rings))


def product_project(ring: FiniteRing, vec: Sequence[int], which: int) -> tuple[int, ...]:
    """Projection of a product-ring vector onto one component."""
    if ring.components is None:
        raise ValueError(f"{ring.label} was not built by make_product")
    off = 0
    for w, comp in enumerate(ring.components):
        if w == which:
            return tuple(vec[off:off + comp.rank])
        off += comp.rank
    raise IndexError(which)


def product_embed(ring: FiniteRing, vecs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Assemble a product-ring vector from component vectors."""
    if ring.components is None:
        raise ValueError(f"{ring.label} was not built by make_product")
    out: list[int] = []
    for comp, vec in zip(ring.components, vecs):
        out.extend(comp.reduce(vec))
    return tuple(out)


# --- axiom verification -----------------------------------------------------

def _index_tables(ring: FiniteRing):
    """Dense add/mul index tables, via numpy. Cached on the ring."""
    cached = ring._cache.get("index_tables")
    if cached is not None:
        return cached
    import numpy as np

    n = ring.size
    k = ring.rank
    orders = np.array(ring.orders, dtype=np.int64)
    strides = np.ones(k, dtype=np.int64)
    for i in range(k - 2, -1, -1):
        strides[i] = strides[i + 1] * ring.orders[i + 1]
    elems = np.array(list(ring.vectors()), dtype=np.int64).reshape(n, k)
    P = np.array(ring.table, dtype=np.int64)  # (k, k, k)
    prods = np.einsum("ai,bj,ijt->abt", elems, elems, P) % orders
    sums = (elems[:, None, :] + elems[None, :, :]) % orders
    mul_idx = (prods @ strides).astype(np.int64)
    add_idx = (sums @ strides).astype(np.int64)
    one_idx = int(np.dot(np.array(ring.one, dtype=np.int64), strides))
    ring._cache["index_tables"] = (mul_idx, add_idx, one_idx)
    return ring._cache["index_tables"]


def verify_ring_axioms(
    ring: FiniteRing,
    exhaustive_limit: int = 256,
    samples: int = 10_000,
    seed: int = 0,
) -> dict | None:
    """Check commutativity, associativity, identity and distributivity.

    Exhaustive over all element triples when |R| <= exhaustive_limit,
    otherwise over seeded random triples. Returns None on success or a
    witness dict naming the violated law.
    """
    if ring.size <= exhaustive_limit:
        import numpy as np

        mul, add, one_idx = _index_tables(ring)
        n = ring.size
        idx_to_vec = list(ring.vectors())

        def witness(law, i, j, t=None):
            w = {"law": law, "a": idx_to_vec[i], "b": idx_to_vec[j]}
            if t is not None:
                w["c"] = idx_to_vec[t]
            return w

        bad = np.argwhere(mul != mul.T)
        if len(bad):
            return witness("commutativity", int(bad[0][0]), int(bad[0][1]))
        if not np.array_equal(mul[one_idx], np.arange(n)):
            j = int(np.argwhere(mul[one_idx] != np.arange(n))[0][0])
            return witness("identity", one_idx, j)
        for i in range(n):
            lhs = mul[mul[i], :]
            rhs = mul[i, mul]
            if not np.array_equal(lhs, rhs):
                j, t = map(int, np.argwhere(lhs != rhs)[0])
                return witness("associativity", i, j, t)
            dl = mul[i, add]
            dr = add[mul[i][:, None], mul[i][None, :]]
            if not np.array_equal(dl, dr):
                j, t = map(int, np.argwhere(dl != dr)[0])
                return witness("distributivity", i, j, t)
        return None

    rng = random.Random(seed)
    for _ in range(samples):
        a = ring.sample_vec(rng)
        b = ring.sample_vec(rng)
        c = ring.sample_vec(rng)
        if ring.mul_vec(a, b) != ring.mul_vec(b, a):
            return {"law": "commutativity", "a": a, "b": b}
        if ring.mul_vec(ring.mul_vec(a, b), c) != ring.mul_vec(a, ring.mul_vec(b, c)):
            return {"law": "associativity", "a": a, "b": b, "c": c}
        if ring.mul_vec(a, ring.add_vec(b, c)) != ring.add_vec(
            ring.mul_vec(a, b), ring.mul_vec(a, c)
        ):
            return {"law": "distributivity", "a": a, "b": b, "c": c}
        if ring.mul_vec(ring.one, a) != a:
            return {"law": "identity", "a": a}
    return None
