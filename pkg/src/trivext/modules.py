"""Finite modules over finite rings, maps between them, and the ring
extension A ∝ E that squares the module part to zero.

Submodule carriers are Hermite-form additive bases with membership by
reduction; full element sets are only materialized under budget, which is
what keeps free modules of rank up to 3 workable. The extension ring is a
genuine FiniteRing, so all ideal machinery applies to it unchanged.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import prod
from typing import Callable, Sequence

from . import ideals
from .lattice import (
    Subgroup,
    left_kernel_rows,
    quotient_presentation,
    subgroup as make_subgroup,
    subgroup_sum,
)
from .rings import FiniteRing, check_budget

Vec = tuple[int, ...]


class FiniteModule:
    """Module over a FiniteRing, as an additive group plus an action table.

    ``action[i][j]`` is the vector of (ring basis_i) . (module basis_j).
    """

    __slots__ = ("base_ring", "orders", "action", "label", "_cache")

    def __init__(
        self,
        base_ring: FiniteRing,
        orders: Sequence[int],
        action: Sequence[Sequence[Sequence[int]]],
        label: str,
    ):
        self.base_ring = base_ring
        self.orders = tuple(orders)
        self.action = tuple(
            tuple(tuple(v % d for v, d in zip(vec, orders)) for vec in row)
            for row in action
        )
        self.label = label
        self._cache: dict = {}
        self._verify_action()

    def _verify_action(self) -> None:
        ring = self.base_ring
        for i in range(ring.rank):
            for j in range(ring.rank):
                prod_basis = ring.table[i][j]
                for t in range(self.rank):
                    lhs = self.act(prod_basis, self.basis_vec(t))
                    rhs = self.act(
                        ring.basis_vec(i), self.act(ring.basis_vec(j), self.basis_vec(t))
                    )
                    if lhs != rhs:
                        raise AssertionError(
                            f"{self.label}: action not compatible at "
                            f"basis pair ({i},{j}) on module basis {t}"
                        )
        for t in range(self.rank):
            if self.act(ring.one, self.basis_vec(t)) != self.basis_vec(t):
                raise AssertionError(f"{self.label}: identity does not act as 1")

    def __repr__(self) -> str:
        return f"FiniteModule({self.label}, size={self.size})"

    @property
    def size(self) -> int:
        return prod(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def zero_vec(self) -> Vec:
        return tuple(0 for _ in self.orders)

    def basis_vec(self, i: int) -> Vec:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def reduce(self, vec: Sequence[int]) -> Vec:
        return tuple(v % d for v, d in zip(vec, self.orders))

    def add(self, u: Sequence[int], v: Sequence[int]) -> Vec:
        return tuple((a + b) % d for a, b, d in zip(u, v, self.orders))

    def neg(self, u: Sequence[int]) -> Vec:
        return tuple((-a) % d for a, d in zip(u, self.orders))

    def act(self, r: Sequence[int], m: Sequence[int]) -> Vec:
        acc = [0] * self.rank
        for i, a in enumerate(r):
            if not a:
                continue
            row = self.action[i]
            for j, b in enumerate(m):
                if not b:
                    continue
                c = a * b
                vec = row[j]
                for t in range(self.rank):
                    acc[t] += c * vec[t]
        return tuple(x % d for x, d in zip(acc, self.orders))

    def vectors(self):
        from .lattice import iterate_vectors

        return iterate_vectors(self.orders)

    def sample_vec(self, rng: random.Random) -> Vec:
        return tuple(rng.randrange(d) for d in self.orders)


def free_module(ring: FiniteRing, n: int) -> FiniteModule:
    """R^n with the diagonal action."""
    if n < 0:
        raise ValueError("rank must be nonnegative")
    orders = list(ring.orders) * n
    k = ring.rank
    action = []
    for i in range(k):
        row = []
        for block in range(n):
            for j in range(k):
                vec = [0] * (k * n)
                for t, v in enumerate(ring.table[i][j]):
                    vec[block * k + t] = v
                row.append(vec)
        action.append(row)
    return FiniteModule(ring, orders, action, f"{ring.label}^{n}")


def module_power(mod: FiniteModule, n: int) -> FiniteModule:
    """Direct sum of n copies of ``mod``."""
    orders = list(mod.orders) * n
    k = mod.rank
    action = []
    for i in range(mod.base_ring.rank):
        row = []
        for block in range(n):
            for j in range(k):
                vec = [0] * (k * n)
                for t, v in enumerate(mod.action[i][j]):
                    vec[block * k + t] = v
                row.append(vec)
        action.append(row)
    return FiniteModule(mod.base_ring, orders, action, f"({mod.label})^{n}")


def ring_as_module(ring: FiniteRing) -> FiniteModule:
    return free_module(ring, 1)


@dataclass(frozen=True)
class Submodule:
    """Submodule given by generators and a saturated additive carrier."""

    ambient: FiniteModule
    generators: tuple[Vec, ...]
    carrier: Subgroup

    @property
    def size(self) -> int:
        return self.carrier.size

    def contains(self, vec: Sequence[int]) -> bool:
        return self.carrier.contains(vec)

    def is_zero(self) -> bool:
        return self.size == 1

    def elements(self, limit: int | None = None) -> list[Vec]:
        return self.carrier.elements(limit)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.ambient is other.ambient and self.carrier == other.carrier

    def __hash__(self) -> int:
        return hash((id(self.ambient), self.carrier))


def submodule_generated(ambient: FiniteModule, gens: Sequence[Sequence[int]]) -> Submodule:
    """Smallest submodule containing ``gens``.

    The additive span of all ring-basis multiples of the generators is
    already stable under the action, so one Hermite pass suffices.
    """
    ring = ambient.base_ring
    gens = tuple(ambient.reduce(g) for g in gens)
    seeds = []
    for g in gens:
        for i in range(ring.rank):
            seeds.append(ambient.act(ring.basis_vec(i), g))
    return Submodule(ambient, gens, make_subgroup(ambient.orders, seeds))


def zero_submodule(ambient: FiniteModule) -> Submodule:
    return Submodule(ambient, (), make_subgroup(ambient.orders, []))


def full_submodule(ambient: FiniteModule) -> Submodule:
    gens = tuple(ambient.basis_vec(i) for i in range(ambient.rank))
    return Submodule(ambient, gens, make_subgroup(ambient.orders, list(gens)))


def submodule_sum(a: Submodule, b: Submodule) -> Submodule:
    assert a.ambient is b.ambient
    return Submodule(
        a.ambient, a.generators + b.generators, subgroup_sum(a.carrier, b.carrier)
    )


def assert_action_stable(sub: Submodule) -> None:
    ring = sub.ambient.base_ring
    for row in sub.carrier.rows:
        vec = sub.ambient.reduce(row)
        for i in range(ring.rank):
            if not sub.contains(sub.ambient.act(ring.basis_vec(i), vec)):
                raise AssertionError(
                    f"carrier of {sub.ambient.label} not stable under basis {i}"
                )


@dataclass(frozen=True)
class ModuleMap:
    """Additive map determined by images of the source basis; A-linearity
    is verified on all (ring basis x source basis) pairs at construction."""

    source: FiniteModule
    target: FiniteModule
    images: tuple[Vec, ...]

    def __post_init__(self):
        if self.source.base_ring is not self.target.base_ring:
            raise ValueError("module map between different base rings")
        if len(self.images) != self.source.rank:
            raise ValueError("one image per source basis vector required")
        ring = self.source.base_ring
        for i in range(ring.rank):
            r = ring.basis_vec(i)
            for j in range(self.source.rank):
                lhs = self.apply(self.source.act(r, self.source.basis_vec(j)))
                rhs = self.target.act(r, self.images[j])
                if lhs != rhs:
                    raise AssertionError(
                        f"map {self.source.label} -> {self.target.label} "
                        f"is not linear at ring basis {i}, source basis {j}"
                    )

    def apply(self, vec: Sequence[int]) -> Vec:
        acc = [0] * self.target.rank
        for coef, img in zip(vec, self.images):
            if coef:
                for t, v in enumerate(img):
                    acc[t] += coef * v
        return self.target.reduce(acc)


def map_on_generators(
    ring: FiniteRing, n: int, target: FiniteModule, gens: Sequence[Sequence[int]]
) -> ModuleMap:
    """The linear map from the rank-n free module sending the i-th free
    generator to gens[i]; additive basis vector (i, j) is ring-basis_j times
    generator i, so its image is the corresponding action value."""
    if len(gens) != n:
        raise ValueError("one target generator per free-module rank required")
    source = free_module(ring, n)
    images = []
    for i in range(n):
        g = target.reduce(gens[i])
        for j in range(ring.rank):
            images.append(target.act(ring.basis_vec(j), g))
    return ModuleMap(source, target, tuple(images))


def kernel(f: ModuleMap) -> Submodule:
    """Kernel as an abelian-group kernel; action stability is asserted
    afterwards, which doubles as a linearity re-check."""
    src, tgt = f.source, f.target
    stacked = [list(img) for img in f.images]
    for i, d in enumerate(tgt.orders):
        stacked.append([d if j == i else 0 for j in range(tgt.rank)])
    null_rows = left_kernel_rows(stacked, tgt.rank)
    gens = [row[: src.rank] for row in null_rows]
    sub = Submodule(
        src,
        tuple(src.reduce(g) for g in gens),
        make_subgroup(src.orders, gens),
    )
    assert_action_stable(sub)
    return sub


def image(f: ModuleMap) -> Submodule:
    return submodule_generated(f.target, list(f.images))


def quotient_module(mod: FiniteModule, sub: Submodule) -> FiniteModule:
    """M/N with the induced action."""
    if sub.ambient is not mod:
        raise ValueError("submodule does not sit inside the given module")
    assert_action_stable(sub)
    pres = quotient_presentation(mod.orders, sub.carrier)
    ring = mod.base_ring
    action = [
        [
            pres.to_coords(mod.act(ring.basis_vec(i), pres.from_coords(
                tuple(1 if t == j else 0 for t in range(len(pres.orders)))
            )))
            for j in range(len(pres.orders))
        ]
        for i in range(ring.rank)
    ]
    quotient = FiniteModule(ring, pres.orders, action, f"{mod.label}/N")
    quotient._cache["projection"] = pres.to_coords
    quotient._cache["lift"] = pres.from_coords
    return quotient


def quotient_maps(quotient: FiniteModule) -> tuple[Callable, Callable]:
    return quotient._cache["projection"], quotient._cache["lift"]


# --- the extension construction ----------------------------------------------

@dataclass(frozen=True)
class TrivialExtension:
    """The ring on A x E with (a,e)(a',e') = (aa', ae' + a'e).

    ``ring`` is a genuine FiniteRing whose first block of coordinates is A
    and second block is E, so every ring-level operation applies directly.
    """

    base: FiniteRing
    fiber: FiniteModule
    ring: FiniteRing

    def proj_a(self, vec: Sequence[int]) -> Vec:
        return tuple(vec[: self.base.rank])

    def proj_e(self, vec: Sequence[int]) -> Vec:
        return tuple(vec[self.base.rank:])

    def embed(self, a: Sequence[int], e: Sequence[int]) -> Vec:
        return tuple(self.base.reduce(a)) + tuple(self.fiber.reduce(e))

    def law_product(self, x: Sequence[int], y: Sequence[int]) -> Vec:
        """Product computed straight from the defining law, for cross-checks."""
        ax, ex = self.proj_a(x), self.proj_e(x)
        ay, ey = self.proj_a(y), self.proj_e(y)
        return self.embed(
            self.base.mul_vec(ax, ay),
            self.fiber.add(self.fiber.act(ax, ey), self.fiber.act(ay, ex)),
        )


def trivial_extension(base: FiniteRing, fiber: FiniteModule) -> TrivialExtension:
    if fiber.base_ring is not base:
        raise ValueError(
            f"module over {fiber.base_ring.label} cannot extend {base.label}"
        )
    check_budget(base.size * fiber.size, f"extension of {base.label} by {fiber.label}")
    ka, ke = base.rank, fiber.rank
    k = ka + ke
    zero = [0] * k

    def emb_a(vec: Sequence[int]) -> list[int]:
        return list(vec) + [0] * ke

    def emb_e(vec: Sequence[int]) -> list[int]:
        return [0] * ka + list(vec)

    table = [[list(zero) for _ in range(k)] for _ in range(k)]
    for i in range(ka):
        for j in range(ka):
            table[i][j] = emb_a(base.table[i][j])
        for j in range(ke):
            img = emb_e(fiber.action[i][j])
            table[i][ka + j] = img
            table[ka + j][i] = img
    # E-block products vanish: the module part squares to zero
    one = emb_a(base.one)
    orders = list(base.orders) + list(fiber.orders)
    ring = FiniteRing(orders, table, one, f"{base.label}~{fiber.label}")
    ext = TrivialExtension(base, fiber, ring)
    _verify_extension(ext)
    return ext


def _verify_extension(ext: TrivialExtension) -> None:
    ring = ext.ring
    for x in ring.vectors():
        if ring.mul_vec(ring.one, x) != x:
            raise AssertionError(f"(1,0) is not an identity at {x}")
        if ext.embed(ext.proj_a(x), ext.proj_e(x)) != x:
            raise AssertionError(f"embed/proj do not round-trip at {x}")
    if ring.size <= 128:
        pairs = ((x, y) for x in ring.vectors() for y in ring.vectors())
    else:
        rng = random.Random(ring.size)
        pairs = ((ring.sample_vec(rng), ring.sample_vec(rng)) for _ in range(10000))
    for x, y in pairs:
        if ring.mul_vec(x, y) != ext.law_product(x, y):
            raise AssertionError(f"structure constants disagree with the law at {x}, {y}")


def residue_field_power(base: FiniteRing, r: int) -> FiniteModule:
    """(A/M)^r with the action through A -> A/M; M annihilates it."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    local, m = ideals.is_local(base)
    if not local:
        raise ValueError(f"{base.label} is not local")
    sub = make_subgroup(base.orders, sorted(m.carrier))
    pres = quotient_presentation(base.orders, sub)
    k = len(pres.orders)
    action = [
        [
            pres.to_coords(
                base.mul_vec(base.basis_vec(i), pres.from_coords(
                    tuple(1 if t == j else 0 for t in range(k))
                ))
            )
            for j in range(k)
        ]
        for i in range(base.rank)
    ]
    onefold = FiniteModule(base, pres.orders, action, f"{base.label}/M")
    if r == 1:
        return onefold
    return module_power(onefold, r)


def ideal_as_submodule(I: ideals.Ideal, ambient: FiniteModule) -> Submodule:
    """View an ideal inside R^1 (or a compatible rank-1 free module)."""
    if ambient.orders != I.ring.orders:
        raise ValueError("ambient module does not match the ring's additive group")
    return submodule_generated(ambient, list(I.generators))
