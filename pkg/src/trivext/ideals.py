"""Ideal arithmetic over finite rings.

Carriers are materialized element sets (every ideal fits inside its ring,
and rings are budget-bounded), saturated from generators by closing the
additive span of all basis multiples. The v-machinery identifies the total
quotient ring with the ring itself, which is asserted elementwise before
use rather than assumed: in a finite ring every regular element is a unit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import subgroup_presentation, subgroup as make_subgroup
from .rings import BudgetExceeded, FiniteRing, check_budget, product_project

Vec = tuple[int, ...]


@dataclass(frozen=True)
class Ideal:
    """Finitely generated ideal with generators and a saturated carrier."""

    ring: FiniteRing
    generators: tuple[Vec, ...]
    carrier: frozenset[Vec]

    @property
    def size(self) -> int:
        return len(self.carrier)

    def contains(self, vec: Sequence[int]) -> bool:
        return tuple(vec) in self.carrier

    def is_zero(self) -> bool:
        return self.size == 1

    def is_whole(self) -> bool:
        return self.size == self.ring.size

    def __le__(self, other: "Ideal") -> bool:
        return self.carrier <= other.carrier

    def sorted_carrier(self) -> list[Vec]:
        return sorted(self.carrier)

    def __repr__(self) -> str:
        return f"Ideal({self.ring.label}, gens={list(self.generators)}, size={self.size})"


def _close_additively(ring: FiniteRing, seeds: Iterable[Vec]) -> frozenset[Vec]:
    zero = ring.zero_vec
    gens = [g for g in {tuple(s) for s in seeds} if g != zero]
    seen = {zero}
    queue = [zero]
    while queue:
        x = queue.pop()
        for g in gens:
            y = ring.add_vec(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def saturate(ring: FiniteRing, gens: Sequence[Sequence[int]]) -> frozenset[Vec]:
    """Carrier of the ideal generated by ``gens``.

    The additive span of all basis multiples of the generators is already
    multiplication-stable, so one closure pass suffices.
    """
    check_budget(ring.size, f"ideal saturation in {ring.label}")
    seeds = []
    for g in gens:
        g = ring.reduce(g)
        for i in range(ring.rank):
            seeds.append(ring.mul_vec(ring.basis_vec(i), g))
    return _close_additively(ring, seeds)


def ideal(ring: FiniteRing, gens: Sequence[Sequence[int]]) -> Ideal:
    gens = tuple(ring.reduce(g) for g in gens)
    return Ideal(ring, gens, saturate(ring, gens))


def zero_ideal(ring: FiniteRing) -> Ideal:
    return Ideal(ring, (), frozenset({ring.zero_vec}))


def unit_ideal(ring: FiniteRing) -> Ideal:
    cached = ring._cache.get("unit_ideal")
    if cached is None:
        cached = Ideal(ring, (ring.one,), frozenset(ring.vectors()))
        ring._cache["unit_ideal"] = cached
    return cached


def greedy_generators(ring: FiniteRing, carrier: frozenset[Vec]) -> tuple[Vec, ...]:
    """A small (not canonical) generating set recovered from a carrier."""
    gens: list[Vec] = []
    span: frozenset[Vec] = frozenset({ring.zero_vec})
    for x in sorted(carrier):
        if x not in span:
            gens.append(x)
            span = saturate(ring, gens)
            if span == carrier:
                break
    return tuple(gens)


def from_carrier(ring: FiniteRing, carrier: frozenset[Vec]) -> Ideal:
    return Ideal(ring, greedy_generators(ring, carrier), carrier)


def _check_same_ring(I: Ideal, J: Ideal) -> None:
    if I.ring is not J.ring:
        raise ValueError(f"ideals of different rings: {I.ring.label} vs {J.ring.label}")


def intersect(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    return from_carrier(I.ring, I.carrier & J.carrier)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    ring = I.ring
    carrier = frozenset(
        ring.add_vec(a, b) for a in I.carrier for b in J.carrier
    )
    return Ideal(ring, I.generators + J.generators, carrier)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    ring = I.ring
    gens = [ring.mul_vec(a, b) for a in I.generators for b in J.generators]
    return ideal(ring, gens)


def annihilator(ring: FiniteRing, x: Sequence[int]) -> Ideal:
    """(0 : x) = {y : x*y = 0}, with a recomputed generator set."""
    check_budget(ring.size, f"annihilator search in {ring.label}")
    x = ring.reduce(x)
    zero = ring.zero_vec
    carrier = frozenset(v for v in ring.vectors() if ring.mul_vec(x, v) == zero)
    return from_carrier(ring, carrier)


def colon(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) inside the ring: {x : x*J contained in I}."""
    _check_same_ring(I, J)
    ring = I.ring
    check_budget(ring.size, f"colon search in {ring.label}")
    gens = J.generators
    carrier = frozenset(
        v for v in ring.vectors()
        if all(ring.mul_vec(v, g) in I.carrier for g in gens)
    )
    return from_carrier(ring, carrier)


def assert_total_quotient_ring(ring: FiniteRing) -> None:
    """Verify elementwise that every regular element is a unit.

    This is what makes Q(R) = R legitimate for the v-operations below; it
    is executed once per ring and cached, never assumed.
    """
    if ring._cache.get("total_quotient_checked"):
        return
    check_budget(ring.size, f"regular-implies-unit sweep in {ring.label}")
    for v in ring.vectors():
        if ring.is_regular_vec(v) and not ring.is_unit_vec(v):
            raise AssertionError(
                f"{ring.label}: regular element {v} is not a unit"
            )
    ring._cache["total_quotient_checked"] = True


def inverse_finite(I: Ideal) -> Ideal:
    """(R : I) computed inside R by definition; always the whole ring."""
    if I.is_zero():
        raise ValueError("the v-machinery is defined for nonzero ideals only")
    assert_total_quotient_ring(I.ring)
    return colon(unit_ideal(I.ring), I)


def v_closure_finite(I: Ideal) -> Ideal:
    """(R : (R : I)), computed by two colon passes."""
    if I.is_zero():
        raise ValueError("the v-machinery is defined for nonzero ideals only")
    assert_total_quotient_ring(I.ring)
    R = unit_ideal(I.ring)
    return colon(R, colon(R, I))


def v_finite_witness_finite(I: Ideal) -> Ideal:
    """A finitely generated ideal with the same v-closure as ``I``.

    In a finite ring the whole ring always works; the equality is verified
    by computation before returning.
    """
    if I.is_zero():
        raise ValueError("the v-machinery is defined for nonzero ideals only")
    R = unit_ideal(I.ring)
    if v_closure_finite(I).carrier != v_closure_finite(R).carrier:
        raise AssertionError(
            f"v-closure of {I} differs from the v-closure of the unit ideal"
        )
    return R


# --- local structure ---------------------------------------------------------

def nonunits(ring: FiniteRing) -> frozenset[Vec]:
    cached = ring._cache.get("nonunits")
    if cached is None:
        cached = frozenset(v for v in ring.vectors() if not ring.is_unit_vec(v))
        ring._cache["nonunits"] = cached
    return cached


def is_local(ring: FiniteRing) -> tuple[bool, Ideal | None]:
    """A finite commutative ring is local iff its nonunits are closed
    under addition, in which case they form the unique maximal ideal."""
    cached = ring._cache.get("is_local")
    if cached is not None:
        return cached
    check_budget(ring.size, f"local test in {ring.label}")
    nu = nonunits(ring)
    closed = all(ring.add_vec(a, b) in nu for a in nu for b in nu)
    result = (True, from_carrier(ring, nu)) if closed else (False, None)
    ring._cache["is_local"] = result
    return result


def maximal_ideal(ring: FiniteRing) -> Ideal:
    local, m = is_local(ring)
    if not local:
        raise ValueError(f"{ring.label} is not local")
    return m


def maximal_ideals(ring: FiniteRing) -> list[Ideal]:
    """All maximal ideals, via the idempotent decomposition."""
    local, m = is_local(ring)
    if local:
        return [m]
    dec = decompose_into_local(ring)
    out = []
    for which in range(len(dec.factors)):
        factor, _ = dec.factors[which]
        factor_max = maximal_ideal(factor).carrier
        carrier = frozenset(
            v for v in ring.vectors()
            if dec.project(v, which) in factor_max
        )
        out.append(from_carrier(ring, carrier))
    return sorted(out, key=lambda I: I.sorted_carrier())


def idempotents(ring: FiniteRing) -> list[Vec]:
    check_budget(ring.size, f"idempotent sweep in {ring.label}")
    return [v for v in ring.vectors() if ring.mul_vec(v, v) == v]


@dataclass(frozen=True)
class LocalDecomposition:
    """R as a product of local factors cut out by primitive idempotents.

    ``factors[i]`` is (local ring, idempotent vector in R); ``project``
    and ``recombine`` are the two directions of the isomorphism.
    """

    ring: FiniteRing
    factors: tuple[tuple[FiniteRing, Vec], ...]
    _to_factor: tuple[object, ...]
    _from_factor: tuple[object, ...]

    def project(self, vec: Sequence[int], which: int) -> Vec:
        e = self.factors[which][1]
        return self._to_factor[which](self.ring.mul_vec(vec, e))

    def recombine(self, parts: Sequence[Sequence[int]]) -> Vec:
        acc = self.ring.zero_vec
        for which, part in enumerate(parts):
            acc = self.ring.add_vec(acc, self._from_factor[which](part))
        return acc


def _factor_ring(ring: FiniteRing, e: Vec) -> tuple[FiniteRing, object, object]:
    """Present the ideal e*R as a standalone ring with identity e."""
    carrier_gens = [ring.mul_vec(e, ring.basis_vec(i)) for i in range(ring.rank)]
    sub = make_subgroup(ring.orders, carrier_gens)
    pres = subgroup_presentation(sub)
    k = len(pres.orders)
    table = [
        [pres.to_coords(ring.mul_vec(pres.gens[i], pres.gens[j])) for j in range(k)]
        for i in range(k)
    ]
    one = pres.to_coords(e)
    factor = FiniteRing(pres.orders, table, one, f"{ring.label}|e={e}")
    return factor, pres.to_coords, pres.from_coords


def decompose_into_local(ring: FiniteRing) -> LocalDecomposition:
    cached = ring._cache.get("local_decomposition")
    if cached is not None:
        return cached
    check_budget(ring.size, f"local decomposition of {ring.label}")
    idem = [v for v in idempotents(ring) if v != ring.zero_vec]
    atoms = [
        e for e in idem
        if not any(
            f != e and ring.mul_vec(f, e) == f for f in idem
        )
    ]
    total = ring.zero_vec
    for e in atoms:
        total = ring.add_vec(total, e)
    if total != ring.one:
        raise AssertionError(f"primitive idempotents of {ring.label} do not sum to 1")
    for i, e in enumerate(atoms):
        for f in atoms[i + 1:]:
            if ring.mul_vec(e, f) != ring.zero_vec:
                raise AssertionError(
                    f"idempotents {e} and {f} of {ring.label} are not orthogonal"
                )

    factors = []
    to_maps = []
    from_maps = []
    size_product = 1
    for e in atoms:
        factor, to_coords, from_coords = _factor_ring(ring, e)
        local, _ = is_local(factor)
        if not local:
            raise AssertionError(f"factor at idempotent {e} of {ring.label} is not local")
        factors.append((factor, e))
        to_maps.append(to_coords)
        from_maps.append(from_coords)
        size_product *= factor.size
    if size_product != ring.size:
        raise AssertionError(
            f"factor sizes of {ring.label} multiply to {size_product}, not {ring.size}"
        )
    dec = LocalDecomposition(ring, tuple(factors), tuple(to_maps), tuple(from_maps))
    _verify_decomposition(dec)
    ring._cache["local_decomposition"] = dec
    return dec


def _verify_decomposition(dec: LocalDecomposition, pair_limit: int = 512) -> None:
    ring = dec.ring
    m = len(dec.factors)
    elems = list(ring.vectors())
    for v in elems:
        if dec.recombine([dec.project(v, w) for w in range(m)]) != v:
            raise AssertionError(f"recombination is not the identity at {v}")
    if ring.size <= pair_limit:
        pairs = ((a, b) for a in elems for b in elems)
    else:
        rng = random.Random(ring.size)
        pairs = ((ring.sample_vec(rng), ring.sample_vec(rng)) for _ in range(5000))
    for a, b in pairs:
        ab = ring.mul_vec(a, b)
        for w in range(m):
            factor = dec.factors[w][0]
            if dec.project(ab, w) != factor.mul_vec(dec.project(a, w), dec.project(b, w)):
                raise AssertionError(
                    f"projection {w} of {ring.label} is not multiplicative at {a}, {b}"
                )


# --- enumeration and predicates ----------------------------------------------

ALL_IDEALS_BUDGET = 512


def principal_ideals(ring: FiniteRing) -> dict[frozenset[Vec], Vec]:
    """Distinct principal-ideal carriers, each with a sample generator."""
    cached = ring._cache.get("principal_ideals")
    if cached is None:
        cached = {}
        for v in ring.vectors():
            carrier = saturate(ring, [v])
            cached.setdefault(carrier, v)
        ring._cache["principal_ideals"] = cached
    return cached


def all_ideals(ring: FiniteRing, limit: int = ALL_IDEALS_BUDGET) -> list[Ideal]:
    """Complete duplicate-free ideal list, smallest carriers first."""
    check_budget(ring.size, f"ideal enumeration in {ring.label}", limit)
    principals = list(principal_ideals(ring).keys())
    seen: dict[frozenset[Vec], None] = {}
    queue = [frozenset({ring.zero_vec})]
    seen[queue[0]] = None
    while queue:
        current = queue.pop()
        for p in principals:
            if p <= current:
                continue
            carrier = frozenset(
                ring.add_vec(a, b) for a in current for b in p
            )
            if carrier not in seen:
                seen[carrier] = None
                queue.append(carrier)
    ideals = [from_carrier(ring, c) for c in seen]
    return sorted(ideals, key=lambda I: (I.size, I.sorted_carrier()))


@dataclass(frozen=True)
class MinimalGenerators:
    ideal: Ideal
    gens: tuple[Vec, ...]
    mu: int


def minimal_generators(I: Ideal) -> MinimalGenerators:
    """Nakayama-minimal generators of an ideal over a local ring."""
    ring = I.ring
    local, m = is_local(ring)
    if not local:
        raise ValueError(f"minimal generators need a local ring, {ring.label} is not")
    mi = ideal_product(from_carrier(ring, m.carrier), I)
    span = mi.carrier
    gens: list[Vec] = []
    for x in sorted(I.carrier):
        if x not in span:
            gens.append(x)
            span = frozenset(
                ring.add_vec(a, b)
                for a in mi.carrier
                for b in saturate(ring, gens)
            )
            if span == I.carrier:
                break
    mu = len(gens)
    residue = ring.size // m.size
    if I.size != mi.size * residue ** mu:
        raise AssertionError(
            f"generator count {mu} disagrees with the residue dimension of {I}"
        )
    return MinimalGenerators(I, tuple(gens), mu)


def is_von_neumann_regular(ring: FiniteRing) -> tuple[bool, Ideal | None]:
    """True iff every principal ideal is generated by an idempotent."""
    idem_carriers = {saturate(ring, [e]) for e in idempotents(ring)}
    for carrier, gen in principal_ideals(ring).items():
        if carrier not in idem_carriers:
            return False, Ideal(ring, (gen,), carrier)
    return True, None


def is_bezout(ring: FiniteRing) -> tuple[bool, Ideal | None]:
    """True iff every 2-generated ideal is principal.

    Pairwise principality propagates to any finite generator count by
    induction (fold two generators into one at a time), so checking pairs
    decides the property.
    """
    principals = principal_ideals(ring)
    carriers = list(principals.keys())
    for i, a in enumerate(carriers):
        for b in carriers[i + 1:]:
            summed = frozenset(ring.add_vec(x, y) for x in a for y in b)
            if summed not in principals:
                return False, from_carrier(ring, summed)
    return True, None


# --- componentwise identities over product rings -------------------------------

def componentwise_check(
    ring: FiniteRing,
    seed: int = 0,
    element_limit: int = 4096,
    pair_samples: int = 300,
) -> dict:
    """Verify the componentwise annihilator/intersection/inverse formulas.

    Works on a ring built by make_product; returns a report dict with
    per-identity status and a witness on failure.
    """
    if ring.components is None:
        raise ValueError(f"{ring.label} was not built by make_product")
    comps = ring.components
    m = len(comps)
    report = {"ring": ring.label, "identities": {}, "ok": True}

    def fail(name: str, witness: dict) -> None:
        report["identities"][name] = {"status": "fail", "witness": witness}
        report["ok"] = False

    def ok(name: str, count: int) -> None:
        report["identities"][name] = {"status": "ok", "instances": count}

    # annihilators of single elements, exhaustively
    check_budget(ring.size, f"componentwise annihilator sweep in {ring.label}", element_limit)
    count = 0
    for v in ring.vectors():
        ann = annihilator(ring, v).carrier
        parts = [annihilator(comp, product_project(ring, v, w)).carrier
                 for w, comp in enumerate(comps)]
        expected = {
            tuple(x for part in combo for x in part)
            for combo in _cartesian(parts)
        }
        if ann != frozenset(expected):
            fail("annihilator", {"element": v})
            break
        count += 1
    else:
        ok("annihilator", count)

    # intersections of principal-ideal tuples, seeded samples
    rng = random.Random(seed)
    count = 0
    failed = False
    for _ in range(pair_samples):
        a = ring.sample_vec(rng)
        b = ring.sample_vec(rng)
        lhs = intersect(ideal(ring, [a]), ideal(ring, [b])).carrier
        parts = [
            intersect(
                ideal(comp, [product_project(ring, a, w)]),
                ideal(comp, [product_project(ring, b, w)]),
            ).carrier
            for w, comp in enumerate(comps)
        ]
        if lhs != _box_carrier(parts):
            fail("principal_intersection", {"a": a, "b": b})
            failed = True
            break
        count += 1
    if not failed:
        ok("principal_intersection", count)

    # box ideals: I cap J and the inverse, over all component ideal tuples
    comp_ideals = [all_ideals(comp) for comp in comps]
    boxes = list(_cartesian([list(range(len(ci))) for ci in comp_ideals]))
    box_objs = []
    for combo in boxes:
        parts = [comp_ideals[w][i] for w, i in enumerate(combo)]
        carrier = _box_carrier([p.carrier for p in parts])
        box_objs.append((parts, from_carrier(ring, carrier)))
    count = 0
    failed = False
    for parts_i, I in box_objs:
        for parts_j, J in box_objs:
            lhs = intersect(I, J).carrier
            rhs = _box_carrier(
                [intersect(a, b).carrier for a, b in zip(parts_i, parts_j)]
            )
            if lhs != rhs:
                fail("ideal_intersection", {
                    "I": [sorted(p.carrier) for p in parts_i],
                    "J": [sorted(p.carrier) for p in parts_j],
                })
                failed = True
                break
            count += 1
        if failed:
            break
    if not failed:
        ok("ideal_intersection", count)

    count = 0
    failed = False
    for parts_i, I in box_objs:
        if I.is_zero():
            continue
        if any(p.is_zero() for p in parts_i):
            continue  # component inverses are defined for nonzero ideals
        lhs = inverse_finite(I).carrier
        rhs = _box_carrier([inverse_finite(p).carrier for p in parts_i])
        if lhs != rhs:
            fail("inverse", {"I": [sorted(p.carrier) for p in parts_i]})
            failed = True
            break
        count += 1
    if not failed:
        ok("inverse", count)

    return report


def _cartesian(parts: list) -> list[tuple]:
    out = [()]
    for part in parts:
        out = [combo + (x,) for combo in out for x in part]
    return out


def _box_carrier(parts: list[frozenset[Vec]]) -> frozenset[Vec]:
    return frozenset(
        tuple(x for vec in combo for x in vec) for combo in _cartesian(parts)
    )
