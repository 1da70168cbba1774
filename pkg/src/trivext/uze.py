"""Exact arithmetic in the integers crossed with a countable sum of F2.

Elements are pairs (a, e) with a an integer and e a finite-support bit
vector (stored as the support set); the product is
(a, e)(b, f) = (ab, af + be + ef), where the parity of an integer decides
its action and ef is the componentwise product, so addition is symmetric
difference and ef is intersection. Annihilators come back as exact
descriptions, flagged when they are not finitely generated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Sequence


@dataclass(frozen=True)
class UZEElement:
    a: int
    support: frozenset[int]

    def is_zero(self) -> bool:
        return self.a == 0 and not self.support

    def __mul__(self, other: "UZEElement") -> "UZEElement":
        e, f = self.support, other.support
        part = e & f
        if self.a % 2:
            part = part ^ f
        if other.a % 2:
            part = part ^ e
        return UZEElement(self.a * other.a, part)

    def __add__(self, other: "UZEElement") -> "UZEElement":
        return UZEElement(self.a + other.a, self.support ^ other.support)

    def __repr__(self) -> str:
        return f"({self.a}, {sorted(self.support)})"


def uze(a: int, support: Sequence[int] = ()) -> UZEElement:
    return UZEElement(a, frozenset(support))


def uze_mul(x: UZEElement, y: UZEElement) -> UZEElement:
    return x * y


def uze_is_regular(x: UZEElement) -> bool:
    """Regular elements are exactly the (odd, 0) ones."""
    return x.a % 2 == 1 and not x.support


def uze_zero_divisor_witness(x: UZEElement) -> UZEElement | None:
    """An explicit nonzero partner with x*y = 0, for the non-regular x."""
    if uze_is_regular(x):
        return None
    if x.support and x.a % 2 == 1:
        # a set inside the support doubles away: f + ef = f + f = 0
        y = UZEElement(0, frozenset({min(x.support)}))
    else:
        # even first slot: anything disjoint from the support is killed
        fresh = max(x.support, default=-1) + 1
        y = UZEElement(0, frozenset({fresh}))
    assert (x * y).is_zero() and not y.is_zero()
    return y


@dataclass(frozen=True)
class UZEAnnihilator:
    """Exact shape of (0 : x).

    kinds: "zero" (only 0), "all" (the whole ring), "subsets" (pairs
    (0, f) with f inside the parameter support; principal, generated by
    (0, parameter)), "disjoint" (pairs (0, f) with f disjoint from the
    parameter; never finitely generated), "mixed" (even first slots with
    disjoint support, odd first slots with containing support; never
    finitely generated).
    """

    kind: str
    parameter: frozenset[int]

    @property
    def is_finitely_generated(self) -> bool:
        return self.kind in ("zero", "all", "subsets")

    @property
    def principal_generator(self) -> UZEElement | None:
        if self.kind == "subsets":
            return UZEElement(0, self.parameter)
        if self.kind == "zero":
            return UZEElement(0, frozenset())
        return None

    def contains(self, y: UZEElement) -> bool:
        if self.kind == "zero":
            return y.is_zero()
        if self.kind == "all":
            return True
        if self.kind == "subsets":
            return y.a == 0 and y.support <= self.parameter
        if self.kind == "disjoint":
            return y.a == 0 and not (y.support & self.parameter)
        # mixed: parity of the first slot picks the support condition
        if y.a % 2 == 0:
            return not (y.support & self.parameter)
        return self.parameter <= y.support

    def describe(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "all":
            return "the whole ring"
        if self.kind == "subsets":
            return f"0 x (subsets of {sorted(self.parameter)}), principal"
        if self.kind == "disjoint":
            if not self.parameter:
                return "0 x E [not finitely generated]"
            return (
                f"0 x (support disjoint from {sorted(self.parameter)}) "
                "[not finitely generated]"
            )
        return (
            f"even first slot with support disjoint from {sorted(self.parameter)}, "
            f"odd first slot with support containing it [not finitely generated]"
        )


def uze_annihilator(x: UZEElement) -> UZEAnnihilator:
    if x.is_zero():
        return UZEAnnihilator("all", frozenset())
    if x.a != 0:
        if x.a % 2 == 1:
            if not x.support:
                return UZEAnnihilator("zero", frozenset())
            return UZEAnnihilator("subsets", x.support)
        return UZEAnnihilator("disjoint", x.support)
    return UZEAnnihilator("mixed", x.support)


@dataclass(frozen=True)
class TotalQuotient:
    """Marker: the inverse is the whole ring of quotients."""

    def __str__(self) -> str:
        return "Q(R)"


@dataclass(frozen=True)
class EquivPrincipal:
    """The inverse agrees with the inverse of the principal ideal on (x, 0)."""

    x: int

    def __str__(self) -> str:
        return f"inverse of R({self.x}, 0)"


def uze_inverse_class(gens: Sequence[UZEElement]) -> TotalQuotient | EquivPrincipal:
    """Classify the inverse of the ideal generated by ``gens``.

    The integer ideal of first slots decides everything: when it vanishes,
    every regular element fixes the ideal elementwise and the inverse is
    the whole quotient ring; otherwise the inverse only sees the gcd.
    """
    g = gcd(*(abs(x.a) for x in gens)) if gens else 0
    if g == 0:
        return TotalQuotient()
    return EquivPrincipal(g)


def regular_multiple_contains(b: int, y: UZEElement) -> bool:
    """Membership in (b, 0)R for odd b: the second slot is free."""
    if b % 2 == 0:
        raise ValueError("only odd first slots give regular elements")
    return y.a % b == 0


def sample_uze(
    rng: random.Random, support_window: int = 8, coeff_bound: int = 15
) -> UZEElement:
    size = rng.randint(0, support_window)
    support = frozenset(rng.sample(range(support_window), size))
    return UZEElement(rng.randint(-coeff_bound, coeff_bound), support)


def bounded_zero_divisor_search(
    x: UZEElement, extra_positions: int = 2, coeff_bound: int = 4
) -> UZEElement | None:
    """Exhaustive search for a nonzero y with x*y = 0, over supports inside
    supp(x) plus a few fresh positions and small first slots."""
    positions = sorted(x.support)
    fresh = max(x.support, default=-1) + 1
    positions += list(range(fresh, fresh + extra_positions))
    n = len(positions)
    for mask in range(2 ** n):
        support = frozenset(p for i, p in enumerate(positions) if mask >> i & 1)
        for b in range(-coeff_bound, coeff_bound + 1):
            y = UZEElement(b, support)
            if not y.is_zero() and (x * y).is_zero():
                return y
    return None
