"""Exact arithmetic in the extension of the integers by the rationals.

Elements are pairs (a, q) with a an integer and q an exact rational; the
product is (a, q)(a', q') = (aa', aq' + a'q). Every finitely generated
ideal has one of two normal forms, every fractional ideal relevant to the
inverse operation one of five, and all of the closed-form case tables are
backed by a definition-level membership oracle that produces verified
explicit combinations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .lattice import hnf_rows, reduce_by_hnf, xgcd

Rat = Fraction


@dataclass(frozen=True)
class ZQElement:
    a: int
    q: Fraction

    def __mul__(self, other: "ZQElement") -> "ZQElement":
        return ZQElement(self.a * other.a, self.a * other.q + other.a * self.q)

    def __add__(self, other: "ZQElement") -> "ZQElement":
        return ZQElement(self.a + other.a, self.q + other.q)

    def __neg__(self) -> "ZQElement":
        return ZQElement(-self.a, -self.q)

    def is_zero(self) -> bool:
        return self.a == 0 and self.q == 0

    def __repr__(self) -> str:
        return f"({self.a}, {self.q})"


def zq(a: int, q) -> ZQElement:
    return ZQElement(a, Fraction(q))


def zq_mul(x: ZQElement, y: ZQElement) -> ZQElement:
    return x * y


def zq_is_regular(x: ZQElement) -> bool:
    """Zero divisors are exactly the elements with vanishing first slot."""
    return x.a != 0


def zq_zero_divisor_witness(x: ZQElement) -> ZQElement | None:
    """A nonzero partner annihilating x, when one exists."""
    if x.is_zero():
        return ZQElement(0, Fraction(1))
    if x.a != 0:
        return None
    return ZQElement(0, Fraction(1))  # (0,q)(0,1) = (0,0)


# --- integral normal forms ----------------------------------------------------

@dataclass(frozen=True)
class FullLine:
    """dZ in the first slot, all of Q in the second; principal on (d, 0)."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("the stride must be a positive integer")

    def __str__(self) -> str:
        return f"{self.d}Z ~ Q" if self.d != 1 else "Z ~ Q"


@dataclass(frozen=True)
class ZeroLine:
    """0 in the first slot, gZ in the second; g = 0 is the zero ideal."""

    g: Fraction

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("the generator must be nonnegative")

    def __str__(self) -> str:
        if self.g == 0:
            return "0"
        return "0 ~ Z" if self.g == 1 else f"0 ~ ({self.g})Z"


ZQIdealNF = FullLine | ZeroLine


def rational_lattice_generator(values: Sequence[Fraction]) -> Fraction:
    """Generator of the subgroup of Q spanned by ``values`` over Z.

    Finitely generated subgroups of Q are cyclic; clearing to a common
    denominator reduces the computation to an integer gcd, which also
    re-verifies cyclicity.
    """
    values = [v for v in values if v != 0]
    if not values:
        return Fraction(0)
    den = lcm(*(v.denominator for v in values))
    num = gcd(*(abs(v.numerator) * (den // v.denominator) for v in values))
    return Fraction(num, den)


def zq_ideal_nf(gens: Sequence[ZQElement]) -> ZQIdealNF:
    """Normal form of the ideal generated by ``gens``.

    A generator with nonzero first slot already reaches the whole second
    slot, so the first slots alone decide the shape.
    """
    a_parts = [g.a for g in gens if g.a != 0]
    if a_parts:
        return FullLine(gcd(*a_parts))
    return ZeroLine(rational_lattice_generator([g.q for g in gens]))


def nf_contains(nf: ZQIdealNF, x: ZQElement) -> bool:
    if isinstance(nf, FullLine):
        return x.a % nf.d == 0
    if nf.g == 0:
        return x.is_zero()
    return x.a == 0 and (x.q / nf.g).denominator == 1


def nf_is_zero(nf: ZQIdealNF) -> bool:
    return isinstance(nf, ZeroLine) and nf.g == 0


# --- fractional ideals --------------------------------------------------------

@dataclass(frozen=True)
class ScaledLine:
    """cZ in the first slot, all of Q in the second (c a positive rational)."""

    c: Fraction

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("scale must be positive")

    def __str__(self) -> str:
        return f"({self.c})Z ~ Q" if self.c != 1 else "Z ~ Q"


@dataclass(frozen=True)
class ZeroScaled:
    """0 in the first slot, cZ in the second."""

    c: Fraction

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("scale must be positive")

    def __str__(self) -> str:
        return f"0 ~ ({self.c})Z"


@dataclass(frozen=True)
class ZeroFull:
    """0 in the first slot, all of Q in the second. Not finitely generated."""

    def __str__(self) -> str:
        return "0 ~ Q"


@dataclass(frozen=True)
class TotalRing:
    """The whole ring of quotients Q ~ Q. Not finitely generated over R."""

    def __str__(self) -> str:
        return "Q ~ Q"


@dataclass(frozen=True)
class ZeroIdeal:
    def __str__(self) -> str:
        return "0"


ZQFractional = ScaledLine | ZeroScaled | ZeroFull | TotalRing | ZeroIdeal


def to_fractional(nf: ZQIdealNF) -> ZQFractional:
    if isinstance(nf, FullLine):
        return ScaledLine(Fraction(nf.d))
    if nf.g == 0:
        return ZeroIdeal()
    return ZeroScaled(nf.g)


def as_integral_nf(frac: ZQFractional) -> ZQIdealNF:
    """Back-conversion for fractional ideals that are integral and finitely
    generated; raises on the flagged shapes."""
    if isinstance(frac, ScaledLine):
        if frac.c.denominator != 1:
            raise ValueError(f"{frac} is not an integral ideal")
        return FullLine(int(frac.c))
    if isinstance(frac, ZeroScaled):
        return ZeroLine(frac.c)
    if isinstance(frac, ZeroIdeal):
        return ZeroLine(Fraction(0))
    raise ValueError(f"{frac} is not a finitely generated integral ideal")


def zq_is_fg(frac: ZQFractional | ZQIdealNF) -> bool:
    if isinstance(frac, (FullLine, ZeroLine, ScaledLine, ZeroScaled, ZeroIdeal)):
        return True
    return False


def frac_contains(frac: ZQFractional, a: Fraction, q: Fraction) -> bool:
    """Membership of (a, q) in Q ~ Q against the closed-form shapes."""
    if isinstance(frac, ScaledLine):
        return (a / frac.c).denominator == 1
    if isinstance(frac, ZeroScaled):
        return a == 0 and (q / frac.c).denominator == 1
    if isinstance(frac, ZeroFull):
        return a == 0
    if isinstance(frac, TotalRing):
        return True
    return a == 0 and q == 0


# --- operations ---------------------------------------------------------------

def zq_intersect(I: ZQIdealNF, J: ZQIdealNF) -> ZQIdealNF:
    if nf_is_zero(I) or nf_is_zero(J):
        return ZeroLine(Fraction(0))
    if isinstance(I, FullLine) and isinstance(J, FullLine):
        return FullLine(lcm(I.d, J.d))
    if isinstance(I, FullLine):
        return J  # the zero-line ideal sits inside the full second slot
    if isinstance(J, FullLine):
        return I
    g = Fraction(
        lcm(I.g.numerator, J.g.numerator),
        gcd(I.g.denominator, J.g.denominator),
    )
    return ZeroLine(g)


def zq_sum(I: ZQIdealNF, J: ZQIdealNF) -> ZQIdealNF:
    if isinstance(I, FullLine) and isinstance(J, FullLine):
        return FullLine(gcd(I.d, J.d))
    if isinstance(I, FullLine):
        return I
    if isinstance(J, FullLine):
        return J
    return ZeroLine(rational_lattice_generator([I.g, J.g]))


def zq_annihilator(x: ZQElement) -> ZQFractional:
    """(0 : x). Regular elements kill nothing; a pure second-slot element
    is killed by the whole (not finitely generated) second-slot line."""
    if x.is_zero():
        return ScaledLine(Fraction(1))
    if x.a != 0:
        return ZeroIdeal()
    return ZeroFull()


def zq_colon(I: ZQIdealNF, J: ZQIdealNF) -> ZQFractional:
    """(I : J) within the ring. Shapes that are not finitely generated
    come back flagged as fractional values, never as a quiet NF."""
    if nf_is_zero(J):
        return ScaledLine(Fraction(1))
    if nf_is_zero(I):
        if isinstance(J, FullLine):
            return ZeroIdeal()
        return ZeroFull()
    if isinstance(J, FullLine):
        if isinstance(I, FullLine):
            return ScaledLine(Fraction(I.d // gcd(I.d, J.d)))
        return ZeroScaled(I.g / J.d)
    # J = 0 ~ hZ
    if isinstance(I, FullLine):
        return ScaledLine(Fraction(1))
    ratio = I.g / J.g
    return ScaledLine(Fraction(ratio.numerator))


def zq_inverse(frac: ZQFractional | ZQIdealNF) -> ZQFractional:
    """(R : F) inside Q ~ Q, by the closed case table."""
    if isinstance(frac, (FullLine, ZeroLine)):
        frac = to_fractional(frac)
    if isinstance(frac, ZeroIdeal):
        raise ValueError("the inverse is defined for nonzero ideals only")
    if isinstance(frac, ScaledLine):
        return ScaledLine(1 / frac.c)
    if isinstance(frac, ZeroScaled):
        return TotalRing()
    if isinstance(frac, ZeroFull):
        return TotalRing()
    return ZeroFull()  # inverse of the total quotient ring


def zq_v_closure(frac: ZQFractional | ZQIdealNF) -> ZQFractional:
    return zq_inverse(zq_inverse(frac))


def zq_frac_sum(a: ZQFractional, b: ZQFractional) -> ZQFractional:
    if isinstance(a, ZeroIdeal):
        return b
    if isinstance(b, ZeroIdeal):
        return a
    if isinstance(a, TotalRing) or isinstance(b, TotalRing):
        return TotalRing()
    if isinstance(a, ScaledLine) and isinstance(b, ScaledLine):
        return ScaledLine(rational_lattice_generator([a.c, b.c]))
    if isinstance(a, ScaledLine):
        return a  # second-slot shapes are inside any scaled line
    if isinstance(b, ScaledLine):
        return b
    if isinstance(a, ZeroFull) or isinstance(b, ZeroFull):
        return ZeroFull()
    return ZeroScaled(rational_lattice_generator([a.c, b.c]))


def zq_frac_intersect(a: ZQFractional, b: ZQFractional) -> ZQFractional:
    if isinstance(a, ZeroIdeal) or isinstance(b, ZeroIdeal):
        return ZeroIdeal()
    if isinstance(a, TotalRing):
        return b
    if isinstance(b, TotalRing):
        return a
    if isinstance(a, ScaledLine) and isinstance(b, ScaledLine):
        c = Fraction(
            lcm(a.c.numerator, b.c.numerator),
            gcd(a.c.denominator, b.c.denominator),
        )
        return ScaledLine(c)
    if isinstance(a, ScaledLine):
        return b  # zero-line shapes sit inside the full second slot
    if isinstance(b, ScaledLine):
        return a
    if isinstance(a, ZeroFull):
        return b
    if isinstance(b, ZeroFull):
        return a
    c = Fraction(
        lcm(a.c.numerator, b.c.numerator),
        gcd(a.c.denominator, b.c.denominator),
    )
    return ZeroScaled(c)


def zq_v_finite_witness(I: ZQIdealNF | ZQFractional) -> list[ZQElement]:
    """Generators of a finitely generated ideal with the same inverse.

    The equality of the two inverses is recomputed before returning.
    """
    if isinstance(I, (FullLine, ZeroLine)):
        frac = to_fractional(I)
    else:
        frac = I
    if isinstance(frac, ZeroIdeal):
        raise ValueError("the zero ideal has no v-finiteness witness")
    if isinstance(frac, ScaledLine):
        if frac.c.denominator != 1:
            raise ValueError("witnesses are produced for integral ideals only")
        witness = [ZQElement(int(frac.c), Fraction(0))]
    elif isinstance(frac, (ZeroScaled, ZeroFull)):
        witness = [ZQElement(0, Fraction(1))]
    else:
        witness = [ZQElement(1, Fraction(0))]
    witness_inverse = zq_inverse(zq_ideal_nf(witness))
    if zq_inverse(frac) != witness_inverse:
        raise AssertionError(f"witness inverse mismatch for {frac}")
    return witness


def zq_is_principal(I: ZQIdealNF) -> tuple[bool, ZQElement | None]:
    if isinstance(I, FullLine):
        return True, ZQElement(I.d, Fraction(0))
    if I.g == 0:
        return True, ZQElement(0, Fraction(0))
    return True, ZQElement(0, I.g)


# --- membership oracle --------------------------------------------------------

def solve_linear(coeffs: Sequence[int], target: int) -> list[int] | None:
    """Integer solution of sum(c_i * b_i) = target, or None.

    Folds extended gcds left to right and back-substitutes, then verifies
    the witness by direct evaluation.
    """
    n = len(coeffs)
    if n == 0:
        return [] if target == 0 else None
    g = 0
    witness = [0] * n
    for i, c in enumerate(coeffs):
        x, y, g2 = xgcd(g, c)
        witness = [x * w for w in witness]
        witness[i] = y
        g = g2
    if g == 0:
        return [0] * n if target == 0 else None
    if target % g:
        return None
    scale = target // g
    witness = [w * scale for w in witness]
    assert sum(c * w for c, w in zip(coeffs, witness)) == target
    return witness


def rational_combination_witness(
    values: Sequence[Fraction], target: Fraction
) -> list[int] | None:
    """Integer coefficients with sum(b_i * q_i) = target, or None.

    Denominators are cleared first, so the decision is a plain integer
    gcd divisibility test, independent of the normal-form constructor.
    """
    dens = [v.denominator for v in values] + [target.denominator]
    den = lcm(*dens) if dens else 1
    coeffs = [int(v * den) for v in values]
    tgt = int(target * den)
    witness = solve_linear(coeffs, tgt)
    if witness is None:
        return None
    assert sum(b * v for b, v in zip(witness, values)) == target
    return witness


def ideal_membership_witness(
    gens: Sequence[ZQElement], x: ZQElement
) -> list[int] | None:
    """Decide x in the ideal generated by ``gens`` with an explicit witness.

    A combination sum (b_i, f_i)(a_i, e_i) has first slot sum(b_i a_i) and
    second slot sum(b_i e_i) + sum(f_i a_i); the f-terms sweep the whole
    rational span of the nonzero a_i, so integer coefficients b decide
    everything. Returned witnesses are verified by direct arithmetic.
    """
    a_parts = [g.a for g in gens]
    if any(a_parts):
        b = solve_linear(a_parts, x.a)
        if b is None:
            return None
        # second slot: x.q - sum(b_i e_i) is absorbed by the f-terms
        return b
    if x.a != 0:
        return None
    return rational_combination_witness([g.q for g in gens], x.q)


def ideal_contains(gens: Sequence[ZQElement], x: ZQElement) -> bool:
    return ideal_membership_witness(gens, x) is not None


def random_member(
    rng: random.Random, gens: Sequence[ZQElement], coeff_bound: int = 12
) -> ZQElement:
    """A random element of the generated ideal, built as an explicit
    bounded combination."""
    acc = ZQElement(0, Fraction(0))
    for g in gens:
        b = rng.randint(-coeff_bound, coeff_bound)
        f = Fraction(rng.randint(-coeff_bound, coeff_bound),
                     rng.randint(1, coeff_bound))
        acc = acc + ZQElement(b, f) * g
    return acc


def sample_element(
    rng: random.Random, coeff_bound: int = 12, den_bound: int = 12
) -> ZQElement:
    return ZQElement(
        rng.randint(-coeff_bound, coeff_bound),
        Fraction(rng.randint(-coeff_bound, coeff_bound), rng.randint(1, den_bound)),
    )


def sample_rational(rng: random.Random, coeff_bound: int = 12, den_bound: int = 12) -> Fraction:
    return Fraction(rng.randint(-coeff_bound, coeff_bound), rng.randint(1, den_bound))


def frac_sample_member(rng: random.Random, frac: ZQFractional, bound: int = 12) -> tuple[Fraction, Fraction]:
    """A random element of a fractional shape, for oracle probes."""
    if isinstance(frac, ScaledLine):
        return frac.c * rng.randint(-bound, bound), sample_rational(rng, bound, bound)
    if isinstance(frac, ZeroScaled):
        return Fraction(0), frac.c * rng.randint(-bound, bound)
    if isinstance(frac, ZeroFull):
        return Fraction(0), sample_rational(rng, bound, bound)
    if isinstance(frac, TotalRing):
        return sample_rational(rng, bound, bound), sample_rational(rng, bound, bound)
    return Fraction(0), Fraction(0)


def frac_probe_members(frac: ZQFractional) -> list[tuple[Fraction, Fraction]]:
    """Deterministic members that witness the constraints of each shape."""
    if isinstance(frac, ScaledLine):
        return [(frac.c, Fraction(0)), (frac.c, Fraction(1)), (Fraction(0), Fraction(1))]
    if isinstance(frac, ZeroScaled):
        return [(Fraction(0), frac.c)]
    if isinstance(frac, ZeroFull):
        return [(Fraction(0), Fraction(1)), (Fraction(0), Fraction(1, 7))]
    if isinstance(frac, TotalRing):
        return [(Fraction(1), Fraction(0)), (Fraction(1, 2), Fraction(0)),
                (Fraction(1, 7), Fraction(1, 3))]
    return [(Fraction(0), Fraction(0))]


def inverse_membership_probe(
    frac: ZQFractional, x: tuple[Fraction, Fraction], rng: random.Random, samples: int = 20
) -> bool:
    """Definition-level test of x in (R : F): x*y must land in the ring for
    the deterministic probe members and a batch of sampled members of F.

    A targeted probe makes the test decisive for every sampled x: when F is
    the whole quotient ring, the member (q/2p, 0) with x = (p/q, ...) pushes
    any nonzero first slot out of the integers.
    """
    xa, xq = x
    members = frac_probe_members(frac) + [
        frac_sample_member(rng, frac) for _ in range(samples)
    ]
    if isinstance(frac, TotalRing) and xa != 0:
        members.append((Fraction(xa.denominator, 2 * xa.numerator), Fraction(0)))
    one_line = ScaledLine(Fraction(1))
    for ya, yq in members:
        pa = xa * ya
        pq = xa * yq + ya * xq
        if not frac_contains(one_line, pa, pq):
            return False
    return True


# --- submodules of free modules ----------------------------------------------

@dataclass(frozen=True)
class ZQSubmodule:
    """Row data of a finitely generated submodule of the rank-m free module.

    ``lattice_rows`` is the Hermite basis of the integer row span U of the
    first slots; ``span_rows`` the reduced rational basis of the span of U;
    ``residues`` the nonzero reductions of the second slots against that
    span. The submodule splits as U with its full rational span in the
    second slot exactly when no residue survives.
    """

    rank: int
    generators: tuple[tuple[tuple[int, ...], tuple[Fraction, ...]], ...]
    lattice_rows: tuple[tuple[int, ...], ...]
    span_rows: tuple[tuple[Fraction, ...], ...]
    residues: tuple[tuple[Fraction, ...], ...]

    @property
    def kind(self) -> str:
        return "split" if not self.residues else "general"

    @property
    def is_split(self) -> bool:
        return not self.residues


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    basis: list[list[Fraction]] = []
    for row in rows:
        vec = [Fraction(v) for v in row]
        for b in basis:
            p = next(i for i, v in enumerate(b) if v)
            if vec[p]:
                coef = vec[p]
                for i in range(ncols):
                    vec[i] -= coef * b[i]
        if any(vec):
            p = next(i for i, v in enumerate(vec) if v)
            coef = vec[p]
            vec = [v / coef for v in vec]
            for b in basis:
                if b[p]:
                    c = b[p]
                    for i in range(ncols):
                        b[i] -= c * vec[i]
            basis.append(vec)
    basis.sort(key=lambda b: next(i for i, v in enumerate(b) if v))
    return [tuple(b) for b in basis]


def rref_reduce(basis: Sequence[Sequence[Fraction]], vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = [Fraction(v) for v in vec]
    for b in basis:
        p = next(i for i, v in enumerate(b) if v)
        if out[p]:
            c = out[p]
            for i in range(len(out)):
                out[i] -= c * b[i]
    return tuple(out)


def zq_submodule_nf(
    gens: Sequence[tuple[Sequence[int], Sequence[Fraction]]], rank: int
) -> ZQSubmodule:
    if rank > 3:
        raise ValueError("submodule normal forms are computed for rank <= 3 only")
    norm = tuple(
        (tuple(int(v) for v in u), tuple(Fraction(v) for v in e))
        for u, e in gens
    )
    u_rows = [list(u) for u, _ in norm]
    lattice = hnf_rows(u_rows, rank)
    span = rref([[Fraction(v) for v in row] for row in u_rows], rank)
    residues = []
    seen = set()
    for _, e in norm:
        r = rref_reduce(span, e)
        if any(r) and r not in seen:
            seen.add(r)
            residues.append(r)
    return ZQSubmodule(rank, norm, lattice, tuple(span), tuple(residues))


def submodule_split_contains(
    H: ZQSubmodule, u: Sequence[int], e: Sequence[Fraction]
) -> bool:
    """Membership in the reconstructed split shape: first slots in the
    lattice, second slots in the rational span."""
    rem, _ = reduce_by_hnf(H.lattice_rows, list(u))
    if any(rem):
        return False
    return not any(rref_reduce(H.span_rows, e))


def submodule_generated_contains(
    H: ZQSubmodule, u: Sequence[int], e: Sequence[Fraction]
) -> bool | None:
    """Membership in the generated submodule, decided exactly when possible.

    In the split case the second-slot discrepancy of any preimage lies in
    the rational span, making the test exact. In the general case only
    certain negatives are decided; None means undecided.
    """
    rem, coeffs = reduce_by_hnf(H.lattice_rows, list(u))
    if any(rem):
        return False
    if H.is_split:
        return submodule_split_contains(H, u, e)
    return None


def zq_is_n_presented(H: ZQSubmodule, n: int) -> bool:
    """Finitely generated submodules are 0-presented; beyond that the
    split shape is decisive (integer lattices have presentations of every
    length, and a surviving residue obstructs even one step)."""
    if n <= 0:
        return True
    return H.is_split
