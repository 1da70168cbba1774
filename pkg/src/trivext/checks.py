"""Registry-driven execution of structural identity checks.

Every check is (id, description, case generator, predicate). Cases are
JSON-serializable (recipe, data) pairs, so a counterexample witness replays
by rebuilding the instance from its recipe and re-running the predicate on
the recorded data. Sampling is seeded per check; identical (seed, config)
runs produce identical reports.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from . import ideals, resolve, uze as uzemod, zq as zqmod
from .ideals import (
    Ideal,
    all_ideals,
    annihilator,
    componentwise_check,
    from_carrier,
    ideal,
    ideal_product,
    intersect,
    inverse_finite,
    is_local,
    is_von_neumann_regular,
    minimal_generators,
    unit_ideal,
    v_closure_finite,
    v_finite_witness_finite,
)
from .lattice import subgroup as make_subgroup
from .modules import TrivialExtension, residue_field_power, trivial_extension
from .rings import (
    FiniteRing,
    make_product,
    make_quotient_poly,
    make_zmod,
    verify_ring_axioms,
)

Recipe = dict
Case = dict


# --- instance construction -----------------------------------------------------

def build_construct(c: Recipe) -> FiniteRing:
    op = c["op"]
    if op == "zmod":
        return make_zmod(c["n"])
    if op == "gfpoly":
        return make_quotient_poly(c["p"], c["f"])
    if op == "product":
        return make_product([build_construct(p) for p in c["parts"]])
    raise ValueError(f"unknown ring construction {op!r}")


@lru_cache(maxsize=None)
def _build_cached(recipe_json: str):
    recipe = json.loads(recipe_json)
    kind = recipe["kind"]
    if kind == "ring":
        return build_construct(recipe["construct"])
    if kind == "extension":
        base = build_construct(recipe["base"])
        fiber = residue_field_power(base, recipe["power"])
        return trivial_extension(base, fiber)
    if kind == "ring_spec":
        from . import ringspec

        env = ringspec.realize(ringspec.parse(recipe["spec"]))
        return env.rings[recipe["name"]]
    if kind in ("zq", "uze"):
        return kind
    raise ValueError(f"unknown instance kind {kind!r}")


def build_object(recipe: Recipe):
    return _build_cached(json.dumps(recipe, sort_keys=True))


def instance_ring(obj) -> FiniteRing:
    return obj.ring if isinstance(obj, TrivialExtension) else obj


def frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def str_frac(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def zq_gens_to_json(gens) -> list:
    return [[g.a, frac_str(g.q)] for g in gens]


def zq_gens_from_json(data) -> list[zqmod.ZQElement]:
    return [zqmod.ZQElement(a, str_frac(q)) for a, q in data]


def uze_to_json(x: uzemod.UZEElement) -> list:
    return [x.a, sorted(x.support)]


def uze_from_json(data) -> uzemod.UZEElement:
    return uzemod.UZEElement(data[0], frozenset(data[1]))


# --- suite ----------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    families: tuple[str, ...] = (
        "zmod", "truncated", "products", "m2zero", "mezero",
    )
    exhaustive_limit: int = 256
    sample_triples: int = 10_000
    zq_ideal_lists: int = 100
    zq_samples: int = 1000
    zq_coeff_bound: int = 12
    zq_den_bound: int = 12
    zq_submodule_instances: int = 200
    uze_instances: int = 80
    uze_samples: int = 1000
    uze_support_window: int = 8
    resolution_bound: int = 4

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class Instance:
    kind: str
    recipe: Recipe
    obj: object = field(compare=False)


@dataclass(frozen=True)
class InstanceSuite:
    config: SuiteConfig
    instances: tuple[Instance, ...]

    @property
    def seed(self) -> int:
        return self.config.seed

    def of_kind(self, *kinds: str) -> list[Instance]:
        return [inst for inst in self.instances if inst.kind in kinds]

    def rings(self) -> list[Instance]:
        return self.of_kind("ring", "extension")


_ZMOD_SIZES = (2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49)
_TRUNCATED = (
    (2, (0, 0, 1)), (2, (0, 0, 0, 1)), (2, (0, 0, 0, 0, 1)),
    (3, (0, 0, 1)), (3, (0, 0, 0, 1)), (5, (0, 0, 1)), (7, (0, 0, 1)),
    (2, (1, 1, 1)), (3, (1, 0, 1)), (2, (1, 1, 0, 1)),
)
_PRODUCTS = (
    ({"op": "zmod", "n": 2}, {"op": "zmod", "n": 3}),
    ({"op": "zmod", "n": 2}, {"op": "zmod", "n": 2}),
    ({"op": "zmod", "n": 4}, {"op": "zmod", "n": 3}),
    ({"op": "zmod", "n": 4}, {"op": "zmod", "n": 4}),
    ({"op": "zmod", "n": 2}, {"op": "zmod", "n": 3}, {"op": "zmod", "n": 5}),
    ({"op": "zmod", "n": 9}, {"op": "zmod", "n": 2}),
    ({"op": "zmod", "n": 16}, {"op": "zmod", "n": 25}),
    ({"op": "gfpoly", "p": 2, "f": [1, 1, 1]}, {"op": "zmod", "n": 2}),
)
_M2ZERO_EXTRA_RINGS = (
    {"op": "zmod", "n": 121},
    {"op": "zmod", "n": 169},
    {"op": "gfpoly", "p": 11, "f": [0, 0, 1]},
    {"op": "gfpoly", "p": 13, "f": [0, 0, 1]},
)
_M2ZERO_EXTENSIONS = (
    ({"op": "zmod", "n": 2}, 1), ({"op": "zmod", "n": 2}, 2), ({"op": "zmod", "n": 2}, 3),
    ({"op": "zmod", "n": 3}, 1), ({"op": "zmod", "n": 3}, 2),
    ({"op": "gfpoly", "p": 2, "f": [1, 1, 1]}, 1),
    ({"op": "gfpoly", "p": 2, "f": [1, 1, 1]}, 2),
    ({"op": "zmod", "n": 5}, 1),
    ({"op": "gfpoly", "p": 3, "f": [1, 0, 1]}, 1),
)
_MEZERO_EXTENSIONS = (
    ({"op": "zmod", "n": 4}, 1), ({"op": "zmod", "n": 4}, 2),
    ({"op": "zmod", "n": 8}, 1), ({"op": "zmod", "n": 8}, 2),
    ({"op": "zmod", "n": 9}, 1), ({"op": "zmod", "n": 16}, 1),
    ({"op": "zmod", "n": 25}, 1), ({"op": "zmod", "n": 27}, 1),
    ({"op": "gfpoly", "p": 2, "f": [0, 0, 1]}, 1),
    ({"op": "gfpoly", "p": 2, "f": [0, 0, 1]}, 2),
    ({"op": "gfpoly", "p": 2, "f": [0, 0, 0, 1]}, 1),
    ({"op": "gfpoly", "p": 2, "f": [0, 0, 0, 1]}, 2),
    ({"op": "gfpoly", "p": 3, "f": [0, 0, 1]}, 1),
)

KNOWN_FAMILIES = ("zmod", "truncated", "products", "m2zero", "mezero")


def generate_suite(config: SuiteConfig) -> InstanceSuite:
    """Deterministic instance suite; regeneration from the same config is
    exact, including every sampled generator list."""
    for fam in config.families:
        if fam not in KNOWN_FAMILIES:
            raise ValueError(f"unknown family {fam!r}")
    instances: list[Instance] = []

    def add_ring(construct: Recipe) -> None:
        recipe = {"kind": "ring", "construct": construct}
        instances.append(Instance("ring", recipe, build_object(recipe)))

    def add_extension(base: Recipe, power: int) -> None:
        recipe = {"kind": "extension", "base": base, "power": power}
        instances.append(Instance("extension", recipe, build_object(recipe)))

    if "zmod" in config.families:
        for n in _ZMOD_SIZES:
            add_ring({"op": "zmod", "n": n})
    if "truncated" in config.families:
        for p, f in _TRUNCATED:
            add_ring({"op": "gfpoly", "p": p, "f": list(f)})
    if "products" in config.families:
        for parts in _PRODUCTS:
            add_ring({"op": "product", "parts": list(parts)})
    if "m2zero" in config.families:
        for construct in _M2ZERO_EXTRA_RINGS:
            add_ring(construct)
        for base, r in _M2ZERO_EXTENSIONS:
            add_extension(base, r)
    if "mezero" in config.families:
        for base, r in _MEZERO_EXTENSIONS:
            add_extension(base, r)

    rng = random.Random(config.seed)
    for index in range(config.zq_ideal_lists):
        count = rng.randint(1, 3)
        gens = [
            zqmod.sample_element(rng, config.zq_coeff_bound, config.zq_den_bound)
            for _ in range(count)
        ]
        if all(g.is_zero() for g in gens):
            gens[0] = zqmod.ZQElement(0, Fraction(1))
        instances.append(Instance(
            "zq_ideal",
            {"kind": "zq"},
            tuple(gens),
        ))

    # the flagship generator list first, then random ones over ranks 1..3
    instances.append(Instance(
        "zq_submodule", {"kind": "zq"},
        (1, (((0,), (Fraction(1),)),)),
    ))
    for index in range(config.zq_submodule_instances):
        rank = 1 + index % 3
        count = rng.randint(1, 3)
        gens = []
        for _ in range(count):
            u = tuple(rng.randint(-config.zq_coeff_bound, config.zq_coeff_bound)
                      for _ in range(rank))
            e = tuple(
                zqmod.sample_rational(rng, config.zq_coeff_bound, config.zq_den_bound)
                for _ in range(rank)
            )
            gens.append((u, e))
        instances.append(Instance("zq_submodule", {"kind": "zq"}, (rank, tuple(gens))))

    for index in range(config.uze_instances):
        x = uzemod.sample_uze(rng, config.uze_support_window)
        instances.append(Instance("uze_element", {"kind": "uze"}, x))
    for index in range(config.uze_instances):
        count = rng.randint(1, 3)
        gens = tuple(
            uzemod.sample_uze(rng, config.uze_support_window) for _ in range(count)
        )
        instances.append(Instance("uze_ideal", {"kind": "uze"}, gens))

    return InstanceSuite(config, tuple(instances))


def check_rng(suite: InstanceSuite, check_id: str) -> random.Random:
    return random.Random(f"{suite.seed}:{check_id}")


# --- check registry -------------------------------------------------------------

@dataclass(frozen=True)
class CheckDef:
    id: str
    description: str
    status: str  # "expected" or "open"
    cases: Callable[[InstanceSuite], Iterator[tuple[Recipe, Case]]]
    predicate: Callable[[Recipe, Case], dict | None]


@dataclass
class CheckReport:
    check: str
    status: str  # "confirmed" | "counterexample" | "skipped"
    witness: dict | None
    reason: str | None
    instances_run: int
    elapsed: float

    def to_json(self) -> dict:
        # elapsed stays off the wire so identical runs serialize identically
        return {
            "check": self.check,
            "status": self.status,
            "witness": self.witness,
            "reason": self.reason,
            "instances_run": self.instances_run,
        }


REGISTRY: dict[str, CheckDef] = {}


def register(
    check_id: str,
    description: str,
    cases: Callable,
    predicate: Callable,
    status: str = "expected",
) -> None:
    REGISTRY[check_id] = CheckDef(check_id, description, status, cases, predicate)


def _shrink(defn: CheckDef, recipe: Recipe, case: Case) -> Case:
    """Drop list entries (generator-style fields) while the failure persists."""
    current = dict(case)
    changed = True
    while changed:
        changed = False
        for key, value in list(current.items()):
            if not isinstance(value, list) or len(value) <= 1:
                continue
            for i in range(len(value)):
                candidate = dict(current)
                candidate[key] = value[:i] + value[i + 1:]
                try:
                    if defn.predicate(recipe, candidate) is not None:
                        current = candidate
                        changed = True
                        break
                except Exception:
                    continue
            if changed:
                break
    return current


def run_check(check_id: str, suite: InstanceSuite) -> CheckReport:
    if check_id not in REGISTRY:
        raise KeyError(f"unregistered check id {check_id!r}")
    defn = REGISTRY[check_id]
    start = time.perf_counter()
    count = 0
    for recipe, case in defn.cases(suite):
        count += 1
        failure = defn.predicate(recipe, case)
        if failure is not None:
            case = _shrink(defn, recipe, case)
            failure = defn.predicate(recipe, case) or failure
            witness = {
                "check": check_id,
                "recipe": recipe,
                "case": case,
                "detail": failure,
            }
            return CheckReport(
                check_id, "counterexample", witness, None, count,
                time.perf_counter() - start,
            )
    if count == 0:
        return CheckReport(
            check_id, "skipped", None,
            "no applicable instances in this suite", 0,
            time.perf_counter() - start,
        )
    return CheckReport(
        check_id, "confirmed", None, None, count, time.perf_counter() - start
    )


def replay(witness: dict) -> bool:
    """Re-run a counterexample; True means it still fails."""
    try:
        defn = REGISTRY[witness["check"]]
        return defn.predicate(witness["recipe"], witness["case"]) is not None
    except KeyError as exc:
        raise ValueError(f"malformed witness: missing {exc}")


def run_suite(check_ids: list[str], suite: InstanceSuite) -> list[CheckReport]:
    return [run_check(cid, suite) for cid in check_ids]


def all_check_ids() -> list[str]:
    return list(REGISTRY)


# --- helpers shared by checks ----------------------------------------------------

def _local_square_zero(ring: FiniteRing) -> Ideal | None:
    """The maximal ideal when the ring is local with a square-zero radical."""
    local, m = is_local(ring)
    if not local:
        return None
    if not ideal_product(m, m).is_zero():
        return None
    return m


def _me_zero_extension(obj) -> bool:
    if not isinstance(obj, TrivialExtension):
        return False
    base, fiber = obj.base, obj.fiber
    local, m = is_local(base)
    if not local:
        return False
    return all(
        fiber.act(g, fiber.basis_vec(j)) == fiber.zero_vec
        for g in m.generators
        for j in range(fiber.rank)
    )


def _extension_subgroup(ext: TrivialExtension, a_carrier, full_fiber: bool):
    """Subgroup A' ~ E (or A' ~ 0) of the extension ring's additive group."""
    ring = ext.ring
    rows = []
    for vec in a_carrier:
        rows.append(list(vec) + [0] * ext.fiber.rank)
    if full_fiber:
        for j in range(ext.fiber.rank):
            row = [0] * ext.base.rank + list(ext.fiber.basis_vec(j))
            rows.append(row)
    return make_subgroup(ring.orders, rows)


def _carrier_of_subgroup(ring: FiniteRing, sub) -> frozenset:
    return frozenset(sub.elements(ring.size))


# --- ring axiom checks -----------------------------------------------------------

def _ax_cases(suite: InstanceSuite):
    for inst in suite.rings():
        yield inst.recipe, {"exhaustive_limit": suite.config.exhaustive_limit}


def _ax_predicate(recipe: Recipe, case: Case) -> dict | None:
    obj = build_object(recipe)
    ring = instance_ring(obj)
    config_limit = case.get("exhaustive_limit", 256)
    witness = verify_ring_axioms(ring, exhaustive_limit=config_limit)
    if witness is not None:
        return {"law_violation": {k: list(v) if isinstance(v, tuple) else v
                                  for k, v in witness.items()}}
    if isinstance(obj, TrivialExtension):
        if ring.size <= config_limit:
            pairs = ((x, y) for x in ring.vectors() for y in ring.vectors())
        else:
            rng = random.Random(ring.size)
            pairs = ((ring.sample_vec(rng), ring.sample_vec(rng))
                     for _ in range(10000))
        for x, y in pairs:
            if ring.mul_vec(x, y) != obj.law_product(x, y):
                return {"law_violation": {"law": "extension product",
                                          "a": list(x), "b": list(y)}}
    return None


register("ax.ring",
         "ring axioms hold elementwise and extension products follow the "
         "defining law",
         _ax_cases, _ax_predicate)


# --- local square-zero checks ------------------------------------------------------

def _m2zero_cases(suite: InstanceSuite):
    for inst in suite.rings():
        ring = instance_ring(inst.obj)
        if ring.size <= 256 and _local_square_zero(ring) is not None:
            yield inst.recipe, {}


def _ex24_ann_predicate(recipe: Recipe, case: Case) -> dict | None:
    ring = instance_ring(build_object(recipe))
    m = _local_square_zero(ring)
    if m is None:
        return {"error": "instance is not local with square-zero radical"}
    targets = case.get("elements")
    vectors = [tuple(v) for v in targets] if targets else sorted(m.carrier)
    for c in vectors:
        if c == ring.zero_vec:
            continue
        ann = annihilator(ring, c)
        if ann.carrier != m.carrier:
            return {
                "element": list(c),
                "annihilator": [list(v) for v in ann.sorted_carrier()],
                "maximal_ideal": [list(v) for v in m.sorted_carrier()],
            }
    return None


register("ex2.4.ann",
         "in a local ring with square-zero radical, the annihilator of every "
         "nonzero radical element is the whole radical",
         _m2zero_cases, _ex24_ann_predicate)


def _ex24_ker_predicate(recipe: Recipe, case: Case) -> dict | None:
    ring = instance_ring(build_object(recipe))
    m = _local_square_zero(ring)
    if m is None:
        return {"error": "instance is not local with square-zero radical"}
    chosen = case.get("ideal_gens")
    if chosen is not None:
        ideal_list = [ideal(ring, [tuple(g) for g in chosen])]
    else:
        ideal_list = [
            I for I in all_ideals(ring) if not I.is_zero() and not I.is_whole()
        ]
    for I in ideal_list:
        mg = minimal_generators(I)
        if mg.mu == 0:
            continue
        syz = resolve.minimal_syzygy(I, mg.gens)
        rows = []
        n = mg.mu
        for block in range(n):
            for g in m.generators:
                row = [0] * (ring.rank * n)
                for t, v in enumerate(g):
                    row[block * ring.rank + t] = v
                rows.append(row)
        expected = make_subgroup(syz.carrier.orders, rows)
        if syz.carrier != expected:
            return {
                "ideal_gens": [list(g) for g in mg.gens],
                "syzygy_size": syz.size,
                "expected_size": expected.size,
            }
    return None


register("ex2.4.ker",
         "minimal syzygies of ideals in local square-zero-radical rings are "
         "full radical powers",
         _m2zero_cases, _ex24_ker_predicate)


def _ex24_ker_instance_count(suite: InstanceSuite) -> int:
    total = 0
    for inst in suite.rings():
        ring = instance_ring(inst.obj)
        if ring.size > 256:
            continue
        if _local_square_zero(ring) is None:
            continue
        total += sum(
            1 for I in all_ideals(ring) if not I.is_zero() and not I.is_whole()
        )
    return total


# --- extension checks ---------------------------------------------------------------

def _mezero_cases(suite: InstanceSuite):
    for inst in suite.of_kind("extension"):
        if _me_zero_extension(inst.obj):
            yield inst.recipe, {}


def _lem27_predicate(recipe: Recipe, case: Case) -> dict | None:
    ext = build_object(recipe)
    ring = ext.ring
    base, fiber = ext.base, ext.fiber
    m = ideals.maximal_ideal(base)
    fiber_vecs = list(fiber.vectors())
    if "element" in case:
        pool = [tuple(case["element"])]
    else:
        pool = []
        for a in sorted(m.carrier):
            for e in (fiber.zero_vec, *[fiber.basis_vec(j) for j in range(fiber.rank)]):
                pool.append(ext.embed(a, e))
    for c in pool:
        a, e = ext.proj_a(c), ext.proj_e(c)
        if c == ring.zero_vec:
            continue
        ann = annihilator(ring, c)
        if any(a):
            base_ann = annihilator(base, a)
            expected = frozenset(
                ext.embed(b, f) for b in base_ann.carrier for f in fiber_vecs
            )
        else:
            expected = frozenset(
                ext.embed(b, f) for b in m.carrier for f in fiber_vecs
            )
        if ann.carrier != expected:
            return {
                "element": list(c),
                "annihilator_size": ann.size,
                "expected_size": len(expected),
            }
    return None


register("lem2.7.formulas",
         "annihilators in the extension split as (base annihilator) times "
         "the fiber, or radical times fiber for pure-fiber elements",
         _mezero_cases, _lem27_predicate)


def _thm26_ker_cases(suite: InstanceSuite):
    rng = check_rng(suite, "thm2.6.ker")
    for inst in suite.of_kind("extension"):
        if not _me_zero_extension(inst.obj):
            continue
        ext = inst.obj
        m = ideals.maximal_ideal(ext.base)
        nonzero = [a for a in sorted(m.carrier) if any(a)]
        lists = [[a] for a in nonzero[:4]]
        if nonzero:
            pairs = [(a, b) for a in nonzero for b in nonzero]
            rng.shuffle(pairs)
            lists.extend([list(p) for p in pairs[:3]])
            lists.append([nonzero[0], ext.base.zero_vec])
        for gens in lists:
            yield inst.recipe, {"base_gens": [list(a) for a in gens]}


def _thm26_ker_predicate(recipe: Recipe, case: Case) -> dict | None:
    from .modules import free_module, kernel, map_on_generators

    ext = build_object(recipe)
    ring, base, fiber = ext.ring, ext.base, ext.fiber
    gens = [tuple(a) for a in case["base_gens"]]
    n = len(gens)
    u = map_on_generators(
        ring, n, free_module(ring, 1),
        [ext.embed(a, fiber.zero_vec) for a in gens],
    )
    ker_u = kernel(u)

    v = map_on_generators(base, n, free_module(base, 1), gens)
    ker_v = kernel(v)

    # expected: base-kernel rows in the base slots, full fiber in each block
    rows = []
    width = ring.rank * n
    for row in ker_v.carrier.rows:
        out = [0] * width
        for block in range(n):
            for t in range(base.rank):
                out[block * ring.rank + t] = row[block * base.rank + t]
        rows.append(out)
    for block in range(n):
        for j in range(fiber.rank):
            out = [0] * width
            out[block * ring.rank + base.rank + j] = 1
            rows.append(out)
    expected = make_subgroup(ker_u.carrier.orders, rows)
    if ker_u.carrier != expected:
        return {
            "kernel_size": ker_u.size,
            "expected_size": expected.size,
        }
    return None


register("thm2.6.ker",
         "syzygies of base-slot generator tuples split as the base syzygy "
         "times full fiber blocks",
         _thm26_ker_cases, _thm26_ker_predicate)


def _ex25_cases(suite: InstanceSuite):
    for inst in suite.of_kind("extension"):
        if not _me_zero_extension(inst.obj):
            continue
        ext = inst.obj
        if ext.fiber.size != ext.base.size // ideals.maximal_ideal(ext.base).size:
            continue  # the strictness instance lives over the residue fiber
        m = ideals.maximal_ideal(ext.base)
        for x in sorted(m.carrier):
            if any(x):
                yield inst.recipe, {"x": list(x)}


def _ex25_predicate(recipe: Recipe, case: Case) -> dict | None:
    ext = build_object(recipe)
    ring, fiber = ext.ring, ext.fiber
    x = tuple(case["x"])
    one_e = fiber.basis_vec(0) if fiber.rank else fiber.zero_vec
    J = ideal(ring, [ext.embed(x, one_e)])
    proj_a = {ext.proj_a(v) for v in J.carrier}
    proj_e = {ext.proj_e(v) for v in J.carrier}
    box = frozenset(ext.embed(a, e) for a in proj_a for e in proj_e)
    missing = ext.embed(x, fiber.zero_vec)
    if not (J.carrier < box):
        return {"x": list(x), "reason": "containment is not strict"}
    if missing in J.carrier or missing not in box:
        return {"x": list(x), "reason": "expected witness element misplaced"}
    return None


register("ex2.5.strict",
         "the principal ideal on (radical element, fiber generator) sits "
         "strictly inside the box of its slotwise projections",
         _ex25_cases, _ex25_predicate)


def _thm26_intersection_cases(suite: InstanceSuite):
    for inst in suite.of_kind("extension"):
        if not _me_zero_extension(inst.obj):
            continue
        ext = inst.obj
        if ext.ring.size > 64:
            continue
        m = ideals.maximal_ideal(ext.base)
        nonzero = [a for a in sorted(m.carrier) if any(a)][:2]
        fiber_choices = [ext.fiber.zero_vec] + [
            ext.fiber.basis_vec(j) for j in range(min(ext.fiber.rank, 1))
        ]
        for a1 in nonzero:
            for a2 in nonzero:
                for e1 in fiber_choices:
                    for e2 in fiber_choices:
                        if (a1, e1) >= (a2, e2):
                            continue
                        yield inst.recipe, {
                            "gens": [
                                list(ext.embed(a1, e1)),
                                list(ext.embed(a2, e2)),
                            ]
                        }


def _thm26_intersection_predicate(recipe: Recipe, case: Case) -> dict | None:
    ext = build_object(recipe)
    ring, base = ext.ring, ext.base
    gens = [tuple(g) for g in case["gens"]]
    principals = [ideal(ring, [g]) for g in gens]
    J = principals[0]
    for P in principals[1:]:
        J = intersect(J, P)
    # hypothesis: the intersection is strictly below every principal factor
    if any(J.carrier == P.carrier for P in principals):
        return None
    base_parts = [ideal(base, [ext.proj_a(g)]) for g in gens]
    base_cap = base_parts[0]
    for P in base_parts[1:]:
        base_cap = intersect(base_cap, P)
    expected = frozenset(
        ext.embed(a, ext.fiber.zero_vec) for a in base_cap.carrier
    )
    if J.carrier != expected:
        return {
            "gens": [list(g) for g in gens],
            "intersection": [list(v) for v in J.sorted_carrier()],
            "expected": [list(v) for v in sorted(expected)],
        }
    return None


register("thm2.6.intersection",
         "whether intersections of principal ideals with radical first slots "
         "collapse to (base intersection) with zero fiber; recorded verdict, "
         "never a process failure",
         _thm26_intersection_cases, _thm26_intersection_predicate,
         status="open")


# --- rational-tier checks -------------------------------------------------------

def _zq_ideal_cases(suite: InstanceSuite):
    for inst in suite.of_kind("zq_ideal"):
        yield inst.recipe, {"gens": zq_gens_to_json(inst.obj)}


def _thm28_ann_predicate(recipe: Recipe, case: Case) -> dict | None:
    rng = random.Random(json.dumps(case, sort_keys=True))
    gens = zq_gens_from_json(case["gens"])
    for x in gens:
        claimed = zqmod.zq_annihilator(x)
        probes = [
            zqmod.ZQElement(0, Fraction(1)),
            zqmod.ZQElement(1, Fraction(0)),
            zqmod.ZQElement(0, x.q if x.q else Fraction(1)),
        ] + [zqmod.sample_element(rng) for _ in range(25)]
        for y in probes:
            member = zqmod.frac_contains(claimed, Fraction(y.a), y.q)
            annihilates = (x * y).is_zero()
            if member != annihilates:
                return {
                    "element": [x.a, frac_str(x.q)],
                    "probe": [y.a, frac_str(y.q)],
                    "claimed": str(claimed),
                }
        if zqmod.zq_is_regular(x) and not isinstance(claimed, zqmod.ZeroIdeal) \
                and not x.is_zero():
            return {"element": [x.a, frac_str(x.q)], "claimed": str(claimed)}
    return None


register("thm2.8.ann",
         "annihilators over the rational tier: regular elements kill nothing, "
         "pure second-slot elements are killed by the whole second-slot line",
         _zq_ideal_cases, _thm28_ann_predicate)


def _thm28_inv_predicate(recipe: Recipe, case: Case) -> dict | None:
    rng = random.Random(json.dumps(case, sort_keys=True))
    gens = zq_gens_from_json(case["gens"])
    nf = zqmod.zq_ideal_nf(gens)
    if zqmod.nf_is_zero(nf):
        return None
    inv = zqmod.zq_inverse(nf)
    if isinstance(nf, zqmod.FullLine):
        # the inverse must not see the second slots at all
        stripped = zqmod.zq_ideal_nf(
            [zqmod.ZQElement(g.a, Fraction(0)) for g in gens]
        )
        if zqmod.zq_inverse(stripped) != inv:
            return {"nf": str(nf), "stripped_inverse": str(zqmod.zq_inverse(stripped))}
    frac = zqmod.to_fractional(nf)
    for _ in range(40):
        x = (zqmod.sample_rational(rng), zqmod.sample_rational(rng))
        claimed = zqmod.frac_contains(inv, *x)
        probed = zqmod.inverse_membership_probe(frac, x, rng)
        if claimed != probed:
            return {
                "nf": str(nf),
                "x": [frac_str(x[0]), frac_str(x[1])],
                "claimed": claimed,
                "probed": probed,
            }
    return None


register("thm2.8.inv",
         "the closed-form inverse table matches definition-level membership "
         "and ignores second slots of full-line ideals",
         _zq_ideal_cases, _thm28_inv_predicate)


def _thm28_intersect_cases(suite: InstanceSuite):
    rng = check_rng(suite, "thm2.8.intersect")
    for index in range(60):
        count = rng.randint(2, 3)
        gens = []
        for _ in range(count):
            a = 0
            while a == 0:
                a = rng.randint(-12, 12)
            gens.append(zqmod.ZQElement(a, zqmod.sample_rational(rng)))
        yield {"kind": "zq"}, {"gens": zq_gens_to_json(gens)}


def _thm28_intersect_predicate(recipe: Recipe, case: Case) -> dict | None:
    from math import lcm

    rng = random.Random(json.dumps(case, sort_keys=True))
    gens = zq_gens_from_json(case["gens"])
    nfs = [zqmod.zq_ideal_nf([g]) for g in gens]
    folded = nfs[0]
    for nf in nfs[1:]:
        folded = zqmod.zq_intersect(folded, nf)
    expected = zqmod.FullLine(lcm(*(abs(g.a) for g in gens)))
    if folded != expected:
        return {"folded": str(folded), "expected": str(expected)}
    for _ in range(60):
        x = zqmod.sample_element(rng)
        in_all = all(zqmod.ideal_contains([g], x) for g in gens)
        in_nf = zqmod.nf_contains(folded, x)
        if in_all != in_nf:
            return {
                "x": [x.a, frac_str(x.q)],
                "in_every_principal": in_all,
                "in_normal_form": in_nf,
            }
    return None


register("thm2.8.intersect",
         "intersections of principal ideals with nonzero first slots keep "
         "the full second slot and intersect the strides",
         _thm28_intersect_cases, _thm28_intersect_predicate)


def _thm28_nonfc_cases(suite: InstanceSuite):
    yield {"kind": "zq"}, {"element": [0, "1/1"]}


def _thm28_nonfc_predicate(recipe: Recipe, case: Case) -> dict | None:
    a, q = case["element"]
    x = zqmod.ZQElement(a, str_frac(q))
    ann = zqmod.zq_annihilator(x)
    if not isinstance(ann, zqmod.ZeroFull):
        return {"annihilator": str(ann)}
    if zqmod.zq_is_fg(ann):
        return {"annihilator": str(ann), "flagged_fg": True}
    return None


register("thm2.8.nonfc",
         "the annihilator of the unit second-slot element is the whole "
         "second-slot line, flagged not finitely generated",
         _thm28_nonfc_cases, _thm28_nonfc_predicate)


def _thm28_vfinite_predicate(recipe: Recipe, case: Case) -> dict | None:
    gens = zq_gens_from_json(case["gens"])
    nf = zqmod.zq_ideal_nf(gens)
    if zqmod.nf_is_zero(nf):
        return None
    witness = zqmod.zq_v_finite_witness(nf)
    if zqmod.zq_inverse(zqmod.zq_ideal_nf(witness)) != zqmod.zq_inverse(nf):
        return {"nf": str(nf), "witness": zq_gens_to_json(witness)}
    return None


register("thm2.8.vfinite",
         "every finitely generated ideal of the rational tier is v-finite, "
         "with an explicit witness whose inverse is recomputed",
         _zq_ideal_cases, _thm28_vfinite_predicate)


def _prop22_cases(suite: InstanceSuite):
    zq_instances = suite.of_kind("zq_ideal")
    for first, second in zip(zq_instances, zq_instances[1:]):
        yield {"kind": "zq"}, {
            "gens_i": zq_gens_to_json(first.obj),
            "gens_j": zq_gens_to_json(second.obj),
        }
    for inst in suite.rings():
        ring = instance_ring(inst.obj)
        if ring.size <= 128:
            yield inst.recipe, {"finite": True}


def _prop22_predicate(recipe: Recipe, case: Case) -> dict | None:
    if case.get("finite"):
        ring = instance_ring(build_object(recipe))
        ids = [I for I in all_ideals(ring) if not I.is_zero()][:6]
        for I in ids:
            for J in ids:
                i1 = v_finite_witness_finite(I)
                j1 = v_finite_witness_finite(J)
                lhs = intersect(v_closure_finite(I), v_closure_finite(J))
                rhs = inverse_finite(ideals.ideal_sum(i1, j1))
                if lhs.carrier != rhs.carrier:
                    return {
                        "I": [list(v) for v in I.sorted_carrier()],
                        "J": [list(v) for v in J.sorted_carrier()],
                    }
        return None
    gens_i = zq_gens_from_json(case["gens_i"])
    gens_j = zq_gens_from_json(case["gens_j"])
    I = zqmod.zq_ideal_nf(gens_i)
    J = zqmod.zq_ideal_nf(gens_j)
    if zqmod.nf_is_zero(I) or zqmod.nf_is_zero(J):
        return None
    lhs = zqmod.zq_frac_intersect(zqmod.zq_v_closure(I), zqmod.zq_v_closure(J))
    # witnesses with closure equal to the witness inverse: the inverses do
    i1 = zqmod.zq_inverse(I)
    j1 = zqmod.zq_inverse(J)
    rhs = zqmod.zq_inverse(zqmod.zq_frac_sum(i1, j1))
    if lhs != rhs:
        return {"I": str(I), "J": str(J), "lhs": str(lhs), "rhs": str(rhs)}
    return None


register("prop2.2.chain",
         "closure intersections equal the inverse of summed inverse-witnesses, "
         "on both the rational tier and (degenerately) every finite ring",
         _prop22_cases, _prop22_predicate)


def _prop35_cases(suite: InstanceSuite):
    rng = check_rng(suite, "prop3.5.bezout")
    for index in range(120):
        gens = [zqmod.sample_element(rng) for _ in range(2)]
        if all(g.is_zero() for g in gens):
            gens[0] = zqmod.ZQElement(0, Fraction(1, 2))
        yield {"kind": "zq"}, {"gens": zq_gens_to_json(gens)}


def _prop35_predicate(recipe: Recipe, case: Case) -> dict | None:
    rng = random.Random(json.dumps(case, sort_keys=True))
    gens = zq_gens_from_json(case["gens"])
    nf = zqmod.zq_ideal_nf(gens)
    principal, gen = zqmod.zq_is_principal(nf)
    if not principal:
        return {"nf": str(nf)}
    if zqmod.zq_ideal_nf([gen]) != nf:
        return {"nf": str(nf), "generator": [gen.a, frac_str(gen.q)]}
    if not zqmod.ideal_contains(gens, gen):
        return {"nf": str(nf), "generator_outside": True}
    for g in gens:
        if not zqmod.nf_contains(nf, g):
            return {"nf": str(nf), "generator_missing": [g.a, frac_str(g.q)]}
    for _ in range(20):
        x = zqmod.random_member(rng, gens)
        if not zqmod.nf_contains(nf, x):
            return {"nf": str(nf), "member_outside": [x.a, frac_str(x.q)]}
    return None


register("prop3.5.bezout",
         "every 2-generated ideal of the rational tier is principal, with a "
         "verified generator",
         _prop35_cases, _prop35_predicate)


def _submodule_cases(suite: InstanceSuite):
    for inst in suite.of_kind("zq_submodule"):
        rank, gens = inst.obj
        yield {"kind": "zq"}, {
            "rank": rank,
            "gens": [
                [list(u), [frac_str(v) for v in e]] for u, e in gens
            ],
        }


def _submodule_parse(case: Case):
    rank = case["rank"]
    gens = [
        (tuple(u), tuple(str_frac(v) for v in e))
        for u, e in case["gens"]
    ]
    return rank, gens


def _lem32_predicate(recipe: Recipe, case: Case) -> dict | None:
    rng = random.Random(json.dumps(case, sort_keys=True))
    rank, gens = _submodule_parse(case)
    H = zqmod.zq_submodule_nf(gens, rank)
    # the vector-space criterion, recomputed from scratch per generator
    residue_free = all(
        not any(zqmod.rref_reduce(H.span_rows, e)) for _, e in gens
    )
    if H.is_split != residue_free:
        return {"split": H.is_split, "residue_free": residue_free}
    if H.is_split:
        for _ in range(25):
            member = _random_submodule_member(rng, gens, rank)
            if not zqmod.submodule_split_contains(H, *member):
                return {"member_outside_split_shape": str(member)}
    else:
        bad = next(
            (e for _, e in gens if any(zqmod.rref_reduce(H.span_rows, e))), None
        )
        if bad is None or zqmod.submodule_split_contains(
            H, tuple(0 for _ in range(rank)), bad
        ):
            return {"residue_not_witnessed": True}
    return None


def _random_submodule_member(rng: random.Random, gens, rank):
    u_acc = [0] * rank
    e_acc = [Fraction(0)] * rank
    for u, e in gens:
        b = rng.randint(-6, 6)
        f = zqmod.sample_rational(rng, 6, 6)
        for i in range(rank):
            u_acc[i] += b * u[i]
            e_acc[i] += b * e[i] + f * u[i]
    return tuple(u_acc), tuple(e_acc)


register("lem3.2.split",
         "a generated submodule splits as lattice-with-rational-span exactly "
         "when every second slot reduces into the span",
         _submodule_cases, _lem32_predicate)


def _lem33_predicate(recipe: Recipe, case: Case) -> dict | None:
    rank, gens = _submodule_parse(case)
    H = zqmod.zq_submodule_nf(gens, rank)
    if not zqmod.zq_is_n_presented(H, 0):
        return {"zero_presented": False}
    for n in (1, 2, 3):
        if zqmod.zq_is_n_presented(H, n) != H.is_split:
            return {"n": n, "split": H.is_split}
    return None


register("lem3.3.present",
         "presentability beyond level zero coincides with the split shape",
         _submodule_cases, _lem33_predicate)


# --- boolean-fiber tier checks ----------------------------------------------------

def _uze_element_cases(suite: InstanceSuite):
    for inst in suite.of_kind("uze_element"):
        yield {"kind": "uze"}, {"element": uze_to_json(inst.obj)}


def _ex23_regular_predicate(recipe: Recipe, case: Case) -> dict | None:
    x = uze_from_json(case["element"])
    flagged = uzemod.uze_is_regular(x)
    found = uzemod.bounded_zero_divisor_search(x)
    if flagged and found is not None:
        return {"element": case["element"], "witness": uze_to_json(found)}
    if not flagged:
        witness = uzemod.uze_zero_divisor_witness(x)
        if witness is None or not (x * witness).is_zero():
            return {"element": case["element"], "missing_witness": True}
    return None


register("ex2.3.regular",
         "regularity over the boolean-fiber tier is exactly odd-and-zero-"
         "support, backed by bounded zero-divisor search",
         _uze_element_cases, _ex23_regular_predicate)


def _ex23_ann_cases(suite: InstanceSuite):
    yield {"kind": "uze"}, {"element": [2, []]}
    for inst in suite.of_kind("uze_element"):
        yield {"kind": "uze"}, {"element": uze_to_json(inst.obj)}


def _ex23_ann_predicate(recipe: Recipe, case: Case) -> dict | None:
    rng = random.Random(json.dumps(case, sort_keys=True))
    x = uze_from_json(case["element"])
    desc = uzemod.uze_annihilator(x)
    if case["element"] == [2, []]:
        if desc.kind != "disjoint" or desc.parameter or desc.is_finitely_generated:
            return {"description": desc.describe()}
    window = max(x.support, default=-1) + 3
    probes = [
        uzemod.UZEElement(0, frozenset()),
        uzemod.UZEElement(0, x.support),
        uzemod.UZEElement(1, x.support),
        uzemod.UZEElement(2, frozenset({window - 1})),
    ] + [uzemod.sample_uze(rng, window) for _ in range(40)]
    for y in probes:
        if desc.contains(y) != (x * y).is_zero():
            return {
                "element": case["element"],
                "probe": uze_to_json(y),
                "description": desc.describe(),
            }
    return None


register("ex2.3.ann",
         "annihilator descriptions over the boolean-fiber tier match direct "
         "products elementwise; the even pure-integer case is flagged not "
         "finitely generated",
         _ex23_ann_cases, _ex23_ann_predicate)


def _uze_ideal_cases(suite: InstanceSuite):
    for inst in suite.of_kind("uze_ideal"):
        yield {"kind": "uze"}, {"gens": [uze_to_json(g) for g in inst.obj]}


def _ex23_inv_predicate(recipe: Recipe, case: Case) -> dict | None:
    rng = random.Random(json.dumps(case, sort_keys=True))
    gens = [uze_from_json(g) for g in case["gens"]]
    cls = uzemod.uze_inverse_class(gens)
    if isinstance(cls, uzemod.TotalQuotient):
        if any(g.a for g in gens):
            return {"class": str(cls), "first_slots": [g.a for g in gens]}
        for b in (1, 3, 5, 7, 9, 11, 13, 15):
            s = uzemod.UZEElement(b, frozenset())
            for g in gens:
                if s * g != g:
                    return {"regular": b, "generator": uze_to_json(g)}
        return None
    # principal-equivalence: y*J inside sR iff y*(x,0) inside sR
    for _ in range(15):
        y = uzemod.sample_uze(rng)
        for b in (1, 3, 5, 7, 9, 11, 13, 15):
            lhs = all(
                uzemod.regular_multiple_contains(b, y * g) for g in gens
            )
            rhs = uzemod.regular_multiple_contains(
                b, y * uzemod.UZEElement(cls.x, frozenset())
            )
            if lhs != rhs:
                return {
                    "class": str(cls),
                    "y": uze_to_json(y),
                    "regular": b,
                }
    return None


register("ex2.3.inv",
         "inverse classification over the boolean-fiber tier: zero first-"
         "slot ideals invert to the whole quotient ring, otherwise the gcd "
         "principal ideal is equivalent",
         _uze_ideal_cases, _ex23_inv_predicate)


def _ex34_cases(suite: InstanceSuite):
    rng = check_rng(suite, "ex3.4.regann")
    for _ in range(40):
        a = 0
        while a == 0:
            a = rng.randint(-12, 12)
        yield {"kind": "zq"}, {"a": a}


def _ex34_predicate(recipe: Recipe, case: Case) -> dict | None:
    rng = random.Random(json.dumps(case, sort_keys=True))
    a = case["a"]
    gen = zqmod.ZQElement(a, Fraction(0))
    ann = zqmod.zq_annihilator(gen)
    if not isinstance(ann, zqmod.ZeroIdeal):
        return {"a": a, "annihilator": str(ann)}
    for _ in range(30):
        y = zqmod.sample_element(rng)
        if not y.is_zero() and (y * gen).is_zero():
            return {"a": a, "nonzero_annihilating": [y.a, frac_str(y.q)]}
    return None


register("ex3.4.regann",
         "principal ideals on regular elements of the rational tier have "
         "zero annihilator",
         _ex34_cases, _ex34_predicate)


# --- finite-tier global checks ------------------------------------------------------

def _product_cases(suite: InstanceSuite):
    for inst in suite.of_kind("ring"):
        if instance_ring(inst.obj).components is not None:
            yield inst.recipe, {}


def _prod_predicate(recipe: Recipe, case: Case) -> dict | None:
    ring = instance_ring(build_object(recipe))
    report = componentwise_check(ring, seed=0)
    if not report["ok"]:
        bad = {k: v for k, v in report["identities"].items() if v["status"] == "fail"}
        return {"identities": {k: v["witness"] for k, v in bad.items()}}
    return None


register("prod.componentwise",
         "annihilators, intersections and inverses over product rings are "
         "computed slotwise",
         _product_cases, _prod_predicate)


def _all_ring_cases(suite: InstanceSuite):
    for inst in suite.rings():
        yield inst.recipe, {}


def _fin_vtrivial_predicate(recipe: Recipe, case: Case) -> dict | None:
    ring = instance_ring(build_object(recipe))
    zero = ring.zero_vec
    for v in ring.vectors():
        if ring.is_unit_vec(v):
            continue
        if not any(
            w != zero and ring.mul_vec(v, w) == zero for w in ring.vectors()
        ):
            return {"element": list(v), "reason": "neither unit nor zero divisor"}
    for I in all_ideals(ring):
        if I.is_zero():
            continue
        if inverse_finite(I).carrier != unit_ideal(ring).carrier:
            return {"ideal": [list(v) for v in I.sorted_carrier()],
                    "reason": "inverse is not the whole ring"}
        if v_closure_finite(I).carrier != unit_ideal(ring).carrier:
            return {"ideal": [list(v) for v in I.sorted_carrier()],
                    "reason": "closure is not the whole ring"}
    return None


register("fin.vtrivial",
         "finite rings are their own quotient rings: every element is a unit "
         "or zero divisor, and every nonzero ideal has whole-ring inverse and "
         "closure, computed not assumed",
         _all_ring_cases, _fin_vtrivial_predicate)


def _thm310_cases(suite: InstanceSuite):
    for inst in suite.rings():
        if instance_ring(inst.obj).size <= 512:
            yield inst.recipe, {}


def _thm310_predicate(recipe: Recipe, case: Case) -> dict | None:
    ring = instance_ring(build_object(recipe))
    vnr, vnr_witness = is_von_neumann_regular(ring)
    report = resolve.weak_nd_check_finite(ring, 2, 0, bound=4)
    if report["holds"] != vnr:
        return {
            "von_neumann_regular": vnr,
            "weak_2_0": report["holds"],
            "witnesses": report["witnesses"][:1],
            "vnr_witness": None if vnr_witness is None
            else [list(v) for v in vnr_witness.sorted_carrier()],
        }
    return None


register("thm3.10.fin",
         "the weak (2,0) property agrees with von Neumann regularity on "
         "every finite suite ring",
         _thm310_cases, _thm310_predicate)
