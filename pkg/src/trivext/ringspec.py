"""A small declarative text format for naming rings, modules and ideals.

One statement per line::

    # comment
    ring A = zmod 4
    ring F = gfpoly 2 1 1 1
    ring P = product A F
    module E = residue_field_power A 1
    module V = free A 2
    ring R = trivext A E
    ring Q = zq
    ideal I in R = (2,0) (0,1)
    ideal J in Q = (2,1/3) (0,7)

Polynomial coefficients are lowest degree first; elements are parenthesized
coordinate tuples with no interior spaces, rational slots as n/d. Parsing
normalizes values, printing is canonical, and parse(print(spec)) == spec.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import zq as zqmod
from .ideals import Ideal, ideal
from .modules import FiniteModule, TrivialExtension, free_module, residue_field_power, trivial_extension
from .rings import FiniteRing, make_product, make_quotient_poly, make_zmod


class SpecError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class RingStmt:
    name: str
    op: str
    args: tuple


@dataclass(frozen=True)
class ModuleStmt:
    name: str
    op: str
    ring: str
    count: int


@dataclass(frozen=True)
class IdealStmt:
    name: str
    ring: str
    elements: tuple[tuple, ...]


Statement = RingStmt | ModuleStmt | IdealStmt


@dataclass(frozen=True)
class RingSpecFile:
    statements: tuple[Statement, ...]


_RING_OPS = ("zmod", "gfpoly", "product", "trivext", "zq")
_MODULE_OPS = ("free", "residue_field_power")


def _parse_component(token: str, line: int):
    if "/" in token:
        num, _, den = token.partition("/")
        try:
            return Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError):
            raise SpecError(line, f"bad rational component {token!r}")
    try:
        return int(token)
    except ValueError:
        raise SpecError(line, f"bad integer component {token!r}")


def _parse_element(token: str, line: int) -> tuple:
    if not (token.startswith("(") and token.endswith(")")):
        raise SpecError(line, f"element {token!r} must be parenthesized")
    inner = token[1:-1]
    if not inner:
        raise SpecError(line, "empty element")
    return tuple(_parse_component(part, line) for part in inner.split(","))


def _format_component(value) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


def format_element(element: tuple) -> str:
    return "(" + ",".join(_format_component(v) for v in element) + ")"


def parse(text: str) -> RingSpecFile:
    statements: list[Statement] = []
    names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "ring":
            if len(tokens) < 4 or tokens[2] != "=":
                raise SpecError(lineno, "expected: ring NAME = OP ...")
            name, op, args = tokens[1], tokens[3], tokens[4:]
            if name in names:
                raise SpecError(lineno, f"duplicate name {name!r}")
            if op == "zmod":
                if len(args) != 1:
                    raise SpecError(lineno, "zmod takes one modulus")
                stmt = RingStmt(name, op, (int(args[0]),))
            elif op == "gfpoly":
                if len(args) < 3:
                    raise SpecError(lineno, "gfpoly takes a prime and coefficients")
                stmt = RingStmt(name, op, tuple(int(a) for a in args))
            elif op == "product":
                if len(args) < 1:
                    raise SpecError(lineno, "product takes ring names")
                stmt = RingStmt(name, op, tuple(args))
            elif op == "trivext":
                if len(args) != 2:
                    raise SpecError(lineno, "trivext takes a ring and a module")
                stmt = RingStmt(name, op, tuple(args))
            elif op == "zq":
                if args:
                    raise SpecError(lineno, "zq takes no arguments")
                stmt = RingStmt(name, op, ())
            else:
                raise SpecError(lineno, f"unknown ring constructor {op!r}")
        elif kind == "module":
            if len(tokens) != 6 or tokens[2] != "=" or tokens[3] not in _MODULE_OPS:
                raise SpecError(
                    lineno, "expected: module NAME = free|residue_field_power RING N"
                )
            name = tokens[1]
            if name in names:
                raise SpecError(lineno, f"duplicate name {name!r}")
            try:
                count = int(tokens[5])
            except ValueError:
                raise SpecError(lineno, f"bad count {tokens[5]!r}")
            stmt = ModuleStmt(name, tokens[3], tokens[4], count)
        elif kind == "ideal":
            if len(tokens) < 6 or tokens[2] != "in" or tokens[4] != "=":
                raise SpecError(lineno, "expected: ideal NAME in RING = (..) ..")
            name = tokens[1]
            if name in names:
                raise SpecError(lineno, f"duplicate name {name!r}")
            elements = tuple(_parse_element(t, lineno) for t in tokens[5:])
            stmt = IdealStmt(name, tokens[3], elements)
        else:
            raise SpecError(lineno, f"unknown statement {kind!r}")
        names.add(stmt.name)
        statements.append(stmt)
    return RingSpecFile(tuple(statements))


def print_spec(spec: RingSpecFile) -> str:
    lines = []
    for stmt in spec.statements:
        if isinstance(stmt, RingStmt):
            args = " ".join(str(a) for a in stmt.args)
            lines.append(f"ring {stmt.name} = {stmt.op}{' ' + args if args else ''}")
        elif isinstance(stmt, ModuleStmt):
            lines.append(f"module {stmt.name} = {stmt.op} {stmt.ring} {stmt.count}")
        else:
            elems = " ".join(format_element(e) for e in stmt.elements)
            lines.append(f"ideal {stmt.name} in {stmt.ring} = {elems}")
    return "\n".join(lines) + "\n"


ZQ_MARKER = "zq"


@dataclass
class Environment:
    """Realized objects from a spec file, by name."""

    rings: dict[str, object]          # FiniteRing | TrivialExtension | ZQ_MARKER
    modules: dict[str, FiniteModule]
    ideals: dict[str, tuple[str, object]]   # name -> (ring name, Ideal | zq gens)

    def ring_object(self, name: str):
        if name not in self.rings:
            raise KeyError(f"unknown ring {name!r}")
        return self.rings[name]


def _as_ring(obj) -> FiniteRing:
    return obj.ring if isinstance(obj, TrivialExtension) else obj


def realize(spec: RingSpecFile) -> Environment:
    env = Environment({}, {}, {})
    for stmt in spec.statements:
        if isinstance(stmt, RingStmt):
            if stmt.op == "zmod":
                env.rings[stmt.name] = make_zmod(stmt.args[0])
            elif stmt.op == "gfpoly":
                env.rings[stmt.name] = make_quotient_poly(stmt.args[0], list(stmt.args[1:]))
            elif stmt.op == "product":
                parts = []
                for ref in stmt.args:
                    obj = env.rings.get(ref)
                    if obj is None or obj == ZQ_MARKER:
                        raise KeyError(f"unknown finite ring {ref!r}")
                    parts.append(_as_ring(obj))
                env.rings[stmt.name] = make_product(parts)
            elif stmt.op == "trivext":
                base_ref, module_ref = stmt.args
                base = env.rings.get(base_ref)
                module = env.modules.get(module_ref)
                if base is None or base == ZQ_MARKER:
                    raise KeyError(f"unknown finite ring {base_ref!r}")
                if module is None:
                    raise KeyError(f"unknown module {module_ref!r}")
                env.rings[stmt.name] = trivial_extension(_as_ring(base), module)
            else:
                env.rings[stmt.name] = ZQ_MARKER
        elif isinstance(stmt, ModuleStmt):
            base = env.rings.get(stmt.ring)
            if base is None or base == ZQ_MARKER:
                raise KeyError(f"unknown finite ring {stmt.ring!r}")
            base = _as_ring(base)
            if stmt.op == "free":
                env.modules[stmt.name] = free_module(base, stmt.count)
            else:
                env.modules[stmt.name] = residue_field_power(base, stmt.count)
        else:
            ring_obj = env.rings.get(stmt.ring)
            if ring_obj is None:
                raise KeyError(f"unknown ring {stmt.ring!r}")
            if ring_obj == ZQ_MARKER:
                gens = []
                for element in stmt.elements:
                    if len(element) != 2:
                        raise ValueError(
                            f"ideal {stmt.name!r}: elements need two slots"
                        )
                    gens.append(zqmod.ZQElement(int(element[0]), Fraction(element[1])))
                env.ideals[stmt.name] = (stmt.ring, tuple(gens))
            else:
                ring = _as_ring(ring_obj)
                vectors = []
                for element in stmt.elements:
                    if len(element) != ring.rank:
                        raise ValueError(
                            f"ideal {stmt.name!r}: expected {ring.rank} slots, "
                            f"got {len(element)}"
                        )
                    if any(isinstance(v, Fraction) and v.denominator != 1
                           for v in element):
                        raise ValueError(
                            f"ideal {stmt.name!r}: finite rings take integer slots"
                        )
                    vectors.append(tuple(int(v) for v in element))
                env.ideals[stmt.name] = (stmt.ring, ideal(ring, vectors))
    return env
