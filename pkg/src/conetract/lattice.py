"""Picard lattice of a smooth cubic surface.

A class (a; b1..b6) stands for a*h - sum(b_i e_i), where h pulls back a line
of P^2 and e_i are the six exceptional curves.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import combinations
from numbers import Rational


@dataclass(frozen=True)
class CurveClassD:
    a: Rational
    b: tuple

    def __post_init__(self):
        b = tuple(self.b)
        if len(b) != 6:
            raise ValueError(f"need six b-coefficients, got {len(b)}")
        object.__setattr__(self, "b", b)

    @classmethod
    def parse(cls, text: str) -> "CurveClassD":
        """Read `a:b1,b2,b3,b4,b5,b6`."""
        m = re.fullmatch(r"\s*(-?\d+)\s*[:;]\s*(-?\d+(?:\s*,\s*-?\d+){5})\s*", text)
        if not m:
            raise ValueError(f"malformed class {text!r}; expected a:b1,b2,b3,b4,b5,b6")
        return cls(int(m.group(1)), tuple(int(v) for v in m.group(2).split(",")))

    def __str__(self) -> str:
        return f"({_fmt(self.a)};{','.join(_fmt(v) for v in self.b)})"

    def __add__(self, other: "CurveClassD") -> "CurveClassD":
        return CurveClassD(self.a + other.a, tuple(x + y for x, y in zip(self.b, other.b)))

    def __sub__(self, other: "CurveClassD") -> "CurveClassD":
        return self + (-1) * other

    def __rmul__(self, k) -> "CurveClassD":
        return CurveClassD(k * self.a, tuple(k * v for v in self.b))

    def __neg__(self) -> "CurveClassD":
        return (-1) * self

    def is_zero(self) -> bool:
        return self.a == 0 and not any(self.b)

    @property
    def is_integral(self) -> bool:
        return all(Fraction(v).denominator == 1 for v in (self.a, *self.b))


def _fmt(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


H_D = CurveClassD(3, (1,) * 6)
K_D = -H_D
ZERO = CurveClassD(0, (0,) * 6)


def pair(c1: CurveClassD, c2: CurveClassD):
    return c1.a * c2.a - sum(x * y for x, y in zip(c1.b, c2.b))


def self_intersection(c: CurveClassD):
    return pair(c, c)


def degree(c: CurveClassD):
    """Degree in the anticanonical embedding, 3a - sum b."""
    return 3 * c.a - sum(c.b)


def genus(c: CurveClassD) -> int:
    """Arithmetic genus by adjunction: 1 + (C^2 - deg C)/2."""
    twice = self_intersection(c) - degree(c)
    if Fraction(twice).denominator != 1 or twice % 2:
        raise ValueError(f"{c} has non-integral genus; not a curve class")
    return 1 + int(twice) // 2


def canonical_degree(c: CurveClassD) -> int:
    return 2 * genus(c) - 2


def plane_model_genus(c: CurveClassD) -> int:
    a = c.a
    return (a - 1) * (a - 2) // 2 - sum(v * (v - 1) // 2 for v in c.b)


def _ample_slacks(c: CurveClassD):
    b, a = c.b, c.a
    total = sum(b)
    yield from b
    yield from (a - b[i] - b[j] for i, j in combinations(range(6), 2))
    yield from (2 * a - total + bj for bj in b)


def is_ample(c: CurveClassD) -> bool:
    return all(s > 0 for s in _ample_slacks(c))


def ample_threshold(c: CurveClassD) -> Fraction:
    """Largest beta with c - beta*H_D ample for all smaller beta.

    Every slack drops by exactly 1 per unit of beta (b_i by 1, a-b_i-b_j by
    3-2, 2a-sum+b_j by 6-5), so the threshold is the smallest slack.
    """
    return Fraction(min(_ample_slacks(c)))


@dataclass(frozen=True)
class NamedLine:
    name: str
    cls: CurveClassD


def _lines() -> tuple[NamedLine, ...]:
    out = []
    for i in range(6):
        b = [0] * 6
        b[i] = -1
        out.append(NamedLine(f"e{i + 1}", CurveClassD(0, tuple(b))))
    for i, j in combinations(range(6), 2):
        b = [0] * 6
        b[i] = b[j] = 1
        out.append(NamedLine(f"f{i + 1}{j + 1}", CurveClassD(1, tuple(b))))
    for i in range(6):
        b = [1] * 6
        b[i] = 0
        out.append(NamedLine(f"g{i + 1}", CurveClassD(2, tuple(b))))
    return tuple(out)


LINES = _lines()
LINE_BY_NAME = {ln.name: ln for ln in LINES}


def line_sort_key(name: str):
    order = {"C": 0, "D": 1, "e": 2, "f": 3, "g": 4}
    return (order[name[0]], name[1:])


def orthogonal_set(c: CurveClassD, section: CurveClassD | None = None) -> list[str]:
    """Lines (and the section class, marked C) pairing to zero with c; ["D"] for c = 0."""
    if c.is_zero():
        return ["D"]
    out = [ln.name for ln in LINES if pair(ln.cls, c) == 0]
    if section is not None and pair(section, c) == 0:
        out.insert(0, "C")
    return sorted(out, key=line_sort_key)


# ----------------------------------------------------------------- catalog


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    cls: CurveClassD
    published_g: int
    published_KC: int

    @property
    def degree(self) -> int:
        return degree(self.cls)

    @property
    def genus(self) -> int:
        return genus(self.cls)


def canonical_name(name: str) -> str:
    """Loose key: 'C_{3,5}', 'C35', 'c_3,5' and 'X_{3,5}' all map to 'C3,5'."""
    s = re.sub(r"[\s{}_]", "", name).upper()
    s = re.sub(r"^[XY]", "C", s)
    if s in ("TC", "CTC"):
        return "TC"
    if re.fullmatch(r"C\d\d", s) and s not in ("C10", "C11"):
        s = f"C{s[1]},{s[2]}"
    return s


@lru_cache(maxsize=1)
def load_catalog() -> tuple[CatalogEntry, ...]:
    text = resources.files("conetract.data").joinpath("curves.json").read_text()
    return tuple(
        CatalogEntry(r["name"], CurveClassD(r["a"], tuple(r["b"])), r["published_g"], r["published_KC"])
        for r in json.loads(text)
    )


def catalog_entry(name: str) -> CatalogEntry:
    key = canonical_name(name)
    for entry in load_catalog():
        if canonical_name(entry.name) == key:
            return entry
    raise KeyError(f"unknown curve {name!r}")


def resolve_class(spec: str) -> tuple[str | None, CurveClassD]:
    """Catalog name or literal `a:b1,...,b6`."""
    if ":" in spec or ";" in spec:
        return None, CurveClassD.parse(spec)
    entry = catalog_entry(spec)
    return entry.name, entry.cls
