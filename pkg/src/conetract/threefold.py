"""Intersection numbers on the resolved quintic X.

Divisors live in span(H, D, E): H the hyperplane class, D the cubic surface
over the triple point, E the exceptional divisor over the cone.  Curves live
in span(l, C, r): l a ruling of E, C the section E.D, r the small-resolution
curve.  Everything depends only on the degree d and genus g of the base
curve, through c2 = C.C on D = 2g - 2 + d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .lattice import H_D, CurveClassD, ample_threshold, degree, genus, is_ample, orthogonal_set, pair


@dataclass(frozen=True)
class GeometryParams:
    d: int
    g: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("curve degree must be positive")
        if self.g < 0:
            raise ValueError("genus must be non-negative")

    @property
    def c2(self) -> int:
        return 2 * self.g - 2 + self.d

    @classmethod
    def from_class(cls, c: CurveClassD) -> "GeometryParams":
        return cls(int(degree(c)), genus(c))


def _q(v) -> Fraction:
    return Fraction(v)


@dataclass(frozen=True)
class DivisorX:
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        for k in ("alpha", "beta", "gamma"):
            object.__setattr__(self, k, _q(getattr(self, k)))

    def __add__(self, o: "DivisorX") -> "DivisorX":
        return DivisorX(self.alpha + o.alpha, self.beta + o.beta, self.gamma + o.gamma)

    def __sub__(self, o: "DivisorX") -> "DivisorX":
        return DivisorX(self.alpha - o.alpha, self.beta - o.beta, self.gamma - o.gamma)

    def __rmul__(self, k) -> "DivisorX":
        return DivisorX(k * self.alpha, k * self.beta, k * self.gamma)

    def coords(self):
        return (self.alpha, self.beta, self.gamma)

    def __str__(self) -> str:
        parts = []
        for coef, sym in zip(self.coords(), "HDE"):
            if coef == 0:
                continue
            mag = abs(coef)
            body = sym if mag == 1 else f"{mag}{sym}"
            parts.append(("-" if coef < 0 else "+") + body)
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s


H = DivisorX(1, 0, 0)
D = DivisorX(0, 1, 0)
E = DivisorX(0, 0, 1)


@dataclass(frozen=True)
class CurveX:
    l: Fraction = Fraction(0)
    C: Fraction = Fraction(0)
    r: Fraction = Fraction(0)

    def __post_init__(self):
        for k in ("l", "C", "r"):
            object.__setattr__(self, k, _q(getattr(self, k)))

    def __add__(self, o: "CurveX") -> "CurveX":
        return CurveX(self.l + o.l, self.C + o.C, self.r + o.r)

    def __rmul__(self, k) -> "CurveX":
        return CurveX(k * self.l, k * self.C, k * self.r)


RULING = CurveX(1, 0, 0)
SECTION = CurveX(0, 1, 0)
SMALL = CurveX(0, 0, 1)


def basis_pairings(params: GeometryParams) -> dict[str, tuple[int, int, int]]:
    """(H, D, E) pairings of the basis curves l, C, r."""
    return {
        "l": (1, 1, -2),
        "C": (0, -params.d, params.c2),
        "r": (0, 0, 1),
    }


def pair_dc(div: DivisorX, c: CurveX, params: GeometryParams) -> Fraction:
    table = basis_pairings(params)
    total = Fraction(0)
    for coef, key in ((c.l, "l"), (c.C, "C"), (c.r, "r")):
        if coef:
            total += coef * sum(x * y for x, y in zip(div.coords(), table[key]))
    return total


def intersection_vector(c: CurveX, params: GeometryParams) -> tuple[Fraction, Fraction, Fraction]:
    """(H.c, E.c, D.c), the column order used for the basis-curve table."""
    return (pair_dc(H, c, params), pair_dc(E, c, params), pair_dc(D, c, params))


def generators(params: GeometryParams) -> dict[str, int]:
    """The ten triple products of H, D, E (sorted keys)."""
    d, g = params.d, params.g
    return {
        "HHH": 5, "HHD": 0, "HDD": 0, "HDE": 0, "DDD": 3,
        "HHE": d, "HEE": 2 * g - 2 - d, "DDE": -d, "DEE": 2 * g - 2 + d, "EEE": 8 * (1 - g),
    }


def triple(d1: DivisorX, d2: DivisorX, d3: DivisorX, params: GeometryParams) -> Fraction:
    gen = generators(params)
    total = Fraction(0)
    for idx in product(range(3), repeat=3):
        coef = d1.coords()[idx[0]] * d2.coords()[idx[1]] * d3.coords()[idx[2]]
        if coef:
            total += coef * gen["".join("HDE"[i] for i in sorted(idx))]
    return total


def cube(div: DivisorX, params: GeometryParams) -> Fraction:
    return triple(div, div, div, params)


def restrict_to_D(div: DivisorX, base: CurveClassD) -> CurveClassD:
    """H|_D = 0, D|_D = K_D = -H_D, E|_D = C."""
    return div.gamma * base - div.beta * H_D


def embed_lattice_curve(c: CurveClassD, base: CurveClassD, params: GeometryParams | None = None) -> CurveX:
    """Write a curve on D as lambda_C * C + lambda_r * r by matching its D- and E-pairings.

    On D one has D.c = K_D.c = -deg c and E.c = C.c, which fixes both
    coefficients as long as d != 0.
    """
    params = params or GeometryParams.from_class(base)
    if params.d == 0:
        raise ValueError("embedding needs a base curve of nonzero degree")
    lam_c = Fraction(degree(c), params.d)
    lam_r = pair(base, c) - params.c2 * lam_c
    return CurveX(0, lam_c, lam_r)


@dataclass(frozen=True)
class KahlerRays:
    beta: Fraction
    rays: tuple[DivisorX, DivisorX, DivisorX]
    L_cubed: Fraction
    perp: tuple[str, ...]

    @property
    def L(self) -> DivisorX:
        return self.rays[2]


def kahler_rays(base: CurveClassD) -> KahlerRays:
    params = GeometryParams.from_class(base)
    beta = ample_threshold(base)
    L = DivisorX(2 - beta, beta, 1)
    restricted = restrict_to_D(L, base)
    return KahlerRays(beta, (H, H - D, L), cube(L, params), tuple(orthogonal_set(restricted, base)))


def classify_contractions(base: CurveClassD) -> dict[str, str]:
    rays = kahler_rays(base)
    third = "II" if restrict_to_D(rays.L, base).is_zero() else "I"
    return {"H-D,H": "I", "H-D,L": "III", "L,H": third}


def type3_k(base: CurveClassD, limit: int = 1000) -> int:
    for k in range(limit):
        if is_ample(base + k * H_D):
            return k
    raise ValueError(f"{base} + k*H_D not ample for k < {limit}")


def type3_divisor(base: CurveClassD) -> DivisorX:
    """(2+k)H - kD + E for the least k >= 0 making C + k*H_D ample."""
    k = type3_k(base)
    return DivisorX(2 + k, -k, 1)


@dataclass(frozen=True)
class ImageDegrees:
    divisor: DivisorX
    deg_Y: Fraction
    deg_curve: Fraction


def image_degrees(base: CurveClassD) -> ImageDegrees:
    params = GeometryParams.from_class(base)
    t = type3_divisor(base)
    return ImageDegrees(t, cube(t, params), pair_dc(t, SECTION, params))


def excess_count(params: GeometryParams) -> int:
    """Residual points of three surfaces of degrees 3, 4, 5 through C: 60 - 8d + (2g - 2)."""
    n = 60 - 8 * params.d + 2 * params.g - 2
    if n < 0:
        raise ValueError(f"excess count {n} < 0 for (d, g) = ({params.d}, {params.g})")
    return n
