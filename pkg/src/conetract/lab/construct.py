"""Explicit construction of quintics u^2 F3 + u F4 + F5 containing a cone.

The base curve C is realized on a cubic surface: a plane curve of degree a
with multiplicity b_i at six general points is pushed through the cubic
map P^2 -> P^3 given by the cubics through those points.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, sqrt

import numpy as np

from ..algebra import (
    HomogeneousForm,
    basis_size,
    embed,
    macaulay_rows,
    monomial_values,
    taylor_matrix,
)
from ..linalg import nullspace, rank, span

log = logging.getLogger(__name__)

MAX_RETRIES = 8
N_MIN_SAMPLES = comb(8, 3) + 16


class ConstructionError(RuntimeError):
    """A random choice kept failing its genericity check."""


class InsufficientSamplesError(ConstructionError):
    pass


class HilbertCheckError(ValueError):
    pass


def rng_for(p: int, seed: int, stream: str) -> np.random.Generator:
    tag = sum((i + 1) * ord(ch) for i, ch in enumerate(stream))
    return np.random.default_rng([int(seed), int(p), tag])


def normalize(point, p: int) -> tuple[int, ...]:
    """Scale a projective point so its first nonzero coordinate is 1."""
    pt = np.asarray(point, dtype=np.int64) % p
    nz = np.flatnonzero(pt)
    if len(nz) == 0:
        raise ValueError("zero vector")
    return tuple(int(v) for v in pt * pow(int(pt[nz[0]]), -1, p) % p)


def normalize_many(points: np.ndarray, p: int) -> np.ndarray:
    pts = np.asarray(points, dtype=np.int64) % p
    first = np.argmax(pts != 0, axis=1)
    lead = pts[np.arange(len(pts)), first]
    inv = np.array([pow(int(v), -1, p) for v in lead], dtype=np.int64)
    return pts * inv[:, None] % p


# ------------------------------------------------------------- plane points


def general_position_defects(points, p: int) -> list[str]:
    pts = np.asarray(points, dtype=np.int64) % p
    problems = []
    for i, j, k in combinations(range(len(pts)), 3):
        m = pts[[i, j, k]].tolist()
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        if det % p == 0:
            problems.append(f"points {i + 1},{j + 1},{k + 1} are collinear")
    if len(pts) >= 6 and rank(monomial_values(pts, 2, p), p) < 6:
        problems.append("six points lie on a conic")
    return problems


@dataclass(frozen=True)
class PlaneConfiguration:
    p: int
    points: tuple[tuple[int, int, int], ...]
    seed: int = 0

    def __post_init__(self):
        if len(self.points) != 6:
            raise ValueError("need exactly six points")
        problems = general_position_defects(self.points, self.p)
        if problems:
            raise ValueError("points not in general position: " + "; ".join(problems))


def choose_points(p: int, seed: int, attempts: int = 64) -> PlaneConfiguration:
    rng = rng_for(p, seed, "points")
    for _ in range(attempts):
        pts = rng.integers(0, p, size=(6, 3))
        pts[:, 2] = 1
        if general_position_defects(pts, p):
            continue
        return PlaneConfiguration(p, tuple(tuple(int(v) for v in q) for q in pts), seed)
    raise ConstructionError(f"no six points in general position found over F_{p}")


# ---------------------------------------------------------------- the curve


@dataclass
class RealizedCurve:
    a: int
    b: tuple[int, ...]
    plane_curve: HomogeneousForm
    cubics: list[HomogeneousForm]
    surface: HomogeneousForm
    samples: np.ndarray
    system_dim: int
    rational_points: int = 0
    notes: list[str] = field(default_factory=list)


def multiplicity_conditions(a: int, b, cfg: PlaneConfiguration) -> np.ndarray:
    rows = [np.zeros((0, basis_size(3, a)), dtype=np.int64)]
    for pt, bi in zip(cfg.points, b):
        if bi > 0:
            rows.append(taylor_matrix(3, a, pt, 2, bi - 1, cfg.p))
    return np.vstack(rows)


def cubic_map(cfg: PlaneConfiguration) -> list[HomogeneousForm]:
    basis = nullspace(monomial_values(np.array(cfg.points), 3, cfg.p), cfg.p)
    if len(basis) != 4:
        raise ConstructionError("cubics through the six points do not form a net of dimension 4")
    return [HomogeneousForm(3, 3, cfg.p, row) for row in basis]


def apply_cubic_map(cubics, points: np.ndarray, p: int) -> np.ndarray:
    vals = monomial_values(points, 3, p)
    return np.stack([vals @ c.coeffs % p for c in cubics], axis=1)


def image_surface(cfg: PlaneConfiguration, cubics, rng) -> HomogeneousForm:
    pts = rng.integers(0, cfg.p, size=(60, 3))
    pts[:, 2] = 1
    img = apply_cubic_map(cubics, pts, cfg.p)
    img = img[img.any(axis=1)]
    ker = nullspace(monomial_values(img, 3, cfg.p), cfg.p)
    if len(ker) != 1:
        raise ConstructionError(f"image of the cubic map is not a cubic surface ({len(ker)} cubics)")
    return HomogeneousForm(4, 3, cfg.p, ker[0])


def hasse_weil_lower(p: int, g: int) -> float:
    return p + 1 - 2 * g * sqrt(p)


def plane_curve_points(gamma: HomogeneousForm, rng, want: int, exclude) -> tuple[np.ndarray, int]:
    """Rational points of a plane curve, scanning lines x = const in random order."""
    p = gamma.p
    found = []
    ys = np.arange(p, dtype=np.int64)
    excl = {tuple(q) for q in exclude}
    scanned = 0
    for x0 in rng.permutation(p):
        pts = np.stack([np.full(p, x0), ys, np.ones(p, dtype=np.int64)], axis=1)
        hits = pts[gamma.evaluate_many(pts) == 0]
        scanned += 1
        for q in hits:
            tq = tuple(int(v) for v in q)
            if tq not in excl:
                found.append(tq)
        if len(found) >= want:
            break
    if len(found) < want:
        for q in [(1, y, 0) for y in range(p)] + [(0, 1, 0)]:
            if gamma.evaluate(q) == 0 and q not in excl:
                found.append(q)
    return np.array(found, dtype=np.int64).reshape(-1, 3), scanned


def realize_curve(cfg: PlaneConfiguration, a: int, b, seed: int, n_samples: int | None = None,
                  genus: int | None = None) -> RealizedCurve:
    """Random member of |a h - sum b_i e_i| pushed to P^3, with rational samples."""
    p = cfg.p
    b = tuple(int(v) for v in b)
    if len(b) != 6 or a < 1 or min(b) < 0:
        raise ValueError(f"unsupported class ({a};{b})")
    d = 3 * a - sum(b)
    if n_samples is None:
        n_samples = max(N_MIN_SAMPLES, 7 * d + 1)
    if genus is not None and hasse_weil_lower(p, genus) < n_samples:
        raise InsufficientSamplesError(
            f"insufficient samples: Hasse-Weil only guarantees {hasse_weil_lower(p, genus):.0f} "
            f"points of a genus-{genus} curve over F_{p}, need {n_samples}; use a larger prime"
        )
    rng = rng_for(p, seed, "curve")
    cond = multiplicity_conditions(a, b, cfg)
    system = nullspace(cond, p) if len(cond) else np.eye(basis_size(3, a), dtype=np.int64)
    if len(system) == 0:
        raise ConstructionError(f"the linear system of class ({a};{b}) is empty")
    exact = [taylor_matrix(3, a, pt, 2, bi, p)[comb(bi + 1, 2):] for pt, bi in zip(cfg.points, b)]
    for attempt in range(MAX_RETRIES):
        gamma = HomogeneousForm(3, a, p, rng.integers(0, p, len(system)) @ system % p)
        if gamma.is_zero():
            continue
        if all((m @ gamma.coeffs % p).any() for m in exact):
            break
        log.debug("multiplicity not exact on attempt %d", attempt)
    else:
        raise ConstructionError("non-generic configuration: multiplicities never exact")
    cubics = cubic_map(cfg)
    surface = image_surface(cfg, cubics, rng)
    pts, _ = plane_curve_points(gamma, rng, 4 * n_samples, exclude=cfg.points)
    img = apply_cubic_map(cubics, pts, p) if len(pts) else np.zeros((0, 4), dtype=np.int64)
    img = img[img.any(axis=1)]
    if len(img):
        img = np.unique(normalize_many(img, p), axis=0)
    if len(img) < n_samples:
        raise InsufficientSamplesError(
            f"insufficient samples: found {len(img)} rational points on C over F_{p}, "
            f"need {n_samples}; use a larger prime or sample over a quadratic extension"
        )
    order = rng.permutation(len(img))[:n_samples]
    samples = img[np.sort(order)]
    return RealizedCurve(a, b, gamma, cubics, surface, samples, len(system), len(img))


# ----------------------------------------------------------- hilbert check


def vanishing_space(samples: np.ndarray, k: int, p: int) -> np.ndarray:
    """Basis of degree-k forms in four variables vanishing at every sample."""
    return nullspace(monomial_values(samples, k, p), p)


def hilbert_check(samples: np.ndarray, p: int, k: int = 5) -> tuple[int, int]:
    """Recover (degree, genus) from the Hilbert function of the samples in degrees k..k+2."""
    if k < 5:
        raise ValueError("hilbert_check needs k >= 5")
    if len(samples) <= comb(k + 3, 3):
        raise HilbertCheckError(f"need more than {comb(k + 3, 3)} samples for k={k}")
    h = []
    for j in (k, k + 1, k + 2):
        h.append(comb(j + 3, 3) - len(vanishing_space(samples, j, p)))
    d1, d2 = h[1] - h[0], h[2] - h[1]
    if d1 != d2 or d1 <= 0:
        raise HilbertCheckError(f"Hilbert function {h} in degrees {k}..{k + 2} is not linear")
    d = d1
    g = d * k + 1 - h[0]
    if g < 0:
        raise HilbertCheckError(f"negative genus estimate from Hilbert function {h}")
    return d, g


# ---------------------------------------------------------- certificates


@dataclass(frozen=True)
class Certificate:
    """Outcome of the Nullstellensatz fill test."""

    filled: bool
    degree: int
    codim: int

    def to_dict(self) -> dict:
        return {"filled": self.filled, "degree": self.degree, "codim": self.codim}


def emptiness_certificate(generators, n_max: int | None = None) -> Certificate:
    """True iff the generated ideal contains every form of some degree n <= n_max.

    Filling S^(n) means the generators have no common zero in projective
    space over the algebraic closure.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return Certificate(False, 0, -1)
    nvars, p = gens[0].nvars, gens[0].p
    if n_max is None:
        n_max = sum(g.degree - 1 for g in gens[:nvars]) + 1
        n_max = max(n_max, max(g.degree for g in gens))
    codim = -1
    for n in range(min(g.degree for g in gens), n_max + 1):
        rows = np.vstack([macaulay_rows(g, n) for g in gens if g.degree <= n])
        codim = basis_size(nvars, n) - rank(rows, p)
        if codim == 0:
            return Certificate(True, n, 0)
    return Certificate(False, n_max, codim)


def smoothness_certificate(f: HomogeneousForm) -> Certificate:
    """Smoothness of V(f): its partials have no common zero (char p > deg f)."""
    return emptiness_certificate([f.partial(i) for i in range(f.nvars)])


# -------------------------------------------------------------- surfaces


@dataclass
class SurfaceChoice:
    forms: dict[int, HomogeneousForm]
    certificates: dict[int, Certificate]
    ideal_dims: dict[int, int]
    attempts: dict[int, int]


def pick_surfaces(samples: np.ndarray, p: int, seed: int, cubic: HomogeneousForm | None = None,
                  require_smooth=(3,)) -> SurfaceChoice:
    """Members F3, F4, F5 of the ideal of the samples in degrees 3, 4, 5.

    Degrees listed in `require_smooth` must pass the smoothness certificate
    within MAX_RETRIES draws; for the others the best draw is kept and its
    certificate recorded.
    """
    rng = rng_for(p, seed, "surfaces")
    forms, certs, dims, attempts = {}, {}, {}, {}
    for k in (3, 4, 5):
        space = vanishing_space(samples, k, p)
        dims[k] = len(space)
        if len(space) == 0:
            raise ConstructionError(f"no degree-{k} surface contains the curve")
        if k == 3 and cubic is not None:
            if cubic.evaluate_many(samples).any():
                raise ConstructionError("given cubic does not contain the curve")
            forms[3], certs[3], attempts[3] = cubic, smoothness_certificate(cubic), 1
            if not certs[3].filled:
                raise ConstructionError("the cubic surface carrying the curve is singular")
            continue
        best = None
        for attempt in range(1, MAX_RETRIES + 1):
            f = HomogeneousForm(4, k, p, rng.integers(0, p, len(space)) @ space % p)
            if f.is_zero():
                continue
            cert = smoothness_certificate(f)
            best = (f, cert, attempt)
            if cert.filled:
                break
        if best is None or (not best[1].filled and k in require_smooth):
            raise ConstructionError(f"non-generic configuration: no smooth degree-{k} surface in {MAX_RETRIES} draws")
        forms[k], certs[k], attempts[k] = best
    return SurfaceChoice(forms, certs, dims, attempts)


def assemble_quintic(f3: HomogeneousForm, f4: HomogeneousForm, f5: HomogeneousForm) -> HomogeneousForm:
    """F = u^2 F3 + u F4 + F5 in the variables (x, y, z, t, u)."""
    p = f3.p
    u = HomogeneousForm.variable(5, 4, p)
    return u * u * embed(f3, 5) + u * embed(f4, 5) + embed(f5, 5)


def ideal_piece(samples: np.ndarray, k: int, p: int):
    return span(vanishing_space(samples, k, p), p, basis_size(4, k))
