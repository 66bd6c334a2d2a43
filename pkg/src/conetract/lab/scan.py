"""Rational point scans: singular points of the quintic and excess points.

Every singular point of V(u^2 F3 + u F4 + F5) other than the vertex projects
to a point q of P^3 where either F3(q) != 0 and the branch octic
G = F4^2 - 4 F3 F5 vanishes (then u = -F4/(2 F3)), or F3 = F4 = F5 = 0.
So a scan of G over P^3 finds all of them.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..algebra import HomogeneousForm, monomial_exponents, monomial_index, monomial_values
from ..linalg import rank
from .construct import normalize_many

SCAN_BUDGET = 4 * 10 ** 7


def branch_octic(f3: HomogeneousForm, f4: HomogeneousForm, f5: HomogeneousForm) -> HomogeneousForm:
    return f4 * f4 - (f3 * f5).scale(4)


def _t_coefficients(f: HomogeneousForm, pts3: np.ndarray) -> list[np.ndarray]:
    """Values at (x, y, z) of the coefficient of t^i in f, for i = 0..deg."""
    p = f.p
    exps = monomial_exponents(4, f.degree)
    out = []
    for i in range(f.degree + 1):
        sel = np.flatnonzero(exps[:, 3] == i)
        coeffs = np.zeros(len(monomial_exponents(3, f.degree - i)), dtype=np.int64)
        coeffs[monomial_index(3, f.degree - i, exps[sel, :3])] = f.coeffs[sel]
        vals = monomial_values(pts3, f.degree - i, p)
        out.append(np.asarray(vals @ coeffs % p if coeffs.any() else np.zeros(len(pts3), np.int64)))
    return out


def zeros_in_p3(f: HomogeneousForm, threads: int = 1) -> np.ndarray:
    """All F_p-points of V(f) in P^3, normalized, in lexicographic order."""
    if f.nvars != 4:
        raise ValueError("expected a form in four variables")
    p = f.p
    if f.is_zero():
        raise ValueError("zero form vanishes everywhere")
    yy, zz = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    pts3 = np.stack([np.ones(p * p, np.int64), yy.ravel(), zz.ravel()], axis=1)
    coef = [c % p for c in _t_coefficients(f, pts3)]

    def chunk(ts):
        found = []
        for t in ts:
            acc = coef[-1].copy()
            for c in reversed(coef[:-1]):
                acc = (acc * t + c) % p
            hit = np.flatnonzero(acc == 0)
            if len(hit):
                q = np.column_stack([pts3[hit], np.full(len(hit), t)])
                found.append(q)
        return found

    parts = np.array_split(np.arange(p), max(1, threads))
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(chunk, parts))
    else:
        results = [chunk(ts) for ts in parts]
    found = [q for r in results for q in r]
    zz2, tt2 = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    rest = np.concatenate([
        np.stack([np.zeros(p * p, np.int64), np.ones(p * p, np.int64), zz2.ravel(), tt2.ravel()], axis=1),
        np.stack([np.zeros(p, np.int64), np.zeros(p, np.int64), np.ones(p, np.int64), np.arange(p)], axis=1),
        np.array([[0, 0, 0, 1]], dtype=np.int64),
    ])
    found.append(rest[f.evaluate_many(rest) == 0])
    pts = np.concatenate(found) if found else np.zeros((0, 4), np.int64)
    order = np.lexsort(pts.T[::-1])
    return pts[order]


@dataclass
class SingularPoint:
    point: tuple[int, ...]
    kind: str  # "vertex", "node" or "degenerate"
    hessian_rank: int
    on_cone: bool

    def to_dict(self) -> dict:
        return {"point": list(self.point), "kind": self.kind, "hessian_rank": self.hessian_rank,
                "on_cone": self.on_cone}


def hessian_rank(f: HomogeneousForm, point) -> int:
    """Rank of the affine Hessian in the chart of the first nonzero coordinate."""
    pt = np.asarray(point, dtype=np.int64)
    n = f.nvars
    h = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        fi = f.partial(i)
        for j in range(i, n):
            h[i, j] = h[j, i] = fi.partial(j).evaluate(pt)
    chart = int(np.flatnonzero(pt % f.p)[0])
    keep = [i for i in range(n) if i != chart]
    return rank(h[np.ix_(keep, keep)], f.p)


def on_curve(points: np.ndarray, curve_forms) -> np.ndarray:
    points = np.atleast_2d(points)
    mask = np.ones(len(points), dtype=bool)
    for g in curve_forms:
        mask &= g.evaluate_many(points) == 0
    return mask


@dataclass
class ScanResult:
    scope: str  # "full" or "cone-samples"
    points: list[SingularPoint] = field(default_factory=list)
    common_zeros: np.ndarray | None = None  # rational points of V(F3, F4, F5)

    @property
    def nodes(self) -> list[SingularPoint]:
        return [s for s in self.points if s.kind == "node"]


def _singular_over(F: HomogeneousForm, qs: np.ndarray, us: np.ndarray) -> np.ndarray:
    pts = np.column_stack([qs, us]) % F.p
    mask = np.ones(len(pts), dtype=bool)
    for i in range(5):
        mask &= F.partial(i).evaluate_many(pts) == 0
    return mask


def singular_scan(F, f3, f4, f5, curve_forms, samples=None, threads: int = 1,
                  budget: int = SCAN_BUDGET) -> ScanResult:
    p = F.p
    vertex = SingularPoint((0, 0, 0, 0, 1), "vertex", hessian_rank(F, (0, 0, 0, 0, 1)), True)
    if p ** 3 <= budget:
        scope = "full"
        zs = zeros_in_p3(branch_octic(f3, f4, f5), threads)
    else:
        if samples is None:
            raise ValueError("a cone-only scan needs curve samples")
        scope = "cone-samples"
        zs = np.asarray(samples, dtype=np.int64)
    v3, v4, v5 = (f.evaluate_many(zs) if len(zs) else np.zeros(0, np.int64) for f in (f3, f4, f5))
    found = []
    gen = np.flatnonzero(v3 != 0)
    if len(gen):
        inv = np.array([pow(int(2 * v), -1, p) for v in v3[gen]], dtype=np.int64)
        us = (-v4[gen] % p) * inv % p
        ok = _singular_over(F, zs[gen], us)
        found.extend(np.column_stack([zs[gen][ok], us[ok]]))
    common = np.flatnonzero((v3 == 0) & (v4 == 0) & (v5 == 0))
    for q in zs[common]:
        us = np.arange(p, dtype=np.int64)
        ok = _singular_over(F, np.repeat(q[None, :], p, axis=0), us)
        found.extend(np.column_stack([np.repeat(q[None, :], int(ok.sum()), axis=0), us[ok]]))
    pts = np.array(found, dtype=np.int64).reshape(-1, 5)
    cone = on_curve(pts[:, :4], curve_forms) if len(pts) else np.zeros(0, bool)
    out = [vertex]
    for pt, c in zip(pts, cone):
        r = hessian_rank(F, pt)
        out.append(SingularPoint(tuple(int(v) for v in pt), "node" if r == 4 else "degenerate", r, bool(c)))
    return ScanResult(scope, out, zs[common] if scope == "full" else None)


@dataclass
class ExcessData:
    scanned: bool
    points: list[tuple[int, ...]]
    bound: int | None
    octic_singular: bool
    samples_singular: bool

    @property
    def count(self) -> int:
        return len(self.points)

    def to_dict(self) -> dict:
        return {
            "scanned": self.scanned,
            "rational_count": self.count if self.scanned else None,
            "points": [list(q) for q in self.points],
            "formula_count": self.bound,
            "octic_singular_at_excess": self.octic_singular,
            "octic_singular_at_samples": self.samples_singular,
            "within_bound": (self.bound is None or self.count <= self.bound) if self.scanned else None,
        }


def singular_on(g: HomogeneousForm, points) -> bool:
    points = np.atleast_2d(np.asarray(points, dtype=np.int64))
    if len(points) == 0:
        return True
    return all(not g.partial(i).evaluate_many(points).any() for i in range(g.nvars))


def excess_scan(f3, f4, f5, curve_forms, samples, common_zeros=None, bound=None, threads: int = 1,
                budget: int = SCAN_BUDGET) -> ExcessData:
    """Rational points of V(F3, F4, F5) off the curve, and the octic singularity checks."""
    g = branch_octic(f3, f4, f5)
    samples_ok = singular_on(g, samples)
    if common_zeros is None:
        if f3.p ** 3 > budget:
            return ExcessData(False, [], bound, True, samples_ok)
        zs = zeros_in_p3(g, threads)
        mask = np.ones(len(zs), dtype=bool)
        for f in (f3, f4, f5):
            mask &= f.evaluate_many(zs) == 0
        common_zeros = zs[mask]
    common_zeros = np.atleast_2d(common_zeros).reshape(-1, 4)
    off = common_zeros[~on_curve(common_zeros, curve_forms)] if len(common_zeros) else common_zeros
    pts = [tuple(int(v) for v in q) for q in normalize_many(off, f3.p)] if len(off) else []
    return ExcessData(True, pts, bound, singular_on(g, off), samples_ok)
