"""Acceptance criteria, one test each; the recorded lines are printed in the terminal summary."""

import time

import numpy as np
import pytest

from conetract.algebra import HomogeneousForm
from conetract.hodge import SingularityCounts, euler_consistency, hodge_of_resolution, smooth_euler
from conetract.lab.construct import assemble_quintic
from conetract.lab.ideals import ieq_dim, inverse_system, node_count
from conetract.lab.model import QuinticModel, build_model
from conetract.lab.report import full_analysis
from conetract.lattice import catalog_entry, degree, load_catalog
from conetract.linalg import matmul_mod, span
from conetract.reference import (
    TABLE3,
    TABLE4,
    table2_discrepancies,
    table3_discrepancies,
    table3_row,
    table4_discrepancies,
)
from conetract.threefold import E, GeometryParams, H, cube, excess_count, image_degrees, kahler_rays

CONSTRUCTED = ("C_1", "C_3", "C_5B")
PRIMES = (257, 263)
RUN_LIMIT = 180.0


def mu2_oracle(d, g):
    # frozen oracle for the node count of a generic member (derived independently of the inverse system)
    return 8 * d - 4 * g + 4


@pytest.fixture(scope="module")
def runs():
    """(name, p) -> (model, report, seconds) for every constructed class."""
    out = {}
    for name in CONSTRUCTED + ("C_6",):
        primes = PRIMES if name in CONSTRUCTED else (257,)
        for p in primes:
            t0 = time.perf_counter()
            model = build_model(catalog_entry(name).cls, p, seed=0, name=name)
            report = full_analysis(model, threads=4)
            out[name, p] = (model, report, time.perf_counter() - t0)
    return out


def test_criterion_1_lattice_vs_table2(criterion):
    t0 = time.perf_counter()
    cat = load_catalog()
    degrees_ok = all(degree(e.cls) == 3 * e.cls.a - sum(e.cls.b) for e in cat)
    genus_diffs = {x.row: (int(x.computed), int(x.published)) for x in table2_discrepancies() if x.column == "g"}
    expected = {"C_{2,3}": (4, 3), "C_6": (3, 4), "C_9A": (8, 10), "C_{3,3}": (10, 8)}
    matching = sum(e.genus == e.published_g for e in cat)
    elapsed = time.perf_counter() - t0
    ok = degrees_ok and genus_diffs == expected and matching == len(cat) - len(expected) and elapsed < 1
    criterion(1, ok, f"degrees ok={degrees_ok}; genus flags {genus_diffs}; "
                     f"{matching} rows match (three flags covering four rows); {elapsed:.3f}s")


def test_criterion_2_kahler_cone_vs_table3(criterion):
    t0 = time.perf_counter()
    l3_expected = {
        "C_2": 48, "TC": 54, "C_3": 8, "C_4A": 64, "C_4B": 60, "C_5A": 12, "C_5B": 12, "C_{2,3}": 0,
        "C_6": 16, "C_7A": 82, "C_7B": 24, "C_7C": 20, "C_8A": 28, "C_8B": 0, "C_{3,3}": 4,
        "C_10A": 8, "C_10B": 4, "C_11": 0, "C_{3,4}": 8, "C_{3,5}": 0,
    }
    l3_bad = {n: v for n, v in l3_expected.items() if kahler_rays(catalog_entry(n).cls).L_cubed != v}
    diffs = table3_discrepancies()
    swap = [x for x in diffs if x.column == "row"]
    others = [x for x in diffs if x.column != "row"]
    flags_ok = ([x.row for x in swap] == ["C_9A/C_9B"]
                and [(x.row, x.column, x.computed, x.published) for x in others if x.column != "perp"]
                == [("C_1", "L3", "140", "124")])
    beta_match = sum(table3_row(e.cls)[0] == TABLE3[e.name][0] for e in load_catalog())
    perp_bad = [f"{x.row} ({x.note})" for x in others if x.column == "perp"]
    elapsed = time.perf_counter() - t0
    ok = not l3_bad and flags_ok and beta_match == 21 and not perp_bad and elapsed < 1
    criterion(2, ok, f"beta matches {beta_match} rows; L^3 mismatches {l3_bad or 'none'}; flags ok={flags_ok}; "
                     f"perp mismatches on non-flagged rows: {perp_bad or 'none'}; {elapsed:.3f}s")


def test_criterion_3_vanishing_L_cubed(criterion):
    zero = {e.name for e in load_catalog() if kahler_rays(e.cls).L_cubed == 0}
    criterion(3, zero == {"C_{2,3}", "C_8B", "C_11", "C_{3,5}"}, f"L^3 = 0 for {sorted(zero)}")


def test_criterion_4_table4_degrees(criterion):
    diffs = [x for x in table4_discrepancies() if x.column in ("row", "deg_curve", "deg_Y")]
    allowed = [x for x in diffs if x.row == "C_9A/C_9B" or (x.row, x.column) == ("C_7B", "deg_Y")]
    y7b = [(x.computed, x.published) for x in diffs if x.row == "C_7B"]
    extra = [f"{x.row} {x.column} {x.computed} vs {x.published}" for x in diffs if x not in allowed]
    y1 = image_degrees(catalog_entry("C_1").cls)
    y35 = image_degrees(catalog_entry("C_{3,5}").cls)
    ends = (y1.deg_curve, y1.deg_Y) == (1, 310) and (y35.deg_curve, y35.deg_Y) == (75, 250)
    ok = len(allowed) == 2 and y7b == [("98", "82")] and not extra and ends
    criterion(4, ok, f"swap + Y_7B flagged={len(allowed) == 2 and y7b == [('98', '82')]}; "
                     f"Y_1, Y_3,5 exact={ends}; other mismatches: {extra or 'none'}")


def test_criterion_5_closed_form(criterion):
    bad = [(d, g) for d in range(1, 16) for g in range(32)
           if cube(2 * H + E, GeometryParams(d, g)) != 36 + 6 * d + 4 * g]
    criterion(5, not bad, f"(2H+E)^3 = 36+6d+4g on 15 x 32 grid, failures: {bad or 'none'}")


def test_criterion_6_excess(criterion):
    zeros = {n: excess_count(GeometryParams.from_class(catalog_entry(n).cls)) for n in ("C_10B", "C_11", "C_{3,5}")}
    bad = []
    for d in range(1, 16):
        for g in range(32):
            # residual of a smooth curve in a (3,4,5) complete intersection: d(3+4+5) - 4d - (2g-2)
            residual = 60 - (d * (3 + 4 + 5) - 4 * d - (2 * g - 2))
            try:
                n = excess_count(GeometryParams(d, g))
            except ValueError:
                if residual >= 0:
                    bad.append((d, g))
                continue
            if 8 * d - (2 * g - 2) + n != 60 or n != residual:
                bad.append((d, g))
    ok = all(v == 0 for v in zeros.values()) and not bad
    criterion(6, ok, f"excess {zeros}; balance failures on grid: {bad or 'none'}")


@pytest.mark.slow
def test_criterion_7_construction_pipeline(criterion, runs):
    lines, ok = [], True
    for name in CONSTRUCTED:
        e = catalog_entry(name)
        d, g = int(e.degree), e.genus
        per_prime = []
        for p in PRIMES:
            model, rep, secs = runs[name, p]
            r = rep.to_dict()
            good = (model.hilbert == (d, g) and model.certificates["F3_smooth"].filled and r["delta"] == 1
                    and r["hodge_X"]["h11"] == 3 and r["mu2"] == mu2_oracle(d, g) and secs <= RUN_LIMIT
                    and rep.status != "failure")
            ok &= good
            per_prime.append((r["mu2"], r["delta"]))
            lines.append(f"{name}/F_{p}: (d,g)={model.hilbert} mu2={r['mu2']} delta={r['delta']} "
                         f"h11={r['hodge_X']['h11']} {secs:.1f}s")
        ok &= per_prime[0] == per_prime[1]
    criterion(7, ok, "; ".join(lines))


@pytest.mark.slow
def test_criterion_8_hodge_chain(criterion, runs):
    lines, ok = [], True
    for (name, p), (model, rep, _) in sorted(runs.items()):
        if model.g <= 1:
            continue
        r = rep.to_dict()
        t = r["transition"]
        h12 = 88 + 2 * model.g - r["mu2"]
        published = TABLE4[name][3]
        diffed = any(x["row"] == name and x["column"] == "h12_smoothing" for x in r["discrepancies"])
        good = (t["h11"] == 2 and t["h12"] == h12 and diffed == (h12 != published)
                and rep.exit_code == (2 if diffed else 0))
        ok &= good
        lines.append(f"{name}/F_{p}: h11={t['h11']} h12={t['h12']} (table {published}) exit {rep.exit_code}")
    criterion(8, ok and bool(lines), "; ".join(lines))


@pytest.mark.slow
def test_criterion_9_controls(criterion, runs):
    p = 257
    rng = np.random.default_rng(9)
    smooth = HomogeneousForm.random(5, 5, p, rng)
    empty = inverse_system(smooth, 16).colength(16) == 0
    # an empty singular scheme means no nodes, no triple point and I_eq = everything
    c0 = SingularityCounts(0, 0, 0, dim_Ieq5=126)
    h0 = hodge_of_resolution(c0)
    f3, f4, f5 = (HomogeneousForm.random(4, k, p, rng) for k in (3, 4, 5))
    F = assemble_quintic(f3, f4, f5)
    nc = node_count(F)
    dim, delta = ieq_dim(F, nc.node_ideal5, nc.mu2)
    c1 = SingularityCounts(nc.mu2, 1, delta, dim)
    h1 = hodge_of_resolution(c1)
    reports = [(c0, h0), (c1, h1)] + [
        (SingularityCounts(r["mu2"], 1, r["delta"]), hodge_of_resolution(SingularityCounts(r["mu2"], 1, r["delta"])))
        for r in (rep.to_dict() for _, rep, _ in runs.values())
    ]
    euler_ok = all(euler_consistency(c, h, smooth_euler()).ok and h.e == 2 * (h.h11 - h.h12) for c, h in reports)
    euler_ok &= all(rep.to_dict()["euler"]["ok"] for _, rep, _ in runs.values())
    ok = empty and h0.as_tuple() == (1, 101) and nc.mu2 == 0 and h1.h11 == 1 + 1 + delta and euler_ok
    criterion(9, ok, f"smooth: (mu2,mu3,delta)=(0,0,0) hodge {h0.as_tuple()}; triple point only: mu2={nc.mu2} "
                     f"tau={nc.tau_vertex} delta={delta} hodge {h1.as_tuple()}; Euler on {len(reports)} reports={euler_ok}")


@pytest.mark.slow
def test_criterion_10_determinism_and_linear_algebra(criterion, runs):
    p = 257
    rng = np.random.default_rng(10)
    grassmann_bad = 0
    n = 10
    for _ in range(1000):
        ra, rb = rng.integers(0, n + 1, 2)
        a = span(matmul_mod(rng.integers(0, p, (ra, ra)), rng.integers(0, p, (ra, n)), p), p, n) if ra else span([], p, n)
        b = span(rng.integers(0, p, (rb, n)), p, n) if rb else span([], p, n)
        if rng.random() < 0.5 and a.dim and b.dim:
            # force a shared direction
            b = b + span(a.basis[:1], p, n)
        grassmann_bad += (a + b).dim + (a & b).dim != a.dim + b.dim
    model = runs["C_3", 257][0]
    outputs = {t: full_analysis(model, threads=t).to_json() for t in (1, 4, 8)}
    same_threads = len(set(outputs.values())) == 1 and outputs[4] == runs["C_3", 257][1].to_json()
    rebuilt = build_model(model.cls, 257, seed=0, name="C_3").to_json() == model.to_json()
    round_trip = all(QuinticModel.from_json(m.to_json()).to_json() == m.to_json() for m, _, _ in runs.values())
    ok = grassmann_bad == 0 and same_threads and rebuilt and round_trip
    criterion(10, ok, f"Grassmann failures {grassmann_bad}/1000; identical across 1/4/8 threads={same_threads}; "
                      f"rebuild identical={rebuilt}; round trips={round_trip}")
