"""Full analysis of a QuinticModel: singularities, defect, Hodge numbers, checks."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from ..algebra import monomial_values
from ..hodge import (
    HodgeNumbers,
    SingularityCounts,
    euler_consistency,
    hodge_of_resolution,
    mu2_target,
    smooth_euler,
    smoothability,
    transition_hodge,
)
from ..reference import TABLE4, Discrepancy, _lookup
from ..threefold import GeometryParams, excess_count
from .ideals import DEGREE_BUDGET, ieq_dim, jacobian_piece, node_count
from .model import SCHEMA_VERSION, QuinticModel
from .scan import excess_scan, singular_scan

log = logging.getLogger(__name__)

REPORT_KIND = "conetract.analysis_report"

# field list of the JSON report, in order
REPORT_FIELDS = (
    "schema_version", "kind", "class", "p", "seed", "provenance", "mu2", "mu3", "tau_vertex",
    "jacobian_colength", "colengths", "node_codims", "dim_Ieq5", "delta", "hodge_X", "euler",
    "smoothability", "transition", "singular_points", "excess", "checks", "discrepancies", "status",
)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class AnalysisReport:
    data: dict
    checks: list[Check] = field(default_factory=list)
    discrepancies: list[Discrepancy] = field(default_factory=list)

    @property
    def status(self) -> str:
        if not all(c.ok for c in self.checks):
            return "failure"
        return "discrepancy" if self.discrepancies else "ok"

    @property
    def exit_code(self) -> int:
        return {"ok": 0, "discrepancy": 2, "failure": 1}[self.status]

    def __getitem__(self, key):
        return self.to_dict()[key]

    def to_dict(self) -> dict:
        out = dict(self.data)
        out["checks"] = [c.to_dict() for c in self.checks]
        out["discrepancies"] = [d.to_dict() for d in self.discrepancies]
        out["status"] = self.status
        return {k: out[k] for k in REPORT_FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def to_text(self) -> str:
        d = self.to_dict()
        hx = d["hodge_X"]
        lines = [
            f"class {d['class']['name'] or ''} {d['class']['a']}:{','.join(map(str, d['class']['b']))}"
            f"  (d={d['class']['d']}, g={d['class']['g']})  over F_{d['p']}, seed {d['seed']}",
            f"nodes mu2 = {d['mu2']}   triple points mu3 = {d['mu3']}   tau at vertex = {d['tau_vertex']}",
            f"colength of J = {d['jacobian_colength']}   dim I_eq^(5) = {d['dim_Ieq5']}   defect = {d['delta']}",
            f"resolution X: h11 = {hx['h11']}, h12 = {hx['h12']}, e = {hx['e']}",
            f"smoothability: {d['smoothability']['verdict']} ({d['smoothability']['remark']})",
        ]
        if d["transition"]:
            t = d["transition"]
            lines.append(f"smoothing of the type III image: h11 = {t['h11']}, h12 = {t['h12']}, "
                         f"{t['nodes']} nodes (k = {t['k']}, c = {t['c']})")
        ex = d["excess"]
        if ex["scanned"]:
            lines.append(f"rational excess points: {ex['rational_count']} (formula count {ex['formula_count']})")
        nodes = [s for s in d["singular_points"] if s["kind"] == "node"]
        lines.append(f"rational singular points besides the vertex: {len(d['singular_points']) - 1}"
                     f" ({len(nodes)} nodes)")
        for c in d["checks"]:
            lines.append(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['name']}" + (f": {c['detail']}" if c["detail"] else ""))
        for x in self.discrepancies:
            lines.append(f"  [diff] {x}")
        lines.append(f"status: {d['status']}")
        return "\n".join(lines) + "\n"


def _hodge_dict(h: HodgeNumbers) -> dict:
    return {"h11": h.h11, "h12": h.h12, "e": h.e, "validated": h.validated}


def full_analysis(model: QuinticModel, threads: int = 1, top: int = DEGREE_BUDGET) -> AnalysisReport:
    F, p = model.F, model.p
    d, g = model.d, model.g
    checks: list[Check] = []
    diffs: list[Discrepancy] = []

    problems = model.check()
    checks.append(Check("model invariants", not problems, "; ".join(problems)))
    if model.hilbert is not None:
        checks.append(Check("Hilbert function matches lattice (d, g)", tuple(model.hilbert) == (d, g),
                            f"{tuple(model.hilbert)} vs {(d, g)}"))
    cert3 = model.certificates.get("F3_smooth")
    checks.append(Check("V(F3) smooth (ordinary triple point at O)", bool(cert3 and cert3.filled),
                        f"ideal of partials fills degree {cert3.degree}" if cert3 else "no certificate"))

    nc = node_count(F, top)
    dim_ieq, delta = ieq_dim(F, nc.node_ideal5, nc.mu2)
    checks.append(Check("defect non-negative", delta >= 0, f"delta = {delta}"))
    checks.append(Check("mu2 + tau_vertex = colength of J", nc.mu2 + nc.tau_vertex == nc.total))
    checks.append(Check("vertex Tjurina length at most 16", 0 < nc.tau_vertex <= 16, f"tau = {nc.tau_vertex}"))
    counts = SingularityCounts(nc.mu2, 1, max(delta, 0), dim_ieq if delta >= 0 else None)
    hx = hodge_of_resolution(counts)
    ec = euler_consistency(counts, hx, smooth_euler())
    checks.append(Check("Euler consistency", ec.ok, f"e = {ec.e}"))

    curve_forms = model.curve_forms(5)
    scan = singular_scan(F, model.f3, model.f4, model.f5, curve_forms, model.samples, threads)
    vertex = scan.points[0]
    checks.append(Check("vertex has multiplicity 3", vertex.hessian_rank == 0 and F.evaluate(vertex.point) == 0))
    others = scan.points[1:]
    checks.append(Check("rational singular points lie on the cone", all(s.on_cone for s in others),
                        f"{len(others)} points"))
    checks.append(Check("rational singular points are nodes", all(s.kind == "node" for s in others)))
    checks.append(Check("rational nodes do not exceed mu2", len(others) <= nc.mu2))
    if others:
        pts = np.array([s.point for s in others], dtype=np.int64)
        j5 = jacobian_piece(F, 5).basis
        in_j = not (j5 @ monomial_values(pts, 5, p).T % p).any()
        in_n = not (nc.node_ideal5.basis @ monomial_values(pts, 5, p).T % p).any() if nc.node_ideal5.dim else True
        checks.append(Check("J^(5) and I_N^(5) vanish at rational nodes", in_j and in_n))

    params = GeometryParams(d, g)
    try:
        bound = excess_count(params)
    except ValueError:
        bound = None
    ex = excess_scan(model.f3, model.f4, model.f5, curve_forms, model.samples, scan.common_zeros, bound, threads)
    checks.append(Check("branch octic singular along the curve samples", ex.samples_singular))
    if ex.scanned:
        checks.append(Check("branch octic singular at excess points", ex.octic_singular))
        checks.append(Check("rational excess points within formula count", bound is None or ex.count <= bound,
                            f"{ex.count} <= {bound}"))

    sm = smoothability(g)
    trans = None
    if g > 1:
        t = transition_hodge(hx, g)
        trans = {"h11": t.hodge.h11, "h12": t.hodge.h12, "nodes": t.nodes, "k": t.k, "c": t.c}
    if delta != 1:
        diffs.append(Discrepancy("text", model.name or str(model.cls), "delta", str(delta), "1",
                                 "defect claimed to be 1 for every constructed quintic"))
    row, published = _lookup(TABLE4, model.name) if model.name else (None, None)
    if trans and published and published[3] is not None:
        if trans["h11"] != published[2]:
            diffs.append(Discrepancy("4", row, "h11_smoothing", str(trans["h11"]), str(published[2])))
        if trans["h12"] != published[3]:
            diffs.append(Discrepancy("4", row, "h12_smoothing", str(trans["h12"]), str(published[3]),
                                     f"h12 = 88 + 2g - mu2 with mu2 = {nc.mu2}; "
                                     f"the published value needs mu2 = {mu2_target(published[3], g)}"))

    data = {
        "schema_version": SCHEMA_VERSION,
        "kind": REPORT_KIND,
        "class": {"name": model.name, "a": int(model.cls.a), "b": [int(v) for v in model.cls.b], "d": d, "g": g},
        "p": p,
        "seed": model.seed,
        "provenance": "modular computation over F_p; generic member of the family",
        "mu2": nc.mu2,
        "mu3": 1,
        "tau_vertex": nc.tau_vertex,
        "jacobian_colength": nc.total,
        "colengths": {str(k): v for k, v in nc.colengths.items()},
        "node_codims": {str(k): v for k, v in nc.node_codims.items()},
        "dim_Ieq5": dim_ieq,
        "delta": delta,
        "hodge_X": _hodge_dict(hx),
        "euler": {"ok": ec.ok, "e": ec.e, "e_smooth_quintic": ec.e_singular_model},
        "smoothability": {"verdict": sm.verdict, "nodes": sm.nodes, "remark": sm.remark},
        "transition": trans,
        "singular_points": [s.to_dict() for s in scan.points],
        "excess": ex.to_dict() | {"scope": scan.scope},
    }
    return AnalysisReport(data, checks, diffs)
