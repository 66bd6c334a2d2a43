import itertools

import numpy as np
import pytest

from conetract.algebra import HomogeneousForm, embed
from conetract.lab.construct import (
    ConstructionError,
    HilbertCheckError,
    PlaneConfiguration,
    assemble_quintic,
    choose_points,
    emptiness_certificate,
    hilbert_check,
    normalize,
    realize_curve,
    smoothness_certificate,
)
from conetract.lab.ideals import inverse_system, node_count
from conetract.lab.model import ModelFormatError, QuinticModel, default_prime
from conetract.lab.scan import branch_octic, hessian_rank, zeros_in_p3

P = 257


def twisted_cubic(p, n):
    s = np.arange(1, n + 1, dtype=np.int64)
    return np.stack([s ** 3 % p, s ** 2 % p, s % p, np.ones_like(s)], axis=1)


def plane_cubic_points(p):
    # y^2 = x^3 + 3x + 5 in the plane t = 0
    pts = [(x, y, 1, 0) for x in range(p) for y in range(p) if (y * y - x ** 3 - 3 * x - 5) % p == 0]
    return np.array(pts, dtype=np.int64)


def test_hilbert_check_on_known_curves():
    assert hilbert_check(twisted_cubic(P, 120), P) == (3, 0)
    assert hilbert_check(plane_cubic_points(P), P) == (3, 1)
    with pytest.raises(HilbertCheckError):
        hilbert_check(twisted_cubic(P, 40), P)


def test_general_position():
    with pytest.raises(ValueError):
        PlaneConfiguration(P, ((1, 0, 1), (2, 0, 1), (3, 0, 1), (0, 1, 1), (5, 7, 1), (9, 4, 1)))
    cfg = choose_points(P, 3)
    assert cfg == choose_points(P, 3)


def test_realize_rejects_empty_system():
    cfg = choose_points(P, 0)
    with pytest.raises((ConstructionError, ValueError)):
        realize_curve(cfg, 1, (1, 1, 1, 0, 0, 0), 0)


def test_realized_samples_lie_on_the_cubic():
    cfg = choose_points(P, 1)
    curve = realize_curve(cfg, 3, (1,) * 6, 1)
    assert not curve.surface.evaluate_many(curve.samples).any()
    assert hilbert_check(curve.samples, P) == (3, 1)


def test_certificates(rng):
    x = [HomogeneousForm.variable(4, i, P) for i in range(4)]
    fermat = x[0] ** 3 + x[1] ** 3 + x[2] ** 3 + x[3] ** 3
    assert smoothness_certificate(fermat).filled
    cone = x[0] ** 3 + x[1] ** 3 + x[2] ** 3
    assert not smoothness_certificate(cone).filled
    assert not emptiness_certificate([x[0], x[1], x[2]]).filled


def test_normalize():
    assert normalize((0, 2, 4, 6), 7) == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        normalize((0, 0, 0, 0), 7)


def test_default_prime():
    assert default_prime(0) == 257
    assert default_prime(31) == 4099


def test_zeros_in_p3_brute_force(rng):
    p = 13
    f = HomogeneousForm.random(4, 3, p, rng)
    brute = set()
    for q in itertools.product(range(p), repeat=4):
        if any(q) and f.evaluate(q) == 0:
            brute.add(normalize(q, p))
    got = {tuple(int(v) for v in q) for q in zeros_in_p3(f)}
    assert got == brute
    assert (zeros_in_p3(f, threads=3) == zeros_in_p3(f)).all()


def test_smooth_quintic_has_empty_singular_scheme(rng):
    f = HomogeneousForm.random(5, 5, P, rng)
    assert inverse_system(f, 16).colength(16) == 0


def test_single_node(rng):
    # u^3 (xy + zt) plus generic lower terms in u: one node at the vertex
    xs = [HomogeneousForm.variable(5, i, P) for i in range(5)]
    u = xs[4]
    q = xs[0] * xs[1] + xs[2] * xs[3]
    f = u ** 3 * q
    for k in (3, 4, 5):
        f = f + u ** (5 - k) * embed(HomogeneousForm.random(4, k, P, rng), 5)
    assert inverse_system(f, 16).colength(16) == 1
    assert hessian_rank(f, (0, 0, 0, 0, 1)) == 4


def test_cone_free_triple_point(rng):
    f3, f4, f5 = (HomogeneousForm.random(4, k, P, rng) for k in (3, 4, 5))
    nc = node_count(assemble_quintic(f3, f4, f5))
    assert nc.mu2 == 0 and nc.tau_vertex == nc.total and 0 < nc.tau_vertex <= 16


@pytest.mark.slow
def test_model_round_trip(c3_model):
    text = c3_model.to_json()
    again = QuinticModel.from_json(text)
    assert again.to_json() == text
    assert again.F == c3_model.F and again.hilbert == (3, 1)


def test_model_rejects_tampering(c3_model):
    data = c3_model.to_dict()
    data["forms"]["F"][0] = (data["forms"]["F"][0] + 1) % c3_model.p
    with pytest.raises(ModelFormatError):
        QuinticModel.from_dict(data)
    with pytest.raises(ModelFormatError):
        QuinticModel.from_json("[1, 2]")
    data = c3_model.to_dict()
    data["schema_version"] = 99
    with pytest.raises(ModelFormatError):
        QuinticModel.from_dict(data)


def test_model_invariants(c3_model):
    assert c3_model.check() == []
    assert c3_model.certificates["F3_smooth"].filled
    g = branch_octic(c3_model.f3, c3_model.f4, c3_model.f5)
    assert not g.evaluate_many(c3_model.samples).any()


@pytest.mark.slow
def test_c3_report(c3_report):
    d = c3_report.to_dict()
    assert c3_report.status == "ok", [c for c in d["checks"] if not c["ok"]]
    assert (d["mu2"], d["tau_vertex"], d["delta"]) == (24, 15, 1)
    assert (d["hodge_X"]["h11"], d["hodge_X"]["h12"]) == (3, 67)
    assert d["singular_points"][0]["kind"] == "vertex"
    assert "status: ok" in c3_report.to_text()
