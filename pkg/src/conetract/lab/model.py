"""QuinticModel: one explicit quintic containing a cone, with JSON persistence."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from ..algebra import HomogeneousForm, basis_size, next_prime
from ..lattice import CurveClassD, degree, genus
from .construct import (
    Certificate,
    assemble_quintic,
    choose_points,
    hilbert_check,
    pick_surfaces,
    realize_curve,
    vanishing_space,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MODEL_KIND = "conetract.quintic_model"


class ModelFormatError(ValueError):
    pass


def default_prime(g: int) -> int:
    """Smallest prime above max(256, (2g+2)^2)."""
    return next_prime(max(256, (2 * g + 2) ** 2))


@dataclass
class QuinticModel:
    p: int
    seed: int
    cls: CurveClassD
    f3: HomogeneousForm
    f4: HomogeneousForm
    f5: HomogeneousForm
    F: HomogeneousForm
    samples: np.ndarray
    name: str | None = None
    certificates: dict[str, Certificate] = field(default_factory=dict)
    hilbert: tuple[int, int] | None = None
    ideal_dims: dict[int, int] = field(default_factory=dict)
    plane_points: list[list[int]] = field(default_factory=list)

    @property
    def d(self) -> int:
        return int(degree(self.cls))

    @property
    def g(self) -> int:
        return genus(self.cls)

    def curve_forms(self, k: int = 5) -> list[HomogeneousForm]:
        """Basis of I_C^(k), recomputed from the samples."""
        return [HomogeneousForm(4, k, self.p, r) for r in vanishing_space(self.samples, k, self.p)]

    def check(self) -> list[str]:
        """Invariant violations (empty when the model is consistent)."""
        problems = []
        if assemble_quintic(self.f3, self.f4, self.f5) != self.F:
            problems.append("F differs from u^2 F3 + u F4 + F5")
        for name, f in (("F3", self.f3), ("F4", self.f4), ("F5", self.f5)):
            if f.evaluate_many(self.samples).any():
                problems.append(f"{name} does not vanish on every sample")
        return problems

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": MODEL_KIND,
            "p": self.p,
            "seed": self.seed,
            "class": {"name": self.name, "a": int(self.cls.a), "b": [int(v) for v in self.cls.b]},
            "plane_points": self.plane_points,
            "forms": {k: [int(c) for c in f.coeffs] for k, f in
                      (("F3", self.f3), ("F4", self.f4), ("F5", self.f5), ("F", self.F))},
            "samples": [[int(v) for v in q] for q in self.samples],
            "hilbert": list(self.hilbert) if self.hilbert else None,
            "ideal_dims": {str(k): v for k, v in sorted(self.ideal_dims.items())},
            "certificates": {k: c.to_dict() for k, c in sorted(self.certificates.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "QuinticModel":
        try:
            if data.get("kind") != MODEL_KIND:
                raise ModelFormatError(f"not a quintic model (kind={data.get('kind')!r})")
            if data.get("schema_version") != SCHEMA_VERSION:
                raise ModelFormatError(f"unsupported schema_version {data.get('schema_version')!r}")
            p = int(data["p"])
            forms = data["forms"]
            shapes = {"F3": (4, 3), "F4": (4, 4), "F5": (4, 5), "F": (5, 5)}
            built = {}
            for key, (nv, deg) in shapes.items():
                coeffs = forms[key]
                if len(coeffs) != basis_size(nv, deg):
                    raise ModelFormatError(f"{key} has {len(coeffs)} coefficients, expected {basis_size(nv, deg)}")
                built[key] = HomogeneousForm(nv, deg, p, coeffs)
            samples = np.array(data["samples"], dtype=np.int64).reshape(-1, 4)
            c = data["class"]
            certs = {k: Certificate(bool(v["filled"]), int(v["degree"]), int(v["codim"]))
                     for k, v in data.get("certificates", {}).items()}
            model = cls(
                p, int(data["seed"]), CurveClassD(int(c["a"]), tuple(int(v) for v in c["b"])),
                built["F3"], built["F4"], built["F5"], built["F"], samples, c.get("name"), certs,
                tuple(data["hilbert"]) if data.get("hilbert") else None,
                {int(k): int(v) for k, v in data.get("ideal_dims", {}).items()},
                data.get("plane_points", []),
            )
        except ModelFormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFormatError(f"malformed model: {exc}") from exc
        problems = model.check()
        if problems:
            raise ModelFormatError("; ".join(problems))
        return model

    @classmethod
    def from_json(cls, text: str) -> "QuinticModel":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ModelFormatError("model JSON must be an object")
        return cls.from_dict(data)


def build_model(cls: CurveClassD, p: int | None = None, seed: int = 0, name: str | None = None) -> QuinticModel:
    """Realize the curve, pick F3, F4, F5 through it and assemble the quintic."""
    g = genus(cls)
    p = default_prime(g) if p is None else p
    cfg = choose_points(p, seed)
    curve = realize_curve(cfg, int(cls.a), tuple(int(v) for v in cls.b), seed, genus=g)
    d_est, g_est = hilbert_check(curve.samples, p)
    if (d_est, g_est) != (int(degree(cls)), g):
        raise ValueError(f"Hilbert function gives (d, g) = ({d_est}, {g_est}), lattice says ({degree(cls)}, {g})")
    choice = pick_surfaces(curve.samples, p, seed, cubic=curve.surface)
    f3, f4, f5 = (choice.forms[k] for k in (3, 4, 5))
    certs = {f"F{k}_smooth": choice.certificates[k] for k in (3, 4, 5)}
    log.info("built model for %s over F_%d (seed %d)", name or cls, p, seed)
    return QuinticModel(
        p, seed, cls, f3, f4, f5, assemble_quintic(f3, f4, f5), curve.samples, name, certs,
        (d_est, g_est), choice.ideal_dims, [list(q) for q in cfg.points],
    )
