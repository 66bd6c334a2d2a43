"""Hodge numbers of small resolutions of quintics with nodes and triple points."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

TRIPLE_POINT_MILNOR = 16
DEGREE = 5


def smooth_euler(d: int = DEGREE) -> int:
    """Euler number of a smooth degree-d hypersurface in P^4."""
    return d * (10 - 10 * d + 5 * d * d - d ** 3)


@dataclass(frozen=True)
class SingularityCounts:
    mu2: int
    mu3: int
    delta: int
    dim_Ieq5: int | None = None

    def __post_init__(self):
        if min(self.mu2, self.mu3) < 0:
            raise ValueError("singularity counts must be non-negative")
        if self.delta < 0:
            raise ValueError(f"defect {self.delta} < 0")
        if self.dim_Ieq5 is not None and self.delta != self.dim_Ieq5 - expected_ieq_dim(self.mu2, self.mu3):
            raise ValueError("defect does not match dim I_eq^(5)")


def expected_ieq_dim(mu2: int, mu3: int, d: int = DEGREE) -> int:
    """Dimension of the equisingular piece if every singular point imposed independent conditions."""
    return comb(2 * d - 1, 4) - 11 * mu3 - mu2


@dataclass(frozen=True)
class HodgeNumbers:
    h11: int
    h12: int
    validated: bool = True

    @property
    def e(self) -> int:
        return 2 * (self.h11 - self.h12)

    def as_tuple(self) -> tuple[int, int]:
        return (self.h11, self.h12)


def hodge_of_resolution(counts: SingularityCounts, d: int = DEGREE) -> HodgeNumbers:
    h11 = 1 + counts.mu3 + counts.delta
    h12 = comb(2 * d - 1, 4) - 5 * comb(d, 4) - 11 * counts.mu3 - counts.mu2 + counts.delta
    if h11 < 0 or h12 < 0:
        raise ValueError(f"inconsistent counts {counts}: Hodge numbers ({h11}, {h12})")
    return HodgeNumbers(h11, h12, validated=(d == DEGREE))


@dataclass(frozen=True)
class EulerCheck:
    ok: bool
    e: int
    e_singular_model: int
    residual_hodge: int
    residual_resolution: int


def euler_consistency(counts: SingularityCounts, h: HodgeNumbers, e_singular_model: int,
                      e: int | None = None) -> EulerCheck:
    """e(X) = 2(h11 - h12) and e(X) = e_smooth + 2 mu2 + 24 mu3 at once.

    `e_singular_model` is the Euler number of a smoothing of the singular
    quintic (-200).  A node adds its vanishing cycle and then the exceptional
    P^1; an ordinary triple point adds its Milnor number 16 and is then
    replaced by a cubic surface of Euler number 9, so 16 + 9 - 1 = 24.
    """
    e = h.e if e is None else e
    r1 = e - 2 * (h.h11 - h.h12)
    r2 = e - (e_singular_model + 2 * counts.mu2 + (TRIPLE_POINT_MILNOR + 8) * counts.mu3)
    return EulerCheck(r1 == 0 and r2 == 0, e, e_singular_model, r1, r2)


@dataclass(frozen=True)
class Transition:
    hodge: HodgeNumbers
    nodes: int
    k: int = 1

    @property
    def c(self) -> int:
        return self.nodes - self.k


def transition_hodge(h: HodgeNumbers, g: int) -> Transition:
    """Contract the type III divisor, then smooth: (h11 - 1, h12 + 2g - 3)."""
    if g <= 1:
        raise ValueError(f"transition formulas need genus > 1, got {g}")
    return Transition(HodgeNumbers(h.h11 - 1, h.h12 + 2 * g - 3, h.validated), 2 * g - 2)


@dataclass(frozen=True)
class Smoothability:
    verdict: str
    nodes: int | None = None
    remark: str = ""


def smoothability(g: int) -> Smoothability:
    if g < 0:
        raise ValueError("negative genus")
    if g == 0:
        return Smoothability("undetermined", None, "criterion needs genus >= 1")
    if g == 1:
        return Smoothability("smoothable", 0, "contraction deforms to an isomorphism")
    return Smoothability("smoothable", 2 * g - 2, f"deformed image has {2 * g - 2} nodes")


def mu2_target(h12_Ytilde: int, g: int, mu3: int = 1, delta: int = 1) -> int:
    """Invert the chain resolution -> transition for mu2 given h12 of the smoothing."""
    base = comb(9, 4) - 5 * comb(5, 4) - 11 * mu3 + delta
    return base + 2 * g - 3 - h12_Ytilde
