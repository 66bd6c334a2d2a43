"""Graded pieces of the Jacobian ideal of a quintic and its node part.

Everything is done through Macaulay inverse systems: V_n is a basis of the
annihilator of J^(n) under the coefficient pairing.  Because J^(n+1) is
spanned by x_j * J^(n) once n >= 4, a functional w on degree n+1 kills
J^(n+1) exactly when every contraction x_j -| w kills J^(n).  That turns each
degree step into one small kernel computation instead of a rank computation
on the full Macaulay matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..algebra import (
    HomogeneousForm,
    basis_size,
    macaulay_rows,
    monomial_exponents,
    monomial_index,
    product_index,
)
from ..linalg import Subspace, kernel, matmul_mod, nullspace, span

log = logging.getLogger(__name__)

NVARS = 5
DEGREE_BUDGET = 18
VERTEX = (0, 0, 0, 0, 1)
COLON_MARGIN = 6


class StabilizationError(RuntimeError):
    """Colengths did not settle within the degree budget."""


@lru_cache(maxsize=None)
def _contraction_tables(n: int):
    """For degree n+1 monomials: index of m/x_j in degree n (or -1)."""
    exps = monomial_exponents(NVARS, n + 1)
    out = np.full((len(exps), NVARS), -1, dtype=np.int64)
    for j in range(NVARS):
        has = exps[:, j] > 0
        lower = exps[has].copy()
        lower[:, j] -= 1
        out[has, j] = monomial_index(NVARS, n, lower)
    return out


def jacobian_piece(f: HomogeneousForm, n: int) -> Subspace:
    """J^(n): span of degree-n multiples of the partials (F itself is in J by Euler)."""
    if n < f.degree - 1:
        raise ValueError(f"degree {n} below the partials' degree")
    rows = np.vstack([macaulay_rows(f.partial(i), n) for i in range(f.nvars)])
    return span(rows, f.p, basis_size(f.nvars, n))


def lift_inverse_system(v: np.ndarray, n: int, p: int) -> np.ndarray:
    """V_{n+1} from V_n (rows are functionals on degree-n monomials)."""
    c = len(v)
    table = _contraction_tables(n)
    if c == 0:
        return np.zeros((0, len(table)), dtype=np.int64)
    j0 = np.argmax(table >= 0, axis=1)
    base = table[np.arange(len(table)), j0]
    blocks = []
    for j in range(NVARS):
        sel = np.flatnonzero((table[:, j] >= 0) & (j0 != j))
        if len(sel) == 0:
            continue
        rows = np.zeros((len(sel), NVARS * c), dtype=np.int64)
        # lambda_{j0} . V[:, m/x_j0] - lambda_j . V[:, m/x_j] = 0
        left = v[:, base[sel]].T
        right = (-v[:, table[sel, j]].T) % p
        for jj in np.unique(j0[sel]):
            pick = j0[sel] == jj
            rows[pick, jj * c:(jj + 1) * c] = left[pick]
        rows[:, j * c:(j + 1) * c] = right
        blocks.append(rows)
    lam = nullspace(np.vstack(blocks), p)
    if len(lam) == 0:
        return np.zeros((0, len(table)), dtype=np.int64)
    w = np.zeros((len(lam), len(table)), dtype=np.int64)
    for jj in range(NVARS):
        pick = np.flatnonzero(j0 == jj)
        if len(pick):
            w[:, pick] = matmul_mod(lam[:, jj * c:(jj + 1) * c], v[:, base[pick]], p)
    return w


@dataclass
class InverseSystem:
    """Annihilators V_n of J^(n) for n = 4 .. top."""

    p: int
    levels: dict[int, np.ndarray] = field(default_factory=dict)

    def colength(self, n: int) -> int:
        return len(self.levels[n])

    @property
    def top(self) -> int:
        return max(self.levels)

    def colengths(self) -> dict[int, int]:
        return {n: len(v) for n, v in sorted(self.levels.items())}


def inverse_system(f: HomogeneousForm, top: int = DEGREE_BUDGET, stop_when_stable: int = 0) -> InverseSystem:
    """Compute V_4 .. V_top.  With stop_when_stable = s > 0, stop after s+1 equal colengths."""
    p = f.p
    j4 = jacobian_piece(f, f.degree - 1)
    v = j4.constraints()
    sys = InverseSystem(p, {f.degree - 1: v})
    run = 0
    for n in range(f.degree - 1, top):
        v = lift_inverse_system(v, n, p)
        sys.levels[n + 1] = v
        run = run + 1 if len(v) == len(sys.levels[n]) else 0
        log.debug("colength of J in degree %d: %d", n + 1, len(v))
        if stop_when_stable and run >= stop_when_stable:
            break
    return sys


def colon_constraints(v_top: np.ndarray, top: int, n: int, point_vars=(0, 1, 2, 3)) -> np.ndarray:
    """Rows cutting out {f in S^(n) : mu*f in J^(top) for all monomials mu of degree top-n in point_vars}."""
    k = top - n
    table = product_index(NVARS, k, n)  # (mult, N_n)
    mult = monomial_exponents(NVARS, k)
    others = [i for i in range(NVARS) if i not in point_vars]
    keep = np.flatnonzero(mult[:, others].sum(axis=1) == 0) if others else np.arange(len(mult))
    rows = v_top[:, table[keep]]  # (c, mult, N_n)
    return rows.reshape(-1, table.shape[1])


def node_ideal_piece(system: InverseSystem, n: int, top: int | None = None) -> Subspace:
    """Degree-n piece of the saturation of J away from the vertex O."""
    top = system.top if top is None else top
    rows = colon_constraints(system.levels[top], top, n)
    return kernel(rows, system.p, basis_size(NVARS, n))


@dataclass
class NodeCount:
    mu2: int
    tau_vertex: int
    total: int
    colengths: dict[int, int]
    node_codims: dict[int, int]
    node_ideal5: Subspace


def _first_plateau(seq: dict[int, int]):
    keys = sorted(seq)
    for a, b in zip(keys, keys[1:]):
        if b == a + 1 and seq[a] == seq[b]:
            return seq[a], a
    return None, None


def node_count(f: HomogeneousForm, top: int = DEGREE_BUDGET, system: InverseSystem | None = None,
               colon_margin: int = COLON_MARGIN) -> NodeCount:
    """(mu2, tau at the vertex) from colengths of J and of its vertex saturation.

    The node codimension in degree n is read off degree `top` with a colon
    by m_O^(top - n); only n <= top - colon_margin is trusted, so that power
    of m_O kills the vertex component.
    """
    if system is None:
        system = inverse_system(f, top)
    cols = system.colengths()
    if cols[system.top] != cols[system.top - 1]:
        raise StabilizationError(f"colength of J not stable up to degree {system.top}: {cols}")
    total = cols[system.top]
    codims = {n: node_ideal_piece(system, n).codim for n in range(f.degree, system.top - colon_margin + 1)}
    mu2, _ = _first_plateau(codims)
    if mu2 is None or codims[max(codims)] != mu2:
        raise StabilizationError(f"node ideal codimensions not stable: {codims}")
    return NodeCount(mu2, total - mu2, total, cols, codims, node_ideal_piece(system, f.degree))


def triple_point_piece(nvars: int = NVARS, degree: int = 5, p: int = 2) -> Subspace:
    """(m_O^3)^(degree) for O = [0:...:0:1]: monomials with u-exponent <= degree-3."""
    exps = monomial_exponents(nvars, degree)
    keep = np.flatnonzero(exps[:, -1] <= degree - 3)
    basis = np.zeros((len(keep), len(exps)), dtype=np.int64)
    basis[np.arange(len(keep)), keep] = 1
    return Subspace(p, len(exps), basis, tuple(int(k) for k in keep))


def ieq_dim(f: HomogeneousForm, node_ideal5: Subspace, mu2: int, mu3: int = 1) -> tuple[int, int]:
    """dim of the degree-5 equisingular piece and the defect."""
    j5 = jacobian_piece(f, 5)
    m3 = triple_point_piece(NVARS, 5, f.p)
    ieq = node_ideal5 & (m3 + j5)
    expected = basis_size(NVARS, 5) - 11 * mu3 - mu2
    return ieq.dim, ieq.dim - expected
