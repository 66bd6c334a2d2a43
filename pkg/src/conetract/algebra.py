"""Prime fields and dense homogeneous forms.

Forms are stored as dense coefficient vectors indexed by the graded-lex
monomial basis with fixed variable order (x, y, z, t, u).  Coefficient
arrays are read-only numpy int64 arrays with entries in [0, p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import Sequence

import numpy as np

VARIABLE_NAMES = ("x", "y", "z", "t", "u")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for q in range(3, isqrt(n) + 1, 2):
        if n % q == 0:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    q = n + 1
    while not is_prime(q):
        q += 1
    return q


class PrimeField:
    """The field F_p for an odd prime p > 5."""

    # keeps p*p*k below 2**53 for float64 matmul with k up to 8192
    MAX_PRIME = (1 << 20) - 3

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p <= 5:
            raise ValueError(f"prime must exceed 5, got {p}")
        if p > self.MAX_PRIME:
            raise ValueError(f"prime {p} exceeds supported bound {self.MAX_PRIME}")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F", self.p))

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            return self.div(value.numerator, value.denominator)
        return int(value) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.p, dtype=np.int64)

    def random(self, rng: np.random.Generator, size=None, nonzero: bool = False):
        low = 1 if nonzero else 0
        return rng.integers(low, self.p, size=size, dtype=np.int64)


# ---------------------------------------------------------------- monomials


@lru_cache(maxsize=None)
def _monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_exponents(nvars: int, degree: int) -> np.ndarray:
    """Exponent matrix (N x nvars) in graded-lex order, x > y > z > t > u."""
    if degree < 0:
        return np.zeros((0, nvars), dtype=np.int64)
    arr = np.array(_monomials(nvars, degree), dtype=np.int64).reshape(-1, nvars)
    arr.flags.writeable = False
    return arr


def basis_size(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return comb(degree + nvars - 1, nvars - 1)


def _keys(exps: np.ndarray, base: int) -> np.ndarray:
    key = np.zeros(exps.shape[:-1], dtype=np.int64)
    for i in range(exps.shape[-1]):
        key = key * base + exps[..., i]
    return key


@lru_cache(maxsize=None)
def _sorted_keys(nvars: int, degree: int) -> np.ndarray:
    # lex-descending order means keys are strictly decreasing; store ascending
    keys = _keys(monomial_exponents(nvars, degree), degree + 1)
    return keys[::-1].copy()


def monomial_index(nvars: int, degree: int, exps) -> np.ndarray:
    """Positions of exponent rows in the degree-`degree` basis."""
    exps = np.asarray(exps, dtype=np.int64)
    keys = _keys(exps, degree + 1)
    asc = _sorted_keys(nvars, degree)
    pos = np.searchsorted(asc, keys)
    return len(asc) - 1 - pos


@dataclass(frozen=True)
class MonomialBasis:
    nvars: int
    degree: int

    @property
    def exponents(self) -> np.ndarray:
        return monomial_exponents(self.nvars, self.degree)

    def __len__(self) -> int:
        return basis_size(self.nvars, self.degree)

    def index(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars or sum(exps) != self.degree or min(exps) < 0:
            raise ValueError(f"{tuple(exps)} is not a degree-{self.degree} monomial")
        return int(monomial_index(self.nvars, self.degree, [exps])[0])

    def name(self, i: int) -> str:
        e = self.exponents[i]
        parts = []
        for v, k in zip(VARIABLE_NAMES, e):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts) or "1"


@lru_cache(maxsize=None)
def product_index(nvars: int, d1: int, d2: int) -> np.ndarray:
    """Table T[i, j] = index of (monomial i of degree d1)*(monomial j of degree d2)."""
    a = monomial_exponents(nvars, d1)
    b = monomial_exponents(nvars, d2)
    s = a[:, None, :] + b[None, :, :]
    out = monomial_index(nvars, d1 + d2, s.reshape(-1, nvars)).reshape(len(a), len(b))
    out.flags.writeable = False
    return out


def power_table(points: np.ndarray, degree: int, p: int) -> np.ndarray:
    """pw[k, n, i] = points[n, i] ** k mod p for k = 0..degree."""
    points = np.asarray(points, dtype=np.int64) % p
    pw = np.empty((degree + 1,) + points.shape, dtype=np.int64)
    pw[0] = 1
    for k in range(1, degree + 1):
        pw[k] = pw[k - 1] * points % p
    return pw


def monomial_values(points: np.ndarray, degree: int, p: int) -> np.ndarray:
    """Matrix V[n, m] = value of monomial m (degree `degree`) at point n."""
    points = np.atleast_2d(np.asarray(points, dtype=np.int64))
    nvars = points.shape[1]
    exps = monomial_exponents(nvars, degree)
    pw = power_table(points, degree, p)
    vals = np.ones((points.shape[0], len(exps)), dtype=np.int64)
    for i in range(nvars):
        vals = vals * pw[exps[:, i], :, i].T % p
    return vals


# -------------------------------------------------------------------- forms


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.int64)
    arr.flags.writeable = False
    return arr


class HomogeneousForm:
    """A homogeneous polynomial over F_p as a dense coefficient vector."""

    __slots__ = ("nvars", "degree", "p", "coeffs")

    def __init__(self, nvars: int, degree: int, p: int, coeffs):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        coeffs = np.asarray(coeffs, dtype=np.int64) % p
        if coeffs.shape != (basis_size(nvars, degree),):
            raise ValueError(
                f"expected {basis_size(nvars, degree)} coefficients for "
                f"degree {degree} in {nvars} variables, got {coeffs.shape}"
            )
        object.__setattr__(self, "nvars", int(nvars))
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "p", int(p))
        object.__setattr__(self, "coeffs", _frozen(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("HomogeneousForm is immutable")

    # constructors
    @classmethod
    def zero(cls, nvars: int, degree: int, p: int) -> "HomogeneousForm":
        return cls(nvars, degree, p, np.zeros(basis_size(nvars, degree), dtype=np.int64))

    @classmethod
    def from_terms(cls, nvars: int, degree: int, p: int, terms) -> "HomogeneousForm":
        """Build from a mapping (or iterable of pairs) exponent-tuple -> coefficient."""
        coeffs = np.zeros(basis_size(nvars, degree), dtype=np.int64)
        items = terms.items() if isinstance(terms, dict) else terms
        basis = MonomialBasis(nvars, degree)
        for exps, c in items:
            coeffs[basis.index(tuple(exps))] += int(c)
        return cls(nvars, degree, p, coeffs)

    @classmethod
    def variable(cls, nvars: int, i: int, p: int) -> "HomogeneousForm":
        e = [0] * nvars
        e[i] = 1
        return cls.from_terms(nvars, 1, p, {tuple(e): 1})

    @classmethod
    def random(cls, nvars: int, degree: int, p: int, rng: np.random.Generator):
        return cls(nvars, degree, p, rng.integers(0, p, basis_size(nvars, degree)))

    # basic protocol
    def _check(self, other: "HomogeneousForm"):
        if not isinstance(other, HomogeneousForm):
            raise TypeError(f"expected HomogeneousForm, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if other.p != self.p:
            raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomogeneousForm)
            and (self.nvars, self.degree, self.p) == (other.nvars, other.degree, other.p)
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree, self.p, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"HomogeneousForm(nvars={self.nvars}, degree={self.degree}, p={self.p}, terms={self.nterms})"

    def __str__(self) -> str:
        basis = MonomialBasis(self.nvars, self.degree)
        terms = [f"{c}*{basis.name(i)}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    @property
    def nterms(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def is_proportional(self, other: "HomogeneousForm") -> bool:
        """True iff self = c*other for some nonzero scalar c (zero only matches zero)."""
        self._check(other)
        if self.degree != other.degree:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        i = int(np.flatnonzero(other.coeffs)[0])
        c = int(self.coeffs[i]) * pow(int(other.coeffs[i]), -1, self.p) % self.p
        return c != 0 and bool(np.array_equal(self.coeffs, other.coeffs * c % self.p))

    # arithmetic
    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        return HomogeneousForm(self.nvars, self.degree, self.p, self.coeffs + other.coeffs)

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("cannot subtract forms of different degree")
        return HomogeneousForm(self.nvars, self.degree, self.p, self.coeffs - other.coeffs)

    def __neg__(self) -> "HomogeneousForm":
        return HomogeneousForm(self.nvars, self.degree, self.p, -self.coeffs)

    def scale(self, c: int) -> "HomogeneousForm":
        return HomogeneousForm(self.nvars, self.degree, self.p, self.coeffs * (int(c) % self.p))

    def __mul__(self, other):
        if isinstance(other, HomogeneousForm):
            return multiply(self, other)
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HomogeneousForm":
        out = HomogeneousForm.from_terms(self.nvars, 0, self.p, {(0,) * self.nvars: 1})
        for _ in range(k):
            out = multiply(out, self)
        return out

    def partial(self, i: int) -> "HomogeneousForm":
        return partial(self, i)

    def evaluate(self, point) -> int:
        return evaluate(self, point)

    def evaluate_many(self, points) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=np.int64))
        if points.shape[1] != self.nvars:
            raise ValueError(f"points need {self.nvars} coordinates")
        if len(points) == 0:
            return np.zeros(0, dtype=np.int64)
        vals = monomial_values(points, self.degree, self.p)
        return _dot_mod(vals, self.coeffs, self.p)

    # text serialization
    def to_text(self) -> str:
        lines = [f"{self.nvars} {self.degree} {self.p}"]
        exps = monomial_exponents(self.nvars, self.degree)
        for i in np.flatnonzero(self.coeffs):
            lines.append(f"{int(self.coeffs[i])} " + ",".join(str(int(e)) for e in exps[i]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "HomogeneousForm":
        rows = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not rows:
            raise ValueError("empty form text")
        try:
            nvars, degree, p = (int(v) for v in rows[0].split())
        except ValueError as exc:
            raise ValueError(f"bad header {rows[0]!r}") from exc
        terms = []
        for ln in rows[1:]:
            c, _, e = ln.partition(" ")
            terms.append((tuple(int(v) for v in e.split(",")), int(c)))
        return cls.from_terms(nvars, degree, p, terms)


def _dot_mod(vals: np.ndarray, coeffs: np.ndarray, p: int) -> np.ndarray:
    # split the contraction so int64 never overflows (entries < p < 2**20)
    step = max(1, (1 << 62) // (p * p))
    out = np.zeros(vals.shape[0], dtype=np.int64)
    for s in range(0, vals.shape[1], step):
        out = (out + vals[:, s:s + step] @ coeffs[s:s + step]) % p
    return out


def multiply(f: HomogeneousForm, g: HomogeneousForm) -> HomogeneousForm:
    f._check(g)
    table = product_index(f.nvars, f.degree, g.degree)
    out = np.zeros(basis_size(f.nvars, f.degree + g.degree), dtype=np.int64)
    fi = np.flatnonzero(f.coeffs)
    gi = np.flatnonzero(g.coeffs)
    if len(fi) and len(gi):
        prods = f.coeffs[fi][:, None] * g.coeffs[gi][None, :] % f.p
        np.add.at(out, table[np.ix_(fi, gi)].ravel(), prods.ravel())
    return HomogeneousForm(f.nvars, f.degree + g.degree, f.p, out)


def partial(f: HomogeneousForm, i: int) -> HomogeneousForm:
    if f.degree < 1:
        raise ValueError("derivative of a degree-0 form is not defined here")
    if not 0 <= i < f.nvars:
        raise IndexError(f"variable index {i} out of range")
    exps = monomial_exponents(f.nvars, f.degree)
    mask = exps[:, i] > 0
    lowered = exps[mask].copy()
    lowered[:, i] -= 1
    out = np.zeros(basis_size(f.nvars, f.degree - 1), dtype=np.int64)
    out[monomial_index(f.nvars, f.degree - 1, lowered)] = f.coeffs[mask] * exps[mask, i] % f.p
    return HomogeneousForm(f.nvars, f.degree - 1, f.p, out)


def gradient(f: HomogeneousForm) -> list[HomogeneousForm]:
    return [partial(f, i) for i in range(f.nvars)]


def _check_point(f: HomogeneousForm, point) -> np.ndarray:
    pt = np.asarray(point, dtype=np.int64).reshape(-1) % f.p
    if pt.shape != (f.nvars,):
        raise ValueError(f"point needs {f.nvars} coordinates, got {pt.shape[0]}")
    if not pt.any():
        raise ValueError("the zero vector is not a projective point")
    return pt


def evaluate(f: HomogeneousForm, point) -> int:
    pt = _check_point(f, point)
    return int(f.evaluate_many(pt[None, :])[0])


def taylor_matrix(nvars: int, degree: int, point, chart: int, order: int, p: int) -> np.ndarray:
    """Linear map from coefficient vectors to affine Taylor coefficients.

    The point is normalized so its `chart` coordinate is 1; the rows are the
    coefficients of h^alpha, |alpha| <= order, in the remaining variables,
    listed by total order and then graded-lex.  Substitution x_i = P_i + h_i
    only produces binomial integers, so no division is needed.
    """
    pt = np.asarray(point, dtype=np.int64).reshape(-1) % p
    if pt[chart] == 0:
        raise ValueError(f"chart coordinate {chart} vanishes at the point")
    pt = pt * pow(int(pt[chart]), -1, p) % p
    others = [i for i in range(nvars) if i != chart]
    exps = monomial_exponents(nvars, degree)
    pw = power_table(pt[None, :], degree, p)[:, 0, :]
    rows = []
    for k in range(order + 1):
        for alpha in monomial_exponents(len(others), k):
            val = np.ones(len(exps), dtype=np.int64)
            for i, a in zip(others, alpha):
                e = exps[:, i]
                binom = np.array([comb(int(v), int(a)) % p for v in e], dtype=np.int64)
                val = val * binom % p * pw[np.clip(e - a, 0, None), i] % p
            rows.append(val)
    return np.array(rows, dtype=np.int64).reshape(-1, len(exps))


def jet_coefficients(f: HomogeneousForm, point, chart: int, order: int) -> np.ndarray:
    pt = _check_point(f, point)
    m = taylor_matrix(f.nvars, f.degree, pt, chart, order, f.p)
    return _dot_mod(m, f.coeffs, f.p)


def jet2_coefficients(f: HomogeneousForm, point, chart: int) -> np.ndarray:
    """The 15 (for five variables) Taylor coefficients of order <= 2 of f at a point.

    Slots: constant, linear terms h_i (i != chart), then quadratic terms
    h_i*h_j for i <= j in graded-lex order.  The characteristic is > 5, so the
    vanishing of all slots is exactly membership in the cube of the point's
    maximal ideal.
    """
    return jet_coefficients(f, point, chart, 2)


def macaulay_rows(g: HomogeneousForm, target_degree: int) -> np.ndarray:
    """Rows of g * (all monomials of degree target_degree - deg g), in the target basis."""
    k = target_degree - g.degree
    n_out = basis_size(g.nvars, target_degree)
    if k < 0:
        return np.zeros((0, n_out), dtype=np.int64)
    nz = np.flatnonzero(g.coeffs)
    table = product_index(g.nvars, k, g.degree)  # (n_mult, n_g)
    rows = np.zeros((table.shape[0], n_out), dtype=np.int64)
    r = np.repeat(np.arange(table.shape[0]), len(nz))
    rows[r, table[:, nz].ravel()] = np.tile(g.coeffs[nz], table.shape[0])
    return rows


def forms_from_rows(rows: np.ndarray, nvars: int, degree: int, p: int) -> list[HomogeneousForm]:
    return [HomogeneousForm(nvars, degree, p, r) for r in np.atleast_2d(rows)]


def embed(f: HomogeneousForm, nvars: int) -> HomogeneousForm:
    """View a form in the first f.nvars variables as a form in `nvars` variables."""
    if nvars < f.nvars:
        raise ValueError("cannot embed into fewer variables")
    exps = monomial_exponents(f.nvars, f.degree)
    pad = np.zeros((len(exps), nvars - f.nvars), dtype=np.int64)
    idx = monomial_index(nvars, f.degree, np.hstack([exps, pad]))
    out = np.zeros(basis_size(nvars, f.degree), dtype=np.int64)
    out[idx] = f.coeffs
    return HomogeneousForm(nvars, f.degree, f.p, out)


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
