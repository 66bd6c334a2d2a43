"""Exact linear algebra over F_p.

Reduced row echelon forms are canonical, so every routine here returns the
same bits no matter how the elimination is scheduled.  Large products are
done in float64 through BLAS; inner dimensions are split so that every
partial sum stays below 2**53 and is therefore exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ROW_BLOCK = 128


def _inner_step(p: int) -> int:
    return max(1, (1 << 52) // ((p - 1) * (p - 1) + 1))


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p for integer matrices with entries in [0, p)."""
    a = np.asarray(a)
    b = np.asarray(b)
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    step = _inner_step(p)
    out = None
    for s in range(0, k, step):
        part = a[:, s:s + step].astype(np.float64) @ b[s:s + step].astype(np.float64)
        part = np.fmod(part, p)
        out = part if out is None else np.fmod(out + part, p)
    return out.astype(np.int64)


def _rref_small(x: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan on a short block; returns nonzero rows and their pivots."""
    x = x % p
    rows, _ = x.shape
    pivots: list[int] = []
    r = 0
    while r < rows:
        live = x[r:]
        nz = np.flatnonzero(live.any(axis=0))
        if len(nz) == 0:
            break
        c = int(nz[0])
        i = r + int(np.flatnonzero(live[:, c])[0])
        if i != r:
            x[[r, i]] = x[[i, r]]
        x[r] = x[r] * pow(int(x[r, c]), -1, p) % p
        col = x[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if len(hit):
            x[hit] = (x[hit] - col[hit, None] * x[r]) % p
        pivots.append(c)
        r += 1
    return x[:r], pivots


def rref(m, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form of m over F_p.

    Returns the nonzero rows (pivot columns strictly increasing, pivot entries
    1, zeros above and below each pivot) and the tuple of pivot columns.
    """
    m = np.atleast_2d(np.asarray(m, dtype=np.int64))
    if m.ndim != 2:
        raise ValueError("expected a matrix")
    n = m.shape[1]
    basis = np.zeros((0, n), dtype=np.int64)
    piv: list[int] = []
    for s in range(0, m.shape[0], ROW_BLOCK):
        chunk = m[s:s + ROW_BLOCK] % p
        if piv:
            chunk = (chunk - matmul_mod(chunk[:, piv], basis, p)) % p
        new, new_piv = _rref_small(chunk, p)
        if not new_piv:
            continue
        if piv:
            basis = (basis - matmul_mod(basis[:, new_piv], new, p)) % p
        basis = np.vstack([basis, new])
        piv.extend(new_piv)
    order = np.argsort(piv, kind="stable")
    basis = basis[order]
    pivots = tuple(int(piv[i]) for i in order)
    return basis, pivots


def rank(m, p: int) -> int:
    return len(rref(m, p)[1])


def nullspace(m, p: int) -> np.ndarray:
    """Basis (rows, in reduced echelon form) of {v : m v = 0}."""
    m = np.atleast_2d(np.asarray(m, dtype=np.int64))
    n = m.shape[1]
    r, piv = rref(m, p)
    free = [j for j in range(n) if j not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, j in enumerate(free):
        out[k, j] = 1
        if piv:
            out[k, list(piv)] = (-r[:, j]) % p
    if len(out):
        out, _ = rref(out, p)
    return out


def annihilator(basis: np.ndarray, pivots, n: int, p: int) -> np.ndarray:
    """Rows w with w . b = 0 for every row b of an RREF basis."""
    piv = list(pivots)
    free = [j for j in range(n) if j not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, j in enumerate(free):
        out[k, j] = 1
        if piv:
            out[k, piv] = (-basis[:, j]) % p
    return out


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^N held by its reduced row echelon basis."""

    p: int
    ambient: int
    basis: np.ndarray
    pivots: tuple[int, ...] = field(default=())

    def __post_init__(self):
        self.basis.flags.writeable = False

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and (self.p, self.ambient, self.pivots) == (other.p, other.ambient, other.pivots)
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.p, self.ambient, self.pivots, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})"

    def _compatible(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")
        if self.p != other.p:
            raise ValueError(f"field mismatch: {self.p} vs {other.p}")

    def constraints(self) -> np.ndarray:
        """Rows cutting out this subspace (its annihilator)."""
        return annihilator(self.basis, self.pivots, self.ambient, self.p)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(-1) % self.p
        if v.shape != (self.ambient,):
            raise ValueError("vector length does not match ambient dimension")
        if self.dim == 0:
            return not v.any()
        rest = (v - v[list(self.pivots)] @ self.basis) % self.p
        return not rest.any()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        self._compatible(other)
        if self.dim == 0:
            return True
        if other.dim == 0:
            return False
        rest = (self.basis - matmul_mod(self.basis[:, list(other.pivots)], other.basis, self.p)) % self.p
        return not rest.any()

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        return span(np.vstack([self.basis, other.basis]), self.p, self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)


def span(vectors, p: int, ambient: int | None = None) -> Subspace:
    if isinstance(vectors, np.ndarray):
        arr = np.atleast_2d(vectors).astype(np.int64)
        if vectors.size == 0 and ambient is not None:
            arr = np.zeros((0, ambient), dtype=np.int64)
    else:
        vectors = [list(v) for v in vectors]
        if not vectors:
            if ambient is None:
                raise ValueError("ambient dimension needed for an empty span")
            arr = np.zeros((0, ambient), dtype=np.int64)
        else:
            lengths = {len(v) for v in vectors}
            if len(lengths) != 1:
                raise ValueError(f"ragged input: vector lengths {sorted(lengths)}")
            arr = np.array(vectors, dtype=np.int64)
    if ambient is not None and arr.shape[1] != ambient:
        raise ValueError(f"vectors have length {arr.shape[1]}, expected {ambient}")
    basis, piv = rref(arr, p) if len(arr) else (arr[:0], ())
    return Subspace(p, arr.shape[1], basis, piv)


def full_space(n: int, p: int) -> Subspace:
    return Subspace(p, n, np.eye(n, dtype=np.int64), tuple(range(n)))


def zero_space(n: int, p: int) -> Subspace:
    return Subspace(p, n, np.zeros((0, n), dtype=np.int64), ())


def kernel(m, p: int, ambient: int | None = None) -> Subspace:
    m = np.asarray(m, dtype=np.int64)
    if m.ndim == 2 and m.shape[0] == 0:
        n = m.shape[1] if ambient is None else ambient
        return full_space(n, p)
    ns = nullspace(m, p)
    return Subspace(p, np.atleast_2d(m).shape[1], ns, _pivots_of(ns))


def _pivots_of(r: np.ndarray) -> tuple[int, ...]:
    return tuple(int(np.flatnonzero(row)[0]) for row in r)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """A ∩ B by restricting B's constraint rows to A."""
    a._compatible(b)
    if a.dim == 0 or b.dim == b.ambient:
        return a
    if b.dim == 0:
        return zero_space(a.ambient, a.p)
    q = b.constraints()
    restricted = matmul_mod(q, a.basis.T, a.p)  # (codim B) x (dim A)
    coeffs = nullspace(restricted, a.p)
    if len(coeffs) == 0:
        return zero_space(a.ambient, a.p)
    return span(matmul_mod(coeffs, a.basis, a.p), a.p, a.ambient)


def dump_matrix(m: np.ndarray, path=None) -> str:
    """Plain-text dump: header `rows cols`, then one row per line."""
    m = np.atleast_2d(np.asarray(m, dtype=np.int64))
    text = f"{m.shape[0]} {m.shape[1]}\n" + "\n".join(" ".join(map(str, r)) for r in m) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
