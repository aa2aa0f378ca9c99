"""Chevalley-basis Lie algebra and its adjoint root unipotents.

This is the independent oracle for the structure constants and for the word
calculus: brackets are assembled from the constant table and the pairing,
Jacobi is checked on every basis triple, and x_alpha(a) is realized as the
polynomial matrix exp(a ad e_alpha), a finite sum since ad e_alpha is
nilpotent.

Basis order: the simple coroots h_1..h_r, then e_alpha for alpha in the
canonical root order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .polyring import Poly, PolyRing
from .rootsys import Root, RootSystem, RootSystemError
from .structconst import ConstantTable

__all__ = [
    "ChevalleyAlgebra",
    "JacobiError",
    "MatPoly",
    "build_algebra",
    "adjoint_unipotent",
    "word_matrix",
    "check_relations_adjoint",
    "RelationResult",
]

# float64 matmul is exact while every partial sum stays below 2**53
_EXACT_BOUND = 2.0 ** 50


class JacobiError(ArithmeticError):
    """The bracket built from a table violates the Jacobi identity."""

    def __init__(self, triple: tuple[str, str, str], value: dict):
        self.triple = triple
        self.value = value
        super().__init__(f"Jacobi fails on ({', '.join(triple)}): {value}")


class ChevalleyAlgebra:
    """Structure tensor ``C[i, j, k]`` with [b_i, b_j] = sum_k C[i, j, k] b_k."""

    def __init__(self, table: ConstantTable, check: bool = True):
        self.table = table
        phi = self.system = table.system
        r = phi.rank
        n = len(phi)
        self.dim = d = r + n
        C = np.zeros((d, d, d), dtype=np.int64)
        simple = phi.simple_indices
        coroot = _coroot_coefficients(phi)
        for k in range(n):
            ek = r + k
            for i, si in enumerate(simple):
                p = phi.pairing_table[k][si]
                C[i, ek, ek] = p
                C[ek, i, ek] = -p
            for m in range(n):
                s = phi.sum_index[k][m]
                if s >= 0:
                    C[ek, r + m, r + s] = table.n_idx(k, m)
                elif s == -2:
                    for i, c in enumerate(coroot[k]):
                        C[ek, r + m, i] = c
        self.C = C
        if check:
            bad = self.jacobi_witness()
            if bad is not None:
                raise JacobiError(*bad)

    def basis_label(self, i: int) -> str:
        r = self.system.rank
        return f"h{i + 1}" if i < r else f"e{self.system.roots[i - r]}"

    def e_index(self, root: Root) -> int:
        return self.system.rank + self.system.index(root)

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.C)

    def jacobi_tensor(self) -> np.ndarray:
        C = self.C
        T = np.einsum("ijm,mkl->ijkl", C, C)
        return T + np.einsum("jkil->ijkl", T) + np.einsum("kijl->ijkl", T)

    def jacobi_witness(self):
        J = self.jacobi_tensor()
        nz = np.argwhere(J != 0)
        if len(nz) == 0:
            return None
        i, j, k, _ = (int(v) for v in nz[0])
        val = {self.basis_label(l): int(J[i, j, k, l]) for l in range(self.dim) if J[i, j, k, l]}
        return (self.basis_label(i), self.basis_label(j), self.basis_label(k)), val

    def ad(self, root: Root) -> np.ndarray:
        """Matrix of ad e_root acting on column vectors."""
        return self.ad_idx(self.system.index(root))

    def ad_idx(self, k: int) -> np.ndarray:
        e = self.system.rank + k
        return self.C[e].T.copy()


def _coroot_coefficients(phi: RootSystem) -> list[tuple[int, ...]]:
    """alpha^vee in the basis of simple coroots, for every root."""
    out = []
    for k in range(len(phi)):
        # alpha^vee = sum c_i alpha_i^vee  <=>  alpha / |alpha|^2 = sum c_i alpha_i / |alpha_i|^2
        # so c_i = coefficient_i * |alpha_i|^2 / |alpha|^2
        coeffs = phi.coefficients[k]
        c = []
        for i, si in enumerate(phi.simple_indices):
            v = Fraction(coeffs[i]) * phi.norm2[si] / phi.norm2[k]
            if v.denominator != 1:
                raise AssertionError("non-integral coroot coefficient")
            c.append(int(v))
        out.append(tuple(c))
    return out


def build_algebra(table: ConstantTable) -> ChevalleyAlgebra:
    """Assemble the Chevalley algebra; raises :class:`JacobiError` on an inconsistent table."""
    return ChevalleyAlgebra(table)


class MatPoly:
    """A square matrix with entries in a :class:`PolyRing`, stored per monomial."""

    __slots__ = ("ring", "dim", "terms")

    def __init__(self, ring: PolyRing, dim: int, terms: dict):
        self.ring = ring
        self.dim = dim
        self.terms = {e: m for e, m in terms.items() if np.any(m)}

    @classmethod
    def identity(cls, ring: PolyRing, dim: int) -> "MatPoly":
        return cls(ring, dim, {(0,) * ring.nvars: np.eye(dim)})

    def __matmul__(self, other: "MatPoly") -> "MatPoly":
        out: dict = {}
        for e1, m1 in self.terms.items():
            for e2, m2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = m1 @ m2
                if e in out:
                    out[e] = out[e] + p
                else:
                    out[e] = p
        for m in out.values():
            if m.size and np.abs(m).max() > _EXACT_BOUND:
                raise OverflowError("matrix entries too large for exact float arithmetic")
        return MatPoly(self.ring, self.dim, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatPoly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        z = np.zeros((self.dim, self.dim))
        return all(np.array_equal(self.terms.get(k, z), other.terms.get(k, z)) for k in keys)

    def substitute_zero(self) -> np.ndarray:
        """Value with every variable set to 0 (only defined for polynomial entries)."""
        z = (0,) * self.ring.nvars
        out = np.zeros((self.dim, self.dim))
        for e, m in self.terms.items():
            if any(k < 0 for k in e):
                raise ValueError("cannot set an inverted variable to 0")
            if e == z:
                out = out + m
        return out

    def entry(self, i: int, j: int) -> Poly:
        return Poly(self.ring, {e: int(round(m[i, j])) for e, m in self.terms.items() if m[i, j]})

    def first_difference(self, other: "MatPoly"):
        keys = sorted(set(self.terms) | set(other.terms))
        z = np.zeros((self.dim, self.dim))
        for k in keys:
            a, b = self.terms.get(k, z), other.terms.get(k, z)
            if not np.array_equal(a, b):
                i, j = (int(v) for v in np.argwhere(a != b)[0])
                return i, j
        return None


def _powers(alg: ChevalleyAlgebra, k: int) -> list[np.ndarray]:
    cache = alg.__dict__.setdefault("_exp_cache", {})
    if k not in cache:
        X = alg.ad_idx(k).astype(np.int64)
        terms = [np.eye(alg.dim, dtype=np.int64)]
        P = terms[0]
        j = 1
        while True:
            P = P @ X
            if not P.any():
                break
            if np.any(P % math.factorial(j)):
                raise AssertionError("adjoint exponential is not integral")
            terms.append(P // math.factorial(j))
            j += 1
        cache[k] = [t.astype(np.float64) for t in terms]
    return cache[k]


def adjoint_unipotent(alg: ChevalleyAlgebra, root: Root | int, arg: Poly) -> MatPoly:
    """exp(arg * ad e_root) as a polynomial matrix."""
    k = root if isinstance(root, int) else alg.system.index(root)
    ring = arg.ring
    out: dict = {}
    power = ring.one
    for j, M in enumerate(_powers(alg, k)):
        if j:
            power = power * arg
        for e, c in power.terms.items():
            if e in out:
                out[e] = out[e] + c * M
            else:
                out[e] = c * M
    return MatPoly(ring, alg.dim, out)


def word_matrix(alg: ChevalleyAlgebra, letters: Iterable[tuple[int, Poly]], ring: PolyRing) -> MatPoly:
    """Product of the adjoint unipotents of (root index, argument) letters."""
    M = MatPoly.identity(ring, alg.dim)
    for k, p in letters:
        if p.is_zero:
            continue
        M = M @ adjoint_unipotent(alg, k, p)
    return M


@dataclass
class RelationResult:
    relation: str
    alpha: Root
    beta: Root
    status: str
    witness: dict | None = None

    def to_json(self) -> dict:
        d = {"relation": self.relation, "alpha": self.alpha.to_json(), "beta": self.beta.to_json(),
             "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class AdjointReport:
    system: str
    results: list[RelationResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    @property
    def failures(self) -> list[RelationResult]:
        return [r for r in self.results if r.status != "pass"]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.results:
            out[r.relation] = out.get(r.relation, 0) + 1
        return out

    def to_json(self) -> dict:
        return {"system": self.system, "status": "pass" if self.passed else "fail",
                "counts": self.counts(), "failures": [r.to_json() for r in self.failures]}


def check_relations_adjoint(alg: ChevalleyAlgebra, roots: Sequence[int] | None = None) -> AdjointReport:
    """Check R1 for every root and R2/R3/R4 for every nonparallel pair as matrix identities over Z[a, b]."""
    phi = alg.system
    T = alg.table
    ring = PolyRing("a b")
    a, b = ring.gens
    n = len(phi)
    idx = range(n) if roots is None else roots
    report = AdjointReport(phi.label)
    X = {}

    def x(k, p):
        key = (k, p)
        if key not in X:
            X[key] = adjoint_unipotent(alg, k, p)
        return X[key]

    for i in idx:
        lhs = x(i, a) @ x(i, b)
        rhs = x(i, a + b)
        report.results.append(_result("R1", phi, i, i, lhs, rhs))
        for j in range(n):
            if j == i or j == phi.neg[i]:
                continue
            s = phi.sum_index[i][j]
            left = x(i, a) @ x(j, b) @ x(i, -a) @ x(j, -b)
            if s < 0:
                if j < i:
                    continue  # the pair was already checked in the other order
                rel, right = "R2", MatPoly.identity(ring, alg.dim)
            elif phi.sum_index[i][s] >= 0:
                rel = "R4"
                right = x(s, T.n_idx(i, j) * a * b) @ x(phi.sum_index[i][s], T.n21_idx(i, j) * a * a * b)
            elif phi.sum_index[j][s] >= 0:
                # the R4 relation for (beta, alpha), read as its inverse
                rel = "R4"
                t = phi.sum_index[j][s]
                right = x(t, -T.n21_idx(j, i) * b * b * a) @ x(s, T.n_idx(i, j) * a * b)
            else:
                rel = "R3"
                right = x(s, T.n_idx(i, j) * a * b)
            report.results.append(_result(rel, phi, i, j, left, right))
    return report


def _result(rel, phi, i, j, lhs: MatPoly, rhs: MatPoly) -> RelationResult:
    if lhs == rhs:
        return RelationResult(rel, phi.roots[i], phi.roots[j], "pass")
    pos = lhs.first_difference(rhs)
    wit = {"entry": list(pos) if pos else None}
    if pos:
        wit["lhs"] = str(lhs.entry(*pos))
        wit["rhs"] = str(rhs.entry(*pos))
    return RelationResult(rel, phi.roots[i], phi.roots[j], "fail", wit)
