"""Chevalley structure constants under the extraspecial-pair sign convention.

For every non-simple positive root xi the extraspecial pair (gamma, delta) is
the decomposition xi = gamma + delta into positive roots whose first member
comes earliest in the canonical root order. Its constant is set to +(p + 1),
where p is the largest integer with delta - p*gamma a root. Everything else
follows from the standard recursion: antisymmetry, the negation rule, the
rotation rule for triples summing to zero, and, for the remaining positive
pairs, the formula obtained from the Jacobi identity applied to
e_a, e_b, e_{-gamma}.

``N[i][j]`` is 0 whenever roots[i] + roots[j] is not a root.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .rootsys import Root, RootSystem, RootSystemError, build_root_system

__all__ = [
    "CONVENTION",
    "ConstantTable",
    "IdentityReport",
    "build_table",
    "verify_identities",
    "sign_orbit",
]

CONVENTION = "extraspecial-pairs/canonical-order"


class ConstantTable:
    """N, N-hat and N^{2,1} for one root system.

    All three are stored as integer matrices indexed like ``system.roots``.
    ``N21[i][j]`` is defined (nonzero) exactly when roots i+j and 2i+j are
    roots; elsewhere it is 0.
    """

    def __init__(self, system: RootSystem, N: list[list[int]], convention: str = CONVENTION):
        self.system = system
        self.convention = convention
        n = len(system)
        self._N = [list(map(int, row)) for row in N]
        sums = system.sum_index
        self._Nhat = [[_hat(self._N[i][j]) for j in range(n)] for i in range(n)]
        N21 = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                s = sums[i][j]
                if s >= 0 and sums[i][s] >= 0:
                    N21[i][j] = self._N[i][j] * self._Nhat[i][s]
        self._N21 = N21

    # -- index access ---------------------------------------------------
    def n_idx(self, i: int, j: int) -> int:
        return self._N[i][j]

    def nhat_idx(self, i: int, j: int) -> int:
        return self._Nhat[i][j]

    def n21_idx(self, i: int, j: int) -> int:
        return self._N21[i][j]

    @property
    def matrix(self) -> list[list[int]]:
        return [row[:] for row in self._N]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self._N, dtype=np.int64)

    # -- root access ----------------------------------------------------
    def N(self, alpha: Root, beta: Root) -> int:
        phi = self.system
        return self._N[phi.index(alpha)][phi.index(beta)]

    def Nhat(self, alpha: Root, beta: Root) -> int:
        phi = self.system
        return self._Nhat[phi.index(alpha)][phi.index(beta)]

    def N21(self, alpha: Root, beta: Root) -> int:
        phi = self.system
        i, j = phi.index(alpha), phi.index(beta)
        s = phi.sum_index[i][j]
        if s < 0 or phi.sum_index[i][s] < 0:
            raise RootSystemError(f"N21 needs {alpha}+{beta} and 2*{alpha}+{beta} to be roots")
        return self._N21[i][j]

    # -- mutation helpers -------------------------------------------------
    def with_flipped_entry(self, alpha: Root, beta: Root) -> "ConstantTable":
        """Copy with the single entry N_{alpha,beta} negated (breaks antisymmetry)."""
        phi = self.system
        i, j = phi.index(alpha), phi.index(beta)
        if self._N[i][j] == 0:
            raise RootSystemError(f"N_{{{alpha},{beta}}} is zero; nothing to flip")
        N = self.matrix
        N[i][j] = -N[i][j]
        return ConstantTable(phi, N, convention=self.convention + f"+flip({alpha},{beta})")

    def with_flipped_orbit(self, alpha: Root, beta: Root) -> "ConstantTable":
        """Copy with every entry tied to N_{alpha,beta} by the two-term identities negated.

        The result still satisfies antisymmetry, the negation rule and the
        rotation rule, so only the cocycle identity (and the Lie algebra
        Jacobi identity) can detect the change.
        """
        phi = self.system
        i, j = phi.index(alpha), phi.index(beta)
        if self._N[i][j] == 0:
            raise RootSystemError(f"N_{{{alpha},{beta}}} is zero; nothing to flip")
        N = self.matrix
        for a, b in sign_orbit(phi, i, j):
            N[a][b] = -N[a][b]
        return ConstantTable(phi, N, convention=self.convention + f"+orbitflip({alpha},{beta})")

    def entries(self):
        """(alpha, beta, N, N21 or None) for all pairs with alpha+beta a root."""
        phi = self.system
        for i in range(len(phi)):
            for j in range(len(phi)):
                s = phi.sum_index[i][j]
                if s < 0:
                    continue
                n21 = self._N21[i][j] if phi.sum_index[i][s] >= 0 else None
                yield phi.roots[i], phi.roots[j], self._N[i][j], n21

    def to_json(self) -> dict:
        return {
            "system": self.system.label,
            "convention": self.convention,
            "entries": [
                dict(alpha=a.to_json(), beta=b.to_json(), N=n, **({"N21": n21} if n21 is not None else {}))
                for a, b, n, n21 in self.entries()
            ],
        }


def _hat(n: int) -> int:
    return n // 2 if abs(n) == 2 else n


def sign_orbit(phi: RootSystem, i: int, j: int) -> set[tuple[int, int]]:
    """Ordered pairs whose constants are tied to N_{ij} by antisymmetry, negation and rotation."""
    neg = phi.neg
    k = neg[phi.sum_index[i][j]]  # roots i, j, k sum to zero
    out = set()
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for x, y in ((a, b), (b, a), (neg[a], neg[b]), (neg[b], neg[a])):
            out.add((x, y))
    return out


def build_table(phi: RootSystem | str) -> ConstantTable:
    """Structure constants of ``phi`` under the extraspecial-pair convention."""
    if isinstance(phi, str):
        phi = build_root_system(phi)
    if phi.type_label == "G":
        raise RootSystemError("G2 is not supported")
    return _TableBuilder(phi).build()


class _TableBuilder:
    def __init__(self, phi: RootSystem):
        self.phi = phi
        self.n = len(phi)
        self.memo: dict[tuple[int, int], int] = {}
        self.positive = [i for i in range(self.n) if phi.height[i] > 0]
        self.extraspecial: dict[int, tuple[int, int]] = {}
        for xi in self.positive:
            for g in self.positive:  # canonical order, so the first hit is minimal
                d = phi.idx_multiple_sum([(1, xi), (-1, g)])
                if d is not None and phi.height[d] > 0:
                    self.extraspecial[xi] = (g, d)
                    break

    def string_p(self, a: int, b: int) -> int:
        """Largest p with roots[b] - p*roots[a] a root."""
        p = 0
        while self.phi.idx_multiple_sum([(1, b), (-(p + 1), a)]) is not None:
            p += 1
        return p

    def build(self) -> ConstantTable:
        N = [[0] * self.n for _ in range(self.n)]
        for i in range(self.n):
            for j in range(self.n):
                if self.phi.sum_index[i][j] >= 0:
                    N[i][j] = self.N(i, j)
        return ConstantTable(self.phi, N)

    def N(self, a: int, b: int) -> int:
        key = (a, b)
        if key in self.memo:
            return self.memo[key]
        phi = self.phi
        s = phi.sum_index[a][b]
        if s < 0:
            val = 0
        else:
            c = phi.neg[s]
            pa, pb, pc = (phi.height[x] > 0 for x in (a, b, c))
            if pa and pb:
                val = self.positive_pair(a, b)
            elif not pa and not pb:
                val = -self.N(phi.neg[a], phi.neg[b])
            elif pb == pc:
                # N_{a,b} = |c|^2/|a|^2 N_{b,c}
                val = _exact(phi.norm2[c] / phi.norm2[a] * self.N(b, c))
            else:
                # N_{a,b} = |c|^2/|b|^2 N_{c,a}
                val = _exact(phi.norm2[c] / phi.norm2[b] * self.N(c, a))
        self.memo[key] = val
        return val

    def positive_pair(self, a: int, b: int) -> int:
        phi = self.phi
        if a > b:
            return -self.N(b, a)
        xi = phi.sum_index[a][b]
        g, d = self.extraspecial[xi]
        if (a, b) == (g, d):
            return self.string_p(g, d) + 1
        # Jacobi on e_a, e_b, e_{-g}; terms whose sums are not roots vanish
        ng = phi.neg[g]
        nd = phi.neg[d]
        total = Fraction(0)
        bg = phi.sum_index[b][ng]
        if bg >= 0:
            total += Fraction(self.N(b, ng) * self.N(a, nd), phi.norm2[bg])
        ag = phi.sum_index[a][ng]
        if ag >= 0:
            total += Fraction(self.N(ng, a) * self.N(b, nd), phi.norm2[ag])
        return _exact(phi.norm2[xi] * total / self.N(g, d))


def _exact(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise AssertionError(f"non-integral structure constant {x}")
    return int(x)


# -- verification -----------------------------------------------------------

@dataclass
class IdentityReport:
    passed: bool
    pairs_checked: int = 0
    triples_checked: int = 0
    failures: int = 0
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = {
            "status": "pass" if self.passed else "fail",
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "failures": self.failures,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        d.update(self.details)
        return d


def verify_identities(table: ConstantTable) -> IdentityReport:
    """Check the two-term identities on all pairs and the cocycle identity on all admissible triples."""
    phi = table.system
    n = len(phi)
    N = table._N
    neg = phi.neg
    sums = phi.sum_index
    report = IdentityReport(passed=True)
    first = None
    fails = 0
    pairs = 0
    for i in range(n):
        for j in range(n):
            s = sums[i][j]
            if s == -2:
                continue
            pairs += 1
            if s == -1:
                ok = N[i][j] == 0
                rel = "zero-extension"
            else:
                c = neg[s]
                nab = N[i][j]
                r1 = phi.norm2[s] / phi.norm2[i] * N[j][c]
                r2 = phi.norm2[s] / phi.norm2[j] * N[c][i]
                ok = nab != 0 and nab == -N[j][i] == -N[neg[i]][neg[j]] == r1 == r2
                rel = "two-term"
            if not ok:
                fails += 1
                if first is None:
                    first = {"identity": rel, "alpha": phi.roots[i].to_json(), "beta": phi.roots[j].to_json(),
                             "N": N[i][j]}
    report.pairs_checked = pairs

    # cocycle identity, vectorized over all ordered triples
    A = np.zeros((n + 1, n + 1), dtype=np.int64)
    A[:n, :n] = table.array
    S = np.array(sums, dtype=np.int64)
    S[S < 0] = n
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    negv = np.array(neg)
    indep = (a != b) & (a != negv[b]) & (b != c) & (b != negv[c]) & (a != c) & (a != negv[c])
    nonzero_sum = S[a, b] != negv[c]
    mask = indep & nonzero_sum
    # where a+b is not a root, S[a,b]==n and the comparison above is harmlessly true
    val = (
        A[a, S[b, c]] * A[b, c]
        + A[b, S[c, a]] * A[c, a]
        + A[c, S[a, b]] * A[a, b]
    )
    bad = mask & (val != 0)
    report.triples_checked = int(mask.sum())
    nbad = int(bad.sum())
    fails += nbad
    if nbad and first is None:
        x, y, z = (int(v) for v in np.argwhere(bad)[0])
        first = {"identity": "cocycle", "alpha": phi.roots[x].to_json(), "beta": phi.roots[y].to_json(),
                 "gamma": phi.roots[z].to_json(), "value": int(val[x, y, z])}
    # magnitude rule: |N| = 2 exactly for short + short = long
    for i, j in itertools.product(range(n), repeat=2):
        s = sums[i][j]
        if s < 0:
            continue
        want = 2 if (not phi.is_long[i] and not phi.is_long[j] and phi.is_long[s]) else 1
        if abs(N[i][j]) != want:
            fails += 1
            if first is None:
                first = {"identity": "magnitude", "alpha": phi.roots[i].to_json(),
                         "beta": phi.roots[j].to_json(), "N": N[i][j], "expected_abs": want}
    report.failures = fails
    report.passed = fails == 0
    report.witness = first
    return report
