"""Words in root elements and their collection to normal form.

A word is a sequence of letters x_alpha(p) with Laurent-polynomial
arguments. When every letter lives in a special closed set Sigma, repeated
use of the Steinberg relations rewrites the word into the unique ordered
product over Sigma (canonical root order restricted to Sigma). Only the
relations among roots of Sigma are used, so a collected identity holds in any
subgroup presentation that keeps those roots, in particular one with a pair
of opposite roots removed.

Commutators are [x, y] = x y x^-1 y^-1 and conjugates are ^y x = y x y^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .polyring import Poly, PolyRing
from .rootsys import (
    Root,
    RootSubset,
    RootSystem,
    RootSystemError,
    closure,
    cone_coefficients,
    special_cone,
)
from .structconst import ConstantTable

__all__ = [
    "Letter",
    "Word",
    "NormalForm",
    "CollectionError",
    "EscapeError",
    "Collector",
    "collect",
    "commutator_word",
    "inverse_word",
    "conj_expand",
    "root_action",
    "extract_constants",
    "h_conjugation_polys",
    "closure_subset",
    "DERIVED_RULE4_SIGN",
    "PRINTED_RULE4_SIGN",
]

#: sign of the x_{alpha+2beta} factor in the fourth root-action rule, as
#: forced by the commutator relations
DERIVED_RULE4_SIGN = +1
#: the sign as it appears in the printed definition
PRINTED_RULE4_SIGN = -1


class CollectionError(ValueError):
    """Invalid support, letters outside it, or a runaway rewrite."""


class EscapeError(CollectionError):
    """A rewrite produced a root outside the allowed support."""

    def __init__(self, root: Root, message: str = ""):
        self.root = root
        super().__init__(message or f"root {root} escapes the support")


@dataclass(frozen=True)
class Letter:
    root: Root
    arg: Poly

    def __str__(self) -> str:
        return f"x{self.root}({self.arg})"


Word = list  # list[Letter]


def inverse_word(word: Sequence[Letter]) -> list[Letter]:
    return [Letter(l.root, -l.arg) for l in reversed(word)]


def commutator_word(w1: Sequence[Letter], w2: Sequence[Letter]) -> list[Letter]:
    """w1 w2 w1^-1 w2^-1, letterwise."""
    return list(w1) + list(w2) + inverse_word(w1) + inverse_word(w2)


def format_word(word: Iterable[Letter]) -> str:
    return " ".join(str(l) for l in word) or "1"


class NormalForm:
    """The ordered product of x_alpha(args[alpha]) over a special closed support."""

    __slots__ = ("support", "_args")

    def __init__(self, support: RootSubset, args: Mapping[int, Poly]):
        self.support = support
        self._args = {k: p for k, p in sorted(args.items()) if not p.is_zero}

    @property
    def args(self) -> dict[Root, Poly]:
        roots = self.support.parent.roots
        return {roots[k]: p for k, p in self._args.items()}

    @property
    def index_args(self) -> dict[int, Poly]:
        return dict(self._args)

    def get(self, root: Root, default=None):
        k = self.support.parent.find(root)
        return self._args.get(k, default)

    def letters(self) -> list[Letter]:
        roots = self.support.parent.roots
        return [Letter(roots[k], p) for k, p in self._args.items()]

    def index_letters(self) -> list[tuple[int, Poly]]:
        return list(self._args.items())

    def is_identity(self) -> bool:
        return not self._args

    def __len__(self) -> int:
        return len(self._args)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.support.parent is other.support.parent and self._args == other._args

    def __hash__(self) -> int:
        return hash(tuple(self._args.items()))

    def __str__(self) -> str:
        return format_word(self.letters())

    def __repr__(self) -> str:
        return f"NormalForm({self})"

    def to_json(self) -> list[dict]:
        return [{"root": l.root.to_json(), "arg": str(l.arg)} for l in self.letters()]


def closure_subset(phi: RootSystem, roots: Iterable[int | Root]) -> RootSubset:
    idx = [r if isinstance(r, int) else phi.index(r) for r in roots]
    return RootSubset(phi, closure(phi, idx))


class Collector:
    """Index-level word calculus bound to one constant table."""

    def __init__(self, table: ConstantTable, rule4_sign: int = DERIVED_RULE4_SIGN, max_steps: int = 200_000):
        self.table = table
        self.phi = table.system
        self.rule4_sign = rule4_sign
        self.max_steps = max_steps
        phi = self.phi
        n = len(phi)
        sums = phi.sum_index
        # commutator shapes: [x_c(p), x_r(q)] = prod x_target(coeff * p^ep * q^eq)
        shapes: list[list] = [[None] * n for _ in range(n)]
        for c in range(n):
            for r in range(n):
                s = sums[c][r]
                if s == -1 or c == r:
                    shapes[c][r] = ()
                elif s == -2:
                    shapes[c][r] = None
                elif sums[c][s] >= 0:
                    shapes[c][r] = ((s, table.n_idx(c, r), 1, 1), (sums[c][s], table.n21_idx(c, r), 2, 1))
                elif sums[r][s] >= 0:
                    shapes[c][r] = ((sums[r][s], -table.n21_idx(r, c), 1, 2), (s, table.n_idx(c, r), 1, 1))
                else:
                    shapes[c][r] = ((s, table.n_idx(c, r), 1, 1),)
        self.shapes = shapes

    # -- primitives ---------------------------------------------------------
    def commutator(self, c: int, p: Poly, r: int, q: Poly) -> list[tuple[int, Poly]]:
        """[x_c(p), x_r(q)] as letters, by R2/R3/R4 in the appropriate orientation."""
        shape = self.shapes[c][r]
        if shape is None:
            raise EscapeError(self.phi.roots[c], f"no commutator formula for opposite roots {self.phi.roots[c]}")
        out = []
        for t, coeff, ep, eq in shape:
            arg = (p if ep == 1 else p * p) * (q if eq == 1 else q * q) * coeff
            out.append((t, arg))
        return out

    def collect_idx(self, letters: Iterable[tuple[int, Poly]], members: frozenset[int],
                    strategy: str = "leftmost") -> dict[int, Poly]:
        w = [(k, p) for k, p in letters if not p.is_zero]
        for k, _ in w:
            if k not in members:
                raise CollectionError(f"letter root {self.phi.roots[k]} is not in the support")
        if strategy == "leftmost":
            self._collect_leftmost(w, members)
        elif strategy == "lowest":
            self._collect_lowest(w, members)
        else:
            raise CollectionError(f"unknown strategy {strategy!r}")
        return dict(w)

    def _rewrite(self, w, i, members) -> None:
        k1, p1 = w[i]
        k2, p2 = w[i + 1]
        if k1 == k2:
            s = p1 + p2
            if s.is_zero:
                del w[i:i + 2]
            else:
                w[i:i + 2] = [(k1, s)]
            return
        comm = self.commutator(k1, p1, k2, p2)
        for t, _ in comm:
            if t not in members:
                raise EscapeError(self.phi.roots[t])
        w[i:i + 2] = comm + [(k2, p2), (k1, p1)]

    def _collect_leftmost(self, w, members) -> None:
        i = 0
        steps = 0
        while i < len(w) - 1:
            if w[i][0] < w[i + 1][0]:
                i += 1
                continue
            steps += 1
            if steps > self.max_steps:
                raise CollectionError("collection did not terminate within the step limit")
            self._rewrite(w, i, members)
            i = max(i - 1, 0)

    def _collect_lowest(self, w, members) -> None:
        height = self.phi.height
        steps = 0
        while True:
            best = None
            for i in range(len(w) - 1):
                k1, k2 = w[i][0], w[i + 1][0]
                if k1 >= k2:
                    key = (height[k1] + height[k2], i)
                    if best is None or key < best:
                        best = key
            if best is None:
                return
            steps += 1
            if steps > self.max_steps:
                raise CollectionError("collection did not terminate within the step limit")
            self._rewrite(w, best[1], members)

    def conj_letter(self, c: int, p: Poly, word, members: frozenset[int]) -> list[tuple[int, Poly]]:
        """^{x_c(p)} applied letterwise to a word, via ^x y = [x, y] y."""
        out = []
        for r, q in word:
            comm = self.commutator(c, p, r, q)
            for t, _ in comm:
                if t not in members:
                    raise EscapeError(self.phi.roots[t])
            out.extend(comm)
            out.append((r, q))
        return out

    def conj_word(self, conjugator, word, members: frozenset[int]) -> dict[int, Poly]:
        """^{g_1 ... g_m} word, applying g_m first and collecting after each step."""
        cur = list(word)
        for c, p in reversed(list(conjugator)):
            cur = list(self.collect_idx(self.conj_letter(c, p, cur, members), members).items())
        return dict(self.collect_idx(cur, members))

    def root_action(self, a: int, u: Poly, k: int, p: Poly) -> list[tuple[int, Poly]]:
        """The four-case conjugation rule ^{x_a(u)} x_k(p) for k != +-a."""
        phi = self.phi
        T = self.table
        if k == a or k == phi.neg[a]:
            raise CollectionError(f"root action of x_{phi.roots[a]} is undefined on {phi.roots[k]}")
        s = phi.sum_index[a][k]
        if s < 0:
            return [(k, p)]
        first = [(k, p), (s, T.n_idx(a, k) * u * p)]
        t = phi.sum_index[a][s]
        if t >= 0:  # 2a + k is a root
            return first + [(t, T.n21_idx(a, k) * u * u * p)]
        t = phi.sum_index[k][s]
        if t >= 0:  # a + 2k is a root
            return first + [(t, self.rule4_sign * T.n21_idx(k, a) * u * p * p)]
        return first

    def root_action_word(self, a: int, u: Poly, word) -> list[tuple[int, Poly]]:
        out = []
        for k, p in word:
            out.extend(self.root_action(a, u, k, p))
        return out


# -- public API ----------------------------------------------------------------

def _check_support(phi: RootSystem, sigma: RootSubset) -> None:
    if sigma.parent is not phi:
        raise CollectionError("support belongs to a different root system")
    if not sigma.closed:
        raise CollectionError("support is not closed")
    if not sigma.special:
        raise CollectionError("support is not special")


def _to_idx(phi: RootSystem, word: Iterable[Letter]) -> list[tuple[int, Poly]]:
    return [(phi.index(l.root), l.arg) for l in word]


def _collector(table: ConstantTable, rule4_sign: int = DERIVED_RULE4_SIGN) -> Collector:
    cache = table.__dict__.setdefault("_collectors", {})
    if rule4_sign not in cache:
        cache[rule4_sign] = Collector(table, rule4_sign)
    return cache[rule4_sign]


def collect(phi: RootSystem, table: ConstantTable, sigma: RootSubset, word: Sequence[Letter],
            strategy: str = "leftmost") -> NormalForm:
    """Normal form of ``word`` over the special closed set ``sigma``."""
    _check_support(phi, sigma)
    args = _collector(table).collect_idx(_to_idx(phi, word), sigma.members, strategy)
    return NormalForm(sigma, args)


def conj_expand(phi: RootSystem, table: ConstantTable, sigma: RootSubset, conjugator: Letter,
                word: Sequence[Letter]) -> NormalForm:
    """Normal form of conjugator * word * conjugator^-1 over ``sigma``.

    The conjugator's root may lie outside ``sigma``; every root produced by
    the commutator formula must lie inside it.
    """
    _check_support(phi, sigma)
    C = _collector(table)
    c = phi.index(conjugator.root)
    args = C.conj_word([(c, conjugator.arg)], _to_idx(phi, word), sigma.members)
    return NormalForm(sigma, args)


def root_action(table: ConstantTable, alpha: Root, u: Poly, letter: Letter,
                rule4_sign: int = DERIVED_RULE4_SIGN) -> list[Letter]:
    """^{x_alpha(u)} x_beta(b) expanded by the four-case rule (beta != +-alpha)."""
    phi = table.system
    C = _collector(table, rule4_sign)
    out = C.root_action(phi.index(alpha), u, phi.index(letter.root), letter.arg)
    return [Letter(phi.roots[k], p) for k, p in out]


def xbg_letters(table: ConstantTable, beta: int, gamma: int, b: Poly, c: Poly) -> list[tuple[int, Poly]]:
    """Letters of [x_beta(N_{beta,gamma} b), x_gamma(c)]."""
    n = table.n_idx(beta, gamma)
    return [(beta, n * b), (gamma, c), (beta, -n * b), (gamma, -c)]


def extract_constants(phi: RootSystem, table: ConstantTable, beta: Root, gamma: Root, delta: Root,
                      return_form: bool = False):
    """The integers A_{ijk} of [x_{beta,gamma}(b, c), x_delta(d)] = prod x_{i beta + j gamma + k delta}(A b^i c^j d^k).

    ``beta + gamma`` must be a root of the same length as both, and delta
    must lie outside Z beta + Z gamma. The commutator is expanded as a
    conjugate of x_delta(d) and collected over
    Phi cap (Z>=0 beta + Z>=0 gamma + Z>0 delta).
    """
    ib, ig, idl = phi.index(beta), phi.index(gamma), phi.index(delta)
    ia = phi.sum_index[ib][ig]
    if ia < 0 or not (phi.norm2[ia] == phi.norm2[ib] == phi.norm2[ig]):
        raise RootSystemError("beta + gamma must be a root of the same length as beta and gamma")
    coeffs = cone_coefficients(phi, [beta, gamma])
    if coeffs(idl) is not None:
        raise RootSystemError("delta must lie outside Z beta + Z gamma")
    sigma = special_cone(phi, [(beta, ">=0"), (gamma, ">=0"), (delta, ">0")])
    if not sigma.special:
        raise AssertionError("elimination cone is not special")
    ring = PolyRing("b c d")
    b, c, d = ring.gens
    C = _collector(table)
    conj = C.conj_word(xbg_letters(table, ib, ig, b, c), [(idl, d)], sigma.members)
    args = C.collect_idx(list(conj.items()) + [(idl, -d)], sigma.members)
    nf = NormalForm(sigma, args)
    cc = cone_coefficients(phi, [beta, gamma, delta])
    A: dict[tuple[int, int, int], int] = {}
    stray = []
    for k, p in args.items():
        i, j, kk = cc(k)
        A[(i, j, kk)] = p.coefficient((i, j, kk))
        if len(p.terms) != 1 or A[(i, j, kk)] == 0:
            stray.append((phi.roots[k], str(p)))
    if stray:
        raise AssertionError(f"collected arguments are not single monomials b^i c^j d^k: {stray}")
    if return_form:
        return A, nf
    return A


def h_conjugation_polys(phi: RootSystem, table: ConstantTable, alpha: Root, beta: Root,
                        rule4_sign: int = DERIVED_RULE4_SIGN) -> dict[tuple[int, int], Poly]:
    """Laurent polynomials P_{ij}(t) with ^{h_alpha(t)} x_beta(b) = prod x_{i alpha + j beta}(P_{ij}(t) b^j).

    h_alpha(t) = w_alpha(t) w_alpha(1)^-1 with w_alpha(a) = x_alpha(a) x_{-alpha}(-a^-1) x_alpha(a);
    each of its six letters acts through the root-action rules, innermost
    first, and the result is collected over {i alpha + j beta : j > 0}.
    """
    ia, ib = phi.index(alpha), phi.index(beta)
    if ib in (ia, phi.neg[ia]):
        raise RootSystemError("alpha and beta must be linearly independent")
    if not phi.is_long[ia]:
        raise RootSystemError("alpha must be a long root")
    ring = PolyRing("b t", invertible="t")
    b, t = ring.gens
    na = phi.neg[ia]
    one = ring.one
    h_letters = [(ia, t), (na, -t ** -1), (ia, t), (ia, -one), (na, one), (ia, -one)]
    coeffs = cone_coefficients(phi, [alpha, beta])
    members = frozenset(k for k in range(len(phi)) if coeffs(k) is not None and coeffs(k)[1] > 0)
    sigma = RootSubset(phi, members)
    if not sigma.special:
        raise AssertionError("{i alpha + j beta : j > 0} is not special")
    C = _collector(table, rule4_sign)
    word = [(ib, b)]
    for a, u in reversed(h_letters):
        word = list(C.collect_idx(C.root_action_word(a, u, word), members).items())
    out: dict[tuple[int, int], Poly] = {}
    for k in sorted(members):
        i, j = coeffs(k)
        p = dict(word).get(k, ring.zero)
        # divide by b^j
        terms = {}
        for e, cf in p.terms.items():
            if e[0] != j:
                raise AssertionError(f"argument on {phi.roots[k]} is not of the form P(t) b^{j}: {p}")
            terms[(e[1],)] = cf
        out[(i, j)] = Poly(_T_RING, terms)
    return out


_T_RING = PolyRing("t", invertible="t")
