"""Irreducible root systems in their standard Euclidean realizations.

Coordinates are exact rationals with denominator 1 or 2 (the half-integral
short roots of F4 and the spinor roots of E6-E8). Every system carries a
fixed simple base, and roots are stored in one canonical total order:
increasing height with respect to that base, ties broken lexicographically
on the coordinates. All the integer tables used by the word calculus
(negation, addition, pairings) are precomputed on root indices.

Simple bases:

    A_n  e_i - e_{i+1}                        (in R^{n+1})
    B_n  e_i - e_{i+1}, e_n
    C_n  e_i - e_{i+1}, 2 e_n
    D_n  e_i - e_{i+1}, e_{n-1} + e_n
    E8   (e1+e8-e2-...-e7)/2, e1+e2, e2-e1, e3-e2, ..., e7-e6
    E7   the first seven of the E8 base, E6 the first six
    F4   e2-e3, e3-e4, e4, (e1-e2-e3-e4)/2
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "Root",
    "RootSystem",
    "RootSubset",
    "RootSystemError",
    "ZERO",
    "NOT_A_ROOT",
    "build_root_system",
    "pairing",
    "add_roots",
    "equal_length_decompositions",
    "special_cone",
    "rank2_span",
    "closure",
    "classify",
    "Decomposition",
]


class RootSystemError(ValueError):
    """Invalid type label, rank, or root argument."""


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


#: returned by :func:`add_roots` when the two roots are opposite
ZERO = _Marker("ZERO")
#: returned by :func:`add_roots` when the sum is neither a root nor zero
NOT_A_ROOT = _Marker("NOT_A_ROOT")

# sentinels inside the integer addition table
_SUM_NONE = -1
_SUM_ZERO = -2


def _frac(x) -> Fraction:
    f = Fraction(x)
    if f.denominator not in (1, 2):
        raise RootSystemError(f"coordinate {f} has denominator outside {{1, 2}}")
    return f


@dataclass(frozen=True)
class Root:
    """A vector of the ambient Euclidean space, compared structurally."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_frac(c) for c in self.coords))

    @classmethod
    def of(cls, *coords) -> "Root":
        return cls(tuple(coords))

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, k: int) -> "Root":
        return Root(tuple(k * c for c in self.coords))

    def dot(self, other: "Root") -> Fraction:
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    @property
    def norm2(self) -> Fraction:
        return self.dot(self)

    @property
    def doubled(self) -> tuple[int, ...]:
        return tuple(int(2 * c) for c in self.coords)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Root":
        return cls(tuple(Fraction(s) for s in data))

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coords) + "]"

    __repr__ = __str__


def _e(dim: int, *pairs) -> Root:
    v = [Fraction(0)] * dim
    for i, c in pairs:
        v[i - 1] += Fraction(c)
    return Root(tuple(v))


def _classical_roots(type_label: str, n: int) -> tuple[int, list[Root], list[Root]]:
    if type_label == "A":
        dim = n + 1
        roots = [_e(dim, (i, 1), (j, -1)) for i in range(1, dim + 1) for j in range(1, dim + 1) if i != j]
        simple = [_e(dim, (i, 1), (i + 1, -1)) for i in range(1, n + 1)]
        return dim, roots, simple
    dim = n
    long_roots = [
        _e(dim, (i, si), (j, sj))
        for i, j in itertools.combinations(range(1, n + 1), 2)
        for si in (1, -1)
        for sj in (1, -1)
    ]
    simple = [_e(dim, (i, 1), (i + 1, -1)) for i in range(1, n)]
    if type_label == "B":
        return dim, long_roots + [_e(dim, (i, s)) for i in range(1, n + 1) for s in (1, -1)], simple + [_e(dim, (n, 1))]
    if type_label == "C":
        return dim, long_roots + [_e(dim, (i, 2 * s)) for i in range(1, n + 1) for s in (1, -1)], simple + [_e(dim, (n, 2))]
    if type_label == "D":
        return dim, long_roots, simple + [_e(dim, (n - 1, 1), (n, 1))]
    raise AssertionError(type_label)


def _e8() -> tuple[list[Root], list[Root]]:
    dim = 8
    roots = [
        _e(dim, (i, si), (j, sj))
        for i, j in itertools.combinations(range(1, 9), 2)
        for si in (1, -1)
        for sj in (1, -1)
    ]
    half = Fraction(1, 2)
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(Root(tuple(half * s for s in signs)))
    simple = [
        Root((half, -half, -half, -half, -half, -half, -half, half)),
        _e(dim, (1, 1), (2, 1)),
    ] + [_e(dim, (k, 1), (k - 1, -1)) for k in range(2, 8)]
    return roots, simple


def _f4() -> tuple[list[Root], list[Root]]:
    dim = 4
    roots = [
        _e(dim, (i, si), (j, sj))
        for i, j in itertools.combinations(range(1, 5), 2)
        for si in (1, -1)
        for sj in (1, -1)
    ]
    roots += [_e(dim, (i, s)) for i in range(1, 5) for s in (1, -1)]
    half = Fraction(1, 2)
    roots += [Root(tuple(half * s for s in signs)) for signs in itertools.product((1, -1), repeat=4)]
    simple = [_e(dim, (2, 1), (3, -1)), _e(dim, (3, 1), (4, -1)), _e(dim, (4, 1)), Root((half, -half, -half, -half))]
    return roots, simple


def _int_solve(gens: list[tuple[int, ...]], v: tuple[int, ...]) -> tuple[Fraction, ...] | None:
    """Exact coefficients of ``v`` in the span of independent ``gens`` (or None)."""
    k = len(gens)
    # Gaussian elimination over Fractions on the transposed system
    rows = [[Fraction(g[r]) for g in gens] + [Fraction(v[r])] for r in range(len(v))]
    piv_rows = []
    r0 = 0
    for c in range(k):
        p = next((r for r in range(r0, len(rows)) if rows[r][c] != 0), None)
        if p is None:
            raise RootSystemError("generators are linearly dependent")
        rows[r0], rows[p] = rows[p], rows[r0]
        pv = rows[r0][c]
        rows[r0] = [x / pv for x in rows[r0]]
        for r in range(len(rows)):
            if r != r0 and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[r0])]
        piv_rows.append(r0)
        r0 += 1
    if any(rows[r][k] != 0 for r in range(r0, len(rows))):
        return None
    return tuple(rows[r][k] for r in piv_rows)


def _rank(vectors: Iterable[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class _Projector:
    """Integer-exact coordinates of vectors with respect to independent generators."""

    def __init__(self, gens: list[tuple[int, ...]]):
        self.gens = gens
        k = len(gens)
        dim = len(gens[0])
        # choose k coordinate rows with a nonzero minor
        self.rows = None
        for rows in itertools.combinations(range(dim), k):
            m = [[gens[j][r] for j in range(k)] for r in rows]
            d = _det(m)
            if d != 0:
                self.rows, self.det = rows, d
                self.adj = _adjugate(m)
                break
        if self.rows is None:
            raise RootSystemError("generators are linearly dependent")

    def coefficients(self, v: tuple[int, ...]) -> tuple[Fraction, ...] | None:
        vr = [v[r] for r in self.rows]
        num = [sum(a * b for a, b in zip(row, vr)) for row in self.adj]
        d = self.det
        # reconstruct and compare: sum num_j g_j == d * v
        for r in range(len(v)):
            if sum(num[j] * self.gens[j][r] for j in range(len(num))) != d * v[r]:
                return None
        return tuple(Fraction(x, d) for x in num)


def _det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n))


def _adjugate(m: list[list[int]]) -> list[list[int]]:
    n = len(m)
    if n == 1:
        return [[1]]
    cof = [[(-1) ** (i + j) * _det([row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]) for j in range(n)] for i in range(n)]
    return [[cof[j][i] for j in range(n)] for i in range(n)]


_VALID = {"A": 1, "B": 2, "C": 2, "D": 3}


class RootSystem:
    """An irreducible reduced root system with a fixed simple base.

    ``roots[i]`` is the i-th root in canonical order; all integer tables
    (``neg``, ``sum_index``, ``pairing_table``, ``height``) are indexed the
    same way. Instances are immutable and safe to share.
    """

    def __init__(self, type_label: str, rank: int):
        type_label = str(type_label).upper()
        self.type_label = type_label
        self.rank = int(rank)
        if type_label in _VALID:
            if self.rank < max(2, _VALID[type_label]):
                raise RootSystemError(f"{type_label}{rank}: rank too small for an irreducible system of rank >= 2")
            dim, roots, simple = _classical_roots(type_label, self.rank)
        elif type_label == "E" and self.rank in (6, 7, 8):
            dim = 8
            roots, simple = _e8()
            if self.rank < 8:
                # E7, E6 are the roots orthogonal to e7+e8 (and e6-e7)
                constraints = [_e(8, (7, 1), (8, 1))]
                if self.rank == 6:
                    constraints.append(_e(8, (6, 1), (7, -1)))
                roots = [r for r in roots if all(r.dot(c) == 0 for c in constraints)]
                simple = simple[: self.rank]
        elif type_label == "F" and self.rank == 4:
            dim = 4
            roots, simple = _f4()
        elif type_label == "G":
            raise RootSystemError("G2 is not supported: its structure constants reach 3")
        else:
            raise RootSystemError(f"no irreducible root system of type {type_label}{rank}")
        self.dim = dim
        self.simple_roots: tuple[Root, ...] = tuple(simple)

        gram_gens = [s.doubled for s in simple]
        proj = _Projector(gram_gens)
        keyed = []
        for r in roots:
            c = proj.coefficients(r.doubled)
            if c is None or any(x.denominator != 1 for x in c):
                raise AssertionError(f"root {r} is not an integral combination of the base")
            coeffs = tuple(int(x) for x in c)
            if not (all(x >= 0 for x in coeffs) or all(x <= 0 for x in coeffs)):
                raise AssertionError(f"root {r} has mixed-sign coefficients")
            keyed.append(((sum(coeffs), r.coords), r, coeffs))
        keyed.sort(key=lambda t: t[0])
        self.roots: tuple[Root, ...] = tuple(t[1] for t in keyed)
        self.coefficients: tuple[tuple[int, ...], ...] = tuple(t[2] for t in keyed)
        self.height: tuple[int, ...] = tuple(sum(c) for c in self.coefficients)
        self._index = {r: i for i, r in enumerate(self.roots)}
        self._dindex = {r.doubled: i for i, r in enumerate(self.roots)}
        n = len(self.roots)
        self.doubled = tuple(r.doubled for r in self.roots)
        self.norm2 = tuple(r.norm2 for r in self.roots)
        lengths = sorted(set(self.norm2))
        self.long_norm2 = lengths[-1]
        self.is_long = tuple(x == self.long_norm2 for x in self.norm2)
        self.neg = tuple(self._dindex[tuple(-x for x in d)] for d in self.doubled)
        sums = []
        for i in range(n):
            di = self.doubled[i]
            row = []
            for j in range(n):
                s = tuple(a + b for a, b in zip(di, self.doubled[j]))
                if j == self.neg[i]:
                    row.append(_SUM_ZERO)
                else:
                    row.append(self._dindex.get(s, _SUM_NONE))
            sums.append(tuple(row))
        self.sum_index: tuple[tuple[int, ...], ...] = tuple(sums)
        dots = [[sum(a * b for a, b in zip(self.doubled[i], self.doubled[j])) for j in range(n)] for i in range(n)]
        self._dots4 = dots
        self.pairing_table: tuple[tuple[int, ...], ...] = tuple(
            tuple(_exact_int(Fraction(2 * dots[i][j], dots[j][j])) for j in range(n)) for i in range(n)
        )
        self.simple_indices = tuple(self._index[s] for s in self.simple_roots)

    # -- lookup ---------------------------------------------------------
    @property
    def label(self) -> str:
        return f"{self.type_label}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.label}, {len(self.roots)} roots)"

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __contains__(self, root) -> bool:
        return isinstance(root, Root) and root in self._index

    def index(self, root: Root) -> int:
        try:
            return self._index[root]
        except KeyError:
            raise RootSystemError(f"{root} is not a root of {self.label}") from None

    def find(self, root: Root) -> int | None:
        return self._index.get(root)

    def index_of_doubled(self, doubled: tuple[int, ...]) -> int | None:
        return self._dindex.get(doubled)

    def root(self, coords: Iterable) -> Root:
        r = Root(tuple(coords))
        self.index(r)
        return r

    def positive(self) -> tuple[Root, ...]:
        return tuple(r for r, h in zip(self.roots, self.height) if h > 0)

    def is_long_root(self, root: Root) -> bool:
        return self.is_long[self.index(root)]

    def dot_idx(self, i: int, j: int) -> Fraction:
        return Fraction(self._dots4[i][j], 4)

    def idx_add(self, i: int, j: int) -> int:
        """Index of roots[i] + roots[j]; -1 if not a root, -2 if zero."""
        return self.sum_index[i][j]

    def idx_multiple_sum(self, terms: Iterable[tuple[int, int]]) -> int | None:
        """Index of sum(k * roots[i]) or None."""
        v = [0] * self.dim
        for k, i in terms:
            d = self.doubled[i]
            for r in range(self.dim):
                v[r] += k * d[r]
        return self._dindex.get(tuple(v))

    def to_json(self) -> dict:
        return {"type": self.type_label, "rank": self.rank, "roots": [r.to_json() for r in self.roots]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _exact_int(f: Fraction) -> int:
    if f.denominator != 1:
        raise AssertionError(f"non-integral pairing {f}")
    return int(f)


_CACHE: dict[tuple[str, int], RootSystem] = {}


def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    """Return the root system of the given type, e.g. ``("F", 4)`` or ``"F4"``."""
    if rank is None:
        s = str(type_label).strip().upper()
        if len(s) < 2 or not s[1:].isdigit():
            raise RootSystemError(f"cannot parse system label {type_label!r}")
        type_label, rank = s[0], int(s[1:])
    key = (str(type_label).upper(), int(rank))
    if key not in _CACHE:
        _CACHE[key] = RootSystem(*key)
    return _CACHE[key]


def pairing(phi: RootSystem, alpha: Root, beta: Root) -> int:
    """The integer 2(alpha, beta) / |beta|^2."""
    return phi.pairing_table[phi.index(alpha)][phi.index(beta)]


def add_roots(phi: RootSystem, alpha: Root, beta: Root):
    """alpha + beta as a Root, or the ZERO / NOT_A_ROOT markers."""
    s = phi.sum_index[phi.index(alpha)][phi.index(beta)]
    if s == _SUM_ZERO:
        return ZERO
    if s == _SUM_NONE:
        return NOT_A_ROOT
    return phi.roots[s]


# -- subsets -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RootSubset:
    """A set of roots of ``parent`` with its closed/special/symmetric flags."""

    parent: RootSystem
    members: frozenset[int]
    closed: bool = field(init=False)
    special: bool = field(init=False)
    symmetric: bool = field(init=False)

    def __post_init__(self):
        m = self.members
        sums = self.parent.sum_index
        closed = all(sums[i][j] < 0 or sums[i][j] in m for i in m for j in m)
        negs = {self.parent.neg[i] for i in m}
        object.__setattr__(self, "closed", closed)
        object.__setattr__(self, "special", closed and not (negs & m))
        object.__setattr__(self, "symmetric", closed and negs == m)

    @classmethod
    def from_roots(cls, parent: RootSystem, roots: Iterable[Root]) -> "RootSubset":
        return cls(parent, frozenset(parent.index(r) for r in roots))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def roots(self) -> tuple[Root, ...]:
        return tuple(self.parent.roots[i] for i in self.indices)

    def __contains__(self, root) -> bool:
        if isinstance(root, Root):
            i = self.parent.find(root)
            return i is not None and i in self.members
        return root in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.roots)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSubset) and self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    @cached_property
    def type(self) -> str:
        return classify(self.parent, self.members)

    def __repr__(self) -> str:
        flags = [n for n in ("closed", "special", "symmetric") if getattr(self, n)]
        return f"RootSubset({len(self.members)} roots of {self.parent.label}, {'/'.join(flags) or 'not closed'})"


def closure(phi: RootSystem, members: Iterable[int]) -> frozenset[int]:
    """Smallest closed subset of ``phi`` containing the given root indices."""
    out = set(members)
    frontier = list(out)
    sums = phi.sum_index
    while frontier:
        new = []
        for i in frontier:
            for j in list(out):
                s = sums[i][j]
                if s >= 0 and s not in out:
                    out.add(s)
                    new.append(s)
        frontier = new
    return frozenset(out)


def classify(phi: RootSystem, members: Iterable[int]) -> str:
    """Cartan type of a symmetric closed subset, e.g. ``"A1xA1"`` or ``"C3"``."""
    members = set(members)
    comps = []
    seen: set[int] = set()
    for start in sorted(members):
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            i = stack.pop()
            if i in comp:
                continue
            comp.add(i)
            stack.extend(j for j in members if j not in comp and phi._dots4[i][j] != 0)
        seen |= comp
        comps.append(comp)
    labels = [_classify_irreducible(phi, c) for c in comps]
    labels.sort(key=lambda s: (-int(s[1:]), s))
    # opposite roots land in the same component, so this is well defined
    return "x".join(labels)


def _classify_irreducible(phi: RootSystem, comp: set[int]) -> str:
    r = _rank(phi.doubled[i] for i in comp)
    n = len(comp)
    norms = [phi.norm2[i] for i in comp]
    lengths = sorted(set(norms))
    if len(lengths) == 1:
        if n == r * (r + 1):
            return f"A{r}"
        if n == 2 * r * (r - 1):
            return f"D{r}"
        if (r, n) in ((6, 72), (7, 126), (8, 240)):
            return f"E{r}"
    else:
        short = sum(1 for x in norms if x == lengths[0])
        if r == 4 and n == 48:
            return "F4"
        if r == 2 and n == 12:
            return "G2"
        if n == 2 * r * r:
            if short == 2 * r:
                return f"B{r}"
            if short == 2 * r * (r - 1):
                return f"C{r}"
    return f"?{r}[{n}]"


def _coeff_projector(phi: RootSystem, gens: Sequence[Root]) -> _Projector:
    return _Projector([g.doubled for g in gens])


def special_cone(phi: RootSystem, generators: Sequence[tuple[Root, str]]) -> RootSubset:
    """Roots of ``phi`` in the integral cone spanned by ``generators``.

    Each generator carries a constraint ``">=0"`` or ``">0"`` on its
    (integer) coefficient; generators must be linearly independent.
    """
    gens = []
    strict = []
    for g, c in generators:
        c = c.replace(" ", "")
        if c not in (">=0", ">0"):
            raise RootSystemError(f"unsupported cone constraint {c!r} (use '>=0' or '>0')")
        phi.index(g)
        gens.append(g)
        strict.append(c == ">0")
    if not gens:
        raise RootSystemError("empty generator list")
    proj = _coeff_projector(phi, gens)
    members = set()
    for i, d in enumerate(phi.doubled):
        c = proj.coefficients(d)
        if c is None or any(x.denominator != 1 for x in c):
            continue
        if all((x > 0) if s else (x >= 0) for x, s in zip(c, strict)):
            members.add(i)
    return RootSubset(phi, frozenset(members))


def cone_coefficients(phi: RootSystem, gens: Sequence[Root]):
    """Return a function mapping a root index to its integer coefficient tuple (or None)."""
    proj = _coeff_projector(phi, gens)

    def coeffs(i: int):
        c = proj.coefficients(phi.doubled[i])
        if c is None or any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    return coeffs


def rank2_span(phi: RootSystem, alpha: Root, beta: Root) -> RootSubset:
    """``phi`` intersected with the lattice Z alpha + Z beta."""
    ia, ib = phi.index(alpha), phi.index(beta)
    if ib in (ia, phi.neg[ia]):
        raise RootSystemError("rank2_span needs nonparallel roots")
    coeffs = cone_coefficients(phi, [alpha, beta])
    return RootSubset(phi, frozenset(i for i in range(len(phi)) if coeffs(i) is not None))


@dataclass(frozen=True)
class Decomposition:
    beta: Root
    gamma: Root
    #: a decomposition beta = beta1 + gamma1 outside Z beta + Z gamma
    second_level: tuple[Root, Root]
    #: Cartan type of the smallest subsystem containing beta, gamma, beta1, gamma1
    subsystem_type: str


def equal_length_decompositions(phi: RootSystem, alpha: Root) -> list[Decomposition]:
    """All ordered pairs (beta, gamma) with beta + gamma = alpha, all three of equal length."""
    if phi.type_label in ("B", "C"):
        raise RootSystemError("equal-length decompositions are not guaranteed in types B and C")
    if phi.rank < 3:
        raise RootSystemError("equal-length decompositions need rank >= 3")
    ia = phi.index(alpha)
    out = []
    for ib, ig in _equal_length_pairs(phi, ia):
        second = _second_level(phi, ib, ig)
        if second is None:
            raise AssertionError(f"no second-level decomposition for {phi.roots[ib]} + {phi.roots[ig]}")
        ib1, ig1 = second
        sub = closure(phi, [ib, ig, ib1, ig1] + [phi.neg[k] for k in (ib, ig, ib1, ig1)])
        out.append(Decomposition(phi.roots[ib], phi.roots[ig], (phi.roots[ib1], phi.roots[ig1]), classify(phi, sub)))
    return out


def _equal_length_pairs(phi: RootSystem, ia: int) -> list[tuple[int, int]]:
    pairs = []
    n2 = phi.norm2[ia]
    for ib in range(len(phi)):
        if phi.norm2[ib] != n2:
            continue
        ig = phi.idx_multiple_sum([(1, ia), (-1, ib)])
        if ig is not None and phi.norm2[ig] == n2:
            pairs.append((ib, ig))
    return pairs


def equal_length_pairs(phi: RootSystem, alpha: Root) -> list[tuple[Root, Root]]:
    """The (beta, gamma) pairs of :func:`equal_length_decompositions` without the subsystem report."""
    return [(phi.roots[b], phi.roots[g]) for b, g in _equal_length_pairs(phi, phi.index(alpha))]


def _second_level(phi: RootSystem, ib: int, ig: int, avoid_sum_with: int | None = None):
    coeffs = cone_coefficients(phi, [phi.roots[ib], phi.roots[ig]])
    for ib1, ig1 in _equal_length_pairs(phi, ib):
        if coeffs(ib1) is None and coeffs(ig1) is None:
            if avoid_sum_with is not None and phi.sum_index[avoid_sum_with][ig1] != _SUM_NONE:
                continue
            return ib1, ig1
    return None


def second_level_decompositions(phi: RootSystem, beta: Root, gamma: Root) -> list[tuple[Root, Root]]:
    """Equal-length decompositions beta = b1 + b2 with b1, b2 outside Z beta + Z gamma."""
    ib, ig = phi.index(beta), phi.index(gamma)
    coeffs = cone_coefficients(phi, [beta, gamma])
    return [
        (phi.roots[b1], phi.roots[b2])
        for b1, b2 in _equal_length_pairs(phi, ib)
        if coeffs(b1) is None and coeffs(b2) is None
    ]
