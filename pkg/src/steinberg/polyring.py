"""Multivariate Laurent polynomials with integer coefficients.

A :class:`PolyRing` fixes an ordered tuple of variable names and marks some
of them invertible; only those may carry negative exponents. Polynomials are
immutable dicts from exponent tuples to nonzero Python ints.

    >>> R = PolyRing("b c t", invertible="t")
    >>> b, c, t = R.gens
    >>> str((b + c) ** 2 - t ** -1)
    'b^2 + 2*b*c + c^2 - t^-1'
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Union

__all__ = ["PolyRing", "Poly", "PolyError", "poly_arith", "parse_poly"]


class PolyError(ValueError):
    """Incompatible universes, illegal negative exponents, or bad syntax."""


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class PolyRing:
    """The ring Z[x_1, ..., x_n] with some variables inverted."""

    __slots__ = ("names", "invertible", "_index", "_inv_mask", "_gens", "_key")

    def __init__(self, names: Union[str, Iterable[str]], invertible: Union[str, Iterable[str]] = ()):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        if isinstance(invertible, str):
            invertible = invertible.replace(",", " ").split()
        names = tuple(names)
        for n in names:
            if not _NAME.match(n):
                raise PolyError(f"invalid variable name {n!r}")
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names}")
        inv = frozenset(invertible)
        if not inv <= set(names):
            raise PolyError(f"invertible variables {sorted(inv - set(names))} are not declared")
        self.names = names
        self.invertible = inv
        self._index = {n: i for i, n in enumerate(names)}
        self._inv_mask = tuple(n in inv for n in names)
        self._key = (names, tuple(sorted(inv)))
        self._gens = None

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        inv = f", invertible={sorted(self.invertible)}" if self.invertible else ""
        return f"PolyRing({list(self.names)}{inv})"

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def gens(self) -> tuple["Poly", ...]:
        if self._gens is None:
            self._gens = tuple(self.var(n) for n in self.names)
        return self._gens

    def var(self, name: str) -> "Poly":
        try:
            i = self._index[name]
        except KeyError:
            raise PolyError(f"variable {name!r} is not in {self!r}") from None
        e = [0] * len(self.names)
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def __getitem__(self, name: str) -> "Poly":
        return self.var(name)

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        c = int(c)
        return Poly(self, {(0,) * len(self.names): c} if c else {})

    def __call__(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring != self:
                return x.extend(self)
            return x
        if isinstance(x, str):
            return parse_poly(x, self)
        if isinstance(x, bool) or not isinstance(x, int):
            raise PolyError(f"cannot coerce {x!r} into {self!r}")
        return self.const(x)

    def monomial(self, exps: Mapping[str, int], coeff: int = 1) -> "Poly":
        e = [0] * len(self.names)
        for n, k in exps.items():
            try:
                e[self._index[n]] = int(k)
            except KeyError:
                raise PolyError(f"variable {n!r} is not in {self!r}") from None
        e = tuple(e)
        self._check_exps(e)
        return Poly(self, {e: int(coeff)} if coeff else {})

    def _check_exps(self, e: tuple[int, ...]):
        for k, inv, n in zip(e, self._inv_mask, self.names):
            if k < 0 and not inv:
                raise PolyError(f"negative exponent on non-invertible variable {n!r}")

    def index(self, name: str) -> int:
        return self._index[name]


class Poly:
    """An element of a :class:`PolyRing`; immutable, hashable, structurally compared."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], int]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}
        self._hash = None

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            raise PolyError(f"incompatible variable universes {self.ring!r} and {other.ring!r}")
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.const(other)
        return NotImplemented

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return _raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return _raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __pos__(self) -> "Poly":
        return self

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 0:
                return _raw(self.ring, {})
            if other == 1:
                return self
            return _raw(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    del t[e]
        return _raw(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        k = int(k)
        if k < 0:
            inv = self.inverse()
            return inv ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Poly":
        """Inverse of a unit: a signed monomial in invertible variables."""
        if len(self.terms) != 1:
            raise PolyError(f"{self} is not a unit")
        (e, c), = self.terms.items()
        if c not in (1, -1):
            raise PolyError(f"{self} is not a unit")
        ne = tuple(-k for k in e)
        self.ring._check_exps(ne)
        return _raw(self.ring, {ne: c})

    def is_unit(self) -> bool:
        try:
            self.inverse()
            return True
        except PolyError:
            return False

    # -- comparison ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * self.ring.nvars: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- queries -----------------------------------------------------------
    def coefficient(self, exps: Union[Mapping[str, int], tuple[int, ...]]) -> int:
        if not isinstance(exps, tuple):
            e = [0] * self.ring.nvars
            for n, k in exps.items():
                e[self.ring.index(n)] = k
            exps = tuple(e)
        return self.terms.get(exps, 0)

    def monomials(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=_term_key)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def constant(self) -> int | None:
        """The integer value if this is a constant polynomial, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return c
        return None

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            used.update(n for n, k in zip(self.ring.names, e) if k)
        return used

    # -- substitution ------------------------------------------------------
    def extend(self, ring: PolyRing) -> "Poly":
        """Re-express in a ring that declares (at least) the variables in use."""
        pos = []
        for i, n in enumerate(self.ring.names):
            if n in ring._index:
                pos.append(ring._index[n])
            else:
                pos.append(None)
        t = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise PolyError(f"variable {self.ring.names[i]!r} missing from {ring!r}")
                    ne[pos[i]] = k
            ne = tuple(ne)
            ring._check_exps(ne)
            t[ne] = c
        return _raw(ring, t)

    def substitute(self, assignment: Mapping[str, Union["Poly", int]], ring: PolyRing | None = None) -> "Poly":
        """Ring homomorphism sending each named variable to the given value.

        Unassigned variables map to themselves in the target ring, which is
        ``ring`` if given, else the ring of the Poly values, else this ring.
        """
        for n in assignment:
            if n not in self.ring._index:
                raise PolyError(f"variable {n!r} is not in {self.ring!r}")
        if ring is None:
            rings = {v.ring for v in assignment.values() if isinstance(v, Poly)}
            if len(rings) > 1:
                raise PolyError("substitution values live in different rings")
            ring = rings.pop() if rings else self.ring
        images = []
        for n in self.ring.names:
            if n in assignment:
                v = assignment[n]
                images.append(ring(v) if not isinstance(v, Poly) else v.extend(ring) if v.ring != ring else v)
            else:
                images.append(ring.var(n) if n in ring._index else None)
        inv_images = [None] * len(images)
        out = ring.zero
        power_cache: dict[tuple[int, int], Poly] = {}
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, k in enumerate(e):
                if not k:
                    continue
                img = images[i]
                if img is None:
                    raise PolyError(f"variable {self.ring.names[i]!r} missing from target {ring!r}")
                if k < 0:
                    if inv_images[i] is None:
                        try:
                            inv_images[i] = img.inverse()
                        except PolyError:
                            raise PolyError(
                                f"invertible variable {self.ring.names[i]!r} mapped to non-unit {img}"
                            ) from None
                    base, kk = inv_images[i], -k
                else:
                    base, kk = img, k
                key = (i, k)
                p = power_cache.get(key)
                if p is None:
                    p = base ** kk
                    power_cache[key] = p
                term = term * p
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, int]) -> int:
        """Integer value at an integer point (invertible variables must map to +-1)."""
        r = self.substitute(values, ring=PolyRing(()))
        return r.constant()

    # -- text --------------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def _raw(ring: PolyRing, terms: dict) -> Poly:
    p = Poly.__new__(Poly)
    p.ring = ring
    p.terms = terms
    p._hash = None
    return p


def _term_key(item):
    e, _ = item
    return (-sum(e), tuple(-k for k in e))


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.monomials():
        factors = []
        for n, k in zip(p.ring.names, e):
            if k == 1:
                factors.append(n)
            elif k:
                factors.append(f"{n}^{k}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def poly_arith(op: str, p: Poly, q: Poly | int | None = None) -> Poly:
    """Apply one of ``add``, ``sub``, ``mul``, ``neg``."""
    if op == "neg":
        return -p
    if q is None:
        raise PolyError(f"operation {op!r} needs two operands")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise PolyError(f"unknown operation {op!r}")


# -- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyError(f"unexpected character {text[pos:].lstrip()[:1]!r} in {text!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse the textual form (``3*b^2*c - t^-1``) into ``ring``."""
    toks = _tokenize(text)
    if not toks:
        raise PolyError("empty polynomial text")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise PolyError(f"unexpected end of {text!r}")
        t = toks[pos]
        if expected is not None and t != expected:
            raise PolyError(f"expected {expected!r}, found {t!r} in {text!r}")
        pos += 1
        return t

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        val = term()
        if sign < 0:
            val = -val
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while peek() == "*":
            take()
            val = val * factor()
        return val

    def factor():
        if peek() == "-":
            take()
            return -factor()
        base = atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            t = take()
            if not t.isdigit():
                raise PolyError(f"exponent must be an integer in {text!r}")
            k = int(t)
            return base ** (-k if neg else k)
        return base

    def atom():
        t = take()
        if t.isdigit():
            return ring.const(int(t))
        if t == "(":
            v = expr()
            take(")")
            return v
        if _NAME.match(t):
            return ring.var(t)
        raise PolyError(f"unexpected token {t!r} in {text!r}")

    val = expr()
    if pos != len(toks):
        raise PolyError(f"trailing input {' '.join(toks[pos:])!r} in {text!r}")
    return val
