"""Homotope rngs R^(s) evaluated at finite stages.

For a commutative ring R and s in a multiplicative set S, R^(s) is R with
the same addition and the product a^(s) b^(s) = (asb)^(s). The structure
map R^(ss') -> R^(s') sends a^(ss') to (as)^(s'); the division map sends
it to a^(s') and is only R-linear. Pro-objects are never built as limits:
every statement is checked at explicitly supplied stages.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

__all__ = [
    "BaseRing",
    "Integers",
    "IntegersMod",
    "LocalizedIntegers",
    "PolynomialRing",
    "PowersOf",
    "PrimeComplement",
    "HomotopeElem",
    "HomotopeError",
    "homotope",
    "homotope_ops",
    "structure_map",
    "division_map",
    "ring_generation_check",
    "StagedMap",
    "CoherenceReport",
    "AdditiveGroup",
    "HeisenbergGroup",
    "BilinearLiftError",
    "bilinear_lift",
    "parse_ring",
]


class HomotopeError(ValueError):
    pass


# -- base rings -----------------------------------------------------------------

class BaseRing:
    """Exact commutative ring; elements are hashable canonical Python values."""

    name = "R"

    def normalize(self, x):
        return x

    def zero(self):
        return self.normalize(0)

    def one(self):
        return self.normalize(1)

    def add(self, x, y):
        return self.normalize(x + y)

    def neg(self, x):
        return self.normalize(-x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        return self.normalize(x * y)

    def pow(self, x, k: int):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def elements(self):
        """All elements, or None for an infinite ring."""
        return None

    def sample(self, rng: random.Random, k: int) -> list:
        raise NotImplementedError

    def factors(self, stage, target) -> list:
        """All s with s * target == stage (as a finite list, possibly empty)."""
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class Integers(BaseRing):
    name = "Z"

    def normalize(self, x):
        return int(x)

    def sample(self, rng, k):
        return [rng.randint(-50, 50) for _ in range(k)]

    def factors(self, stage, target):
        if target == 0:
            return [] if stage != 0 else [0]
        return [stage // target] if stage % target == 0 else []

    def __eq__(self, other):
        return type(other) is Integers

    def __hash__(self):
        return hash("Z")


class IntegersMod(BaseRing):
    def __init__(self, n: int):
        if n < 2:
            raise HomotopeError("modulus must be at least 2")
        self.n = n
        self.name = f"Z/{n}"

    def normalize(self, x):
        return int(x) % self.n

    def elements(self):
        return range(self.n)

    def sample(self, rng, k):
        return [rng.randrange(self.n) for _ in range(k)]

    def factors(self, stage, target):
        return [s for s in range(self.n) if (s * target - stage) % self.n == 0]

    def __eq__(self, other):
        return isinstance(other, IntegersMod) and other.n == self.n

    def __hash__(self):
        return hash(("Z/", self.n))


class LocalizedIntegers(BaseRing):
    """Z localized away from the prime p: fractions whose denominator is prime to p."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise HomotopeError(f"{p} is not prime")
        self.p = p
        self.name = f"Z_({p})"

    def normalize(self, x):
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise HomotopeError(f"{x} is not in {self.name}")
        return x

    def sample(self, rng, k):
        out = []
        while len(out) < k:
            d = rng.randint(1, 12)
            if d % self.p:
                out.append(Fraction(rng.randint(-30, 30), d))
        return out

    def factors(self, stage, target):
        if target == 0:
            return [] if stage != 0 else [Fraction(0)]
        q = Fraction(stage) / Fraction(target)
        return [q] if q.denominator % self.p else []

    def __eq__(self, other):
        return isinstance(other, LocalizedIntegers) and other.p == self.p

    def __hash__(self):
        return hash(("Z_(p)", self.p))


class PolynomialRing(BaseRing):
    """One-variable polynomials over Z or Z/n; elements are coefficient tuples, constant first."""

    def __init__(self, base: BaseRing, var: str = "x"):
        if not isinstance(base, (Integers, IntegersMod)):
            raise HomotopeError("polynomial coefficients must be Z or Z/n")
        self.base = base
        self.var = var
        self.name = f"{base.name}[{var}]"

    def normalize(self, x):
        if isinstance(x, (int, Fraction)):
            x = (x,)
        c = [self.base.normalize(a) for a in x]
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def add(self, x, y):
        n = max(len(x), len(y))
        return self.normalize([(x[i] if i < len(x) else 0) + (y[i] if i < len(y) else 0) for i in range(n)])

    def neg(self, x):
        return self.normalize([-a for a in x])

    def mul(self, x, y):
        if not x or not y:
            return ()
        out = [0] * (len(x) + len(y) - 1)
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                out[i + j] += a * b
        return self.normalize(out)

    def x(self):
        return self.normalize((0, 1))

    def evaluate(self, p, value):
        out = 0
        for a in reversed(p):
            out = out * value + a
        return self.base.normalize(out)

    def sample(self, rng, k):
        return [self.normalize(self.base.sample(rng, rng.randint(0, 3))) for _ in range(k)]

    def factors(self, stage, target):
        if not target:
            return [()] if not stage else []
        # long division; the leading coefficient of target must divide exactly
        rem = list(stage)
        quot = [0] * max(len(stage) - len(target) + 1, 0)
        lead = target[-1]
        for i in range(len(quot) - 1, -1, -1):
            top = rem[i + len(target) - 1] if i + len(target) - 1 < len(rem) else 0
            cands = self.base.factors(self.base.normalize(top), lead)
            if len(cands) != 1:
                return [] if not cands else _ambiguous(self, stage, target)
            q = cands[0]
            quot[i] = q
            for j, t in enumerate(target):
                rem[i + j] = self.base.normalize(rem[i + j] - q * t)
        if self.normalize(rem):
            return []
        return [self.normalize(quot)]

    def format(self, p) -> str:
        if not p:
            return "0"
        parts = []
        for i, a in enumerate(p):
            if a:
                parts.append(str(a) if i == 0 else f"{a}*{self.var}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.base == self.base and other.var == self.var

    def __hash__(self):
        return hash(("poly", self.base, self.var))


def _ambiguous(ring, stage, target):
    raise HomotopeError(f"cannot divide {stage} by {target} uniquely in {ring.name}; pass the factor explicitly")


def parse_ring(text: str) -> BaseRing:
    """'Z', 'Z/n', 'Z_(p)', or either of the first two followed by '[x]'."""
    t = text.replace(" ", "")
    if t.endswith("]") and "[" in t:
        base, var = t[:-1].split("[", 1)
        return PolynomialRing(parse_ring(base), var)
    if t == "Z":
        return Integers()
    if t.startswith("Z/"):
        try:
            return IntegersMod(int(t[2:]))
        except ValueError:
            pass
    if t.startswith("Z_(") and t.endswith(")"):
        try:
            return LocalizedIntegers(int(t[3:-1]))
        except ValueError:
            pass
    raise HomotopeError(f"cannot parse ring {text!r}")


# -- multiplicative sets ---------------------------------------------------------

class PowersOf:
    """{1, s0, s0^2, ...}, searched up to ``max_power``."""

    def __init__(self, ring: BaseRing, generator, max_power: int = 64):
        self.ring = ring
        self.generator = ring.normalize(generator)
        self.max_power = max_power

    def __contains__(self, s) -> bool:
        s = self.ring.normalize(s)
        p = self.ring.one()
        for _ in range(self.max_power + 1):
            if p == s:
                return True
            p = self.ring.mul(p, self.generator)
        return False

    def stages(self, k: int) -> list:
        return [self.ring.pow(self.generator, i) for i in range(k)]


class PrimeComplement:
    """Integers (or elements of Z_(p)) outside the prime ideal generated by p."""

    def __init__(self, ring: BaseRing, p: int):
        self.ring = ring
        self.p = p

    def __contains__(self, s) -> bool:
        s = Fraction(self.ring.normalize(s))
        return s.numerator % self.p != 0

    def stages(self, k: int) -> list:
        return [self.ring.normalize(n) for n in range(1, 10 * k) if n % self.p][:k]


# -- homotope elements ---------------------------------------------------------------

@dataclass(frozen=True)
class HomotopeElem:
    ring: BaseRing
    value: Any
    stage: Any

    def _same(self, other: "HomotopeElem"):
        if not isinstance(other, HomotopeElem):
            raise TypeError("expected a homotope element")
        if other.ring != self.ring:
            raise HomotopeError("elements of different base rings")
        if other.stage != self.stage:
            raise HomotopeError(f"stage mismatch: {self.stage} vs {other.stage}")

    def __add__(self, other):
        self._same(other)
        return HomotopeElem(self.ring, self.ring.add(self.value, other.value), self.stage)

    def __sub__(self, other):
        self._same(other)
        return HomotopeElem(self.ring, self.ring.sub(self.value, other.value), self.stage)

    def __neg__(self):
        return HomotopeElem(self.ring, self.ring.neg(self.value), self.stage)

    def __mul__(self, other):
        R = self.ring
        if not isinstance(other, HomotopeElem):
            return NotImplemented
        self._same(other)
        return HomotopeElem(R, R.mul(R.mul(self.value, self.stage), other.value), self.stage)

    def scale(self, r) -> "HomotopeElem":
        """The R-module action r . b^(s) = (rb)^(s)."""
        R = self.ring
        return HomotopeElem(R, R.mul(R.normalize(r), self.value), self.stage)

    def __rmul__(self, r):
        return self.scale(r)

    def __str__(self) -> str:
        fmt = getattr(self.ring, "format", str)
        return f"({fmt(self.value)})^({fmt(self.stage)})"


def homotope(ring: BaseRing, value, stage) -> HomotopeElem:
    return HomotopeElem(ring, ring.normalize(value), ring.normalize(stage))


def homotope_ops(op: str, x: HomotopeElem, y=None) -> HomotopeElem:
    """op in {add, sub, mul, neg, scale}; for scale, x is the ring scalar and y the element."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "scale":
        return y.scale(x)
    raise HomotopeError(f"unknown operation {op!r}")


def _factor(x: HomotopeElem, target, factor):
    R = x.ring
    target = R.normalize(target)
    if factor is not None:
        factor = R.normalize(factor)
        if R.mul(factor, target) != x.stage:
            raise HomotopeError(f"{factor} * {target} != {x.stage}")
        return factor, target
    cands = R.factors(x.stage, target)
    if not cands:
        raise HomotopeError(f"stage {x.stage} is not divisible by {target}")
    return cands, target


def structure_map(x: HomotopeElem, target, factor=None) -> HomotopeElem:
    """a^(ss') -> (as)^(s'); in rings with zero divisors the factor s may have to be given."""
    R = x.ring
    cands, target = _factor(x, target, factor)
    if isinstance(cands, list):
        values = {R.mul(x.value, s) for s in cands}
        if len(values) > 1:
            raise HomotopeError(f"factor of {x.stage} over {target} is ambiguous in {R.name}; pass it explicitly")
        return HomotopeElem(R, values.pop(), target)
    return HomotopeElem(R, R.mul(x.value, cands), target)


def division_map(x: HomotopeElem, target, factor=None) -> HomotopeElem:
    """a^(ss') -> a^(s'); additive and R-linear, not multiplicative."""
    _factor(x, target, factor)
    return HomotopeElem(x.ring, x.value, x.ring.normalize(target))


@dataclass
class Report:
    name: str
    passed: bool
    cases: int
    witness: dict | None = None

    def to_json(self) -> dict:
        d = {"name": self.name, "status": "pass" if self.passed else "fail", "cases": self.cases}
        if self.witness:
            d["witness"] = self.witness
        return d


def _ring_values(ring: BaseRing, samples: int, seed: int) -> list:
    els = ring.elements()
    if els is not None:
        return list(els)
    return ring.sample(random.Random(seed), samples)


def ring_generation_check(ring: BaseRing, stages: Iterable, elements: Iterable | None = None,
                          samples: int = 50, seed: int = 0) -> Report:
    """m(u(c^(s^2))) = (sc)^(s) = structure_map(c^(s^2) -> s) at every given stage."""
    stages = [ring.normalize(s) for s in stages]
    els = list(elements) if elements is not None else _ring_values(ring, samples, seed)
    n = 0
    for s in stages:
        for c in els:
            x = homotope(ring, c, ring.mul(s, s))
            u1, u2 = homotope(ring, 1, s), homotope(ring, c, s)
            lhs = u1 * u2
            rhs = structure_map(x, s, factor=s)
            n += 1
            if lhs != rhs or lhs.value != ring.mul(s, ring.normalize(c)):
                return Report("ring_generation", False, n, {"stage": str(s), "c": str(c),
                                                            "m_of_u": str(lhs), "structure": str(rhs)})
    return Report("ring_generation", True, n)


# -- staged maps ---------------------------------------------------------------------

@dataclass(frozen=True)
class CoherenceReport:
    consistent: bool
    max_stage: Any
    pairs: int
    witness: dict | None = None

    def __str__(self) -> str:
        if self.consistent:
            return f"consistent up to stage {self.max_stage} ({self.pairs} stage pairs)"
        return f"inconsistent: {self.witness}"


@dataclass(frozen=True)
class StagedMap:
    """A pre-morphism: index function on stages and one function per stage.

    ``family(s)`` is the component whose inputs live at stage
    ``index_function(s)`` and whose outputs live at stage ``s``.
    """

    index_function: Callable[[Any], Any]
    family: Callable[[Any], Callable]
    name: str = "f"

    def at(self, stage) -> Callable:
        return self.family(stage)

    def check_coherence(self, ring: BaseRing, stage_pairs: Iterable[tuple[Any, Any]],
                        samples: int = 20, seed: int = 0) -> CoherenceReport:
        """For each (s, t) with t = s s'': f^(s) . str == str . f^(t) on sampled inputs.

        Only refutation is possible at finite stages, so success is reported
        as "consistent up to stage N".
        """
        els = _ring_values(ring, samples, seed)
        n = 0
        top = None
        for s, t in stage_pairs:
            s, t = ring.normalize(s), ring.normalize(t)
            top = t
            for c in els:
                x = homotope(ring, c, self.index_function(t))
                via_t = structure_map(self.at(t)(x), s)
                down = structure_map(x, self.index_function(s))
                via_s = self.at(s)(down)
                if via_t != via_s:
                    return CoherenceReport(False, t, n, {"stages": [str(s), str(t)], "input": str(x),
                                                         "lhs": str(via_s), "rhs": str(via_t)})
            n += 1
        return CoherenceReport(True, top, n)


# -- target groups for lifts --------------------------------------------------------------

class AdditiveGroup:
    """The additive group of R^(s); elements are homotope elements."""

    def mul(self, x, y):
        return x + y

    def inv(self, x):
        return -x

    def identity_like(self, x):
        return HomotopeElem(x.ring, x.ring.zero(), x.stage)

    def eq(self, x, y):
        return x == y

    def commutator(self, x, y):
        return self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))

    def is_identity(self, x):
        return x.value == x.ring.zero()


class HeisenbergGroup:
    """Upper unitriangular 3x3 matrices over R, as triples (x, y, z) = [[1,x,z],[0,1,y],[0,0,1]]."""

    def __init__(self, ring: BaseRing):
        self.ring = ring

    def mul(self, a, b):
        R = self.ring
        return (R.add(a[0], b[0]), R.add(a[1], b[1]), R.add(R.add(a[2], b[2]), R.mul(a[0], b[1])))

    def inv(self, a):
        R = self.ring
        return (R.neg(a[0]), R.neg(a[1]), R.sub(R.mul(a[0], a[1]), a[2]))

    def identity_like(self, a):
        z = self.ring.zero()
        return (z, z, z)

    def eq(self, a, b):
        return a == b

    def commutator(self, a, b):
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def is_identity(self, a):
        z = self.ring.zero()
        return a == (z, z, z)


class BilinearLiftError(HomotopeError):
    def __init__(self, identity: int, witness: dict):
        self.identity = identity
        self.witness = witness
        names = {1: "commuting values", 2: "additivity in the first argument",
                 3: "additivity in the second argument", 4: "balance g(ab, c) = g(a, bc)"}
        super().__init__(f"identity {identity} ({names[identity]}) fails: {witness}")


def bilinear_lift(g: Callable, group, ring: BaseRing, stage, samples: int = 12, seed: int = 0,
                  elements: Sequence | None = None) -> StagedMap:
    """Lift g: R^(s) x R^(s) -> G to f: R^(s^2) -> G with f(ab) = g(a, b) after restriction.

    g takes two homotope elements at stage s. The four identities are
    checked on samples (all elements for a finite ring) at stage s, with the
    balance identity in its finite-stage form g((asb)^(s), c^(s)) =
    g(a^(s), (bsc)^(s)). The returned map has components at stage s only:
    f'(c^(s^2)) = g(1^(s), c^(s)). Raises :class:`BilinearLiftError` naming
    the first violated identity.
    """
    R = ring
    s = R.normalize(stage)
    els = list(elements) if elements is not None else _ring_values(R, samples, seed)
    h = lambda v: homotope(R, v, s)
    G = group

    def check(k, ok, **wit):
        if not ok:
            raise BilinearLiftError(k, {key: str(v) for key, v in wit.items()})

    for a1, b1, a2, b2 in itertools.product(els[:8], repeat=4):
        x, y = g(h(a1), h(b1)), g(h(a2), h(b2))
        check(1, G.is_identity(G.commutator(x, y)), a1=a1, b1=b1, a2=a2, b2=b2)
    for a1, a2, b in itertools.product(els, repeat=3):
        check(2, G.eq(g(h(a1) + h(a2), h(b)), G.mul(g(h(a1), h(b)), g(h(a2), h(b)))), a1=a1, a2=a2, b=b)
    for a, b1, b2 in itertools.product(els, repeat=3):
        check(3, G.eq(g(h(a), h(b1) + h(b2)), G.mul(g(h(a), h(b1)), g(h(a), h(b2)))), a=a, b1=b1, b2=b2)
    for a, b, c in itertools.product(els, repeat=3):
        check(4, G.eq(g(h(a) * h(b), h(c)), g(h(a), h(b) * h(c))), a=a, b=b, c=c)

    ss = R.mul(s, s)

    def component(st):
        if st != s:
            raise HomotopeError(f"the lift is only built at stage {s}")
        return lambda x: g(h(R.one()), division_map(x, s, factor=s))

    f = StagedMap(lambda st: R.mul(st, st), component, name="lift")
    # f'(a^(s^2) b^(s^2)) = g'((sa)^(s), (sb)^(s))
    for a, b in itertools.product(els, repeat=2):
        A, B = homotope(R, a, ss), homotope(R, b, ss)
        lhs = f.at(s)(A * B)
        rhs = g(structure_map(A, s, factor=s), structure_map(B, s, factor=s))
        if not G.eq(lhs, rhs):
            raise HomotopeError(f"lift check fails at a={a}, b={b}: {lhs} != {rhs}")
    return f
