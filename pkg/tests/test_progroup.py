import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from steinberg.progroup import (
    AdditiveGroup,
    BilinearLiftError,
    HeisenbergGroup,
    HomotopeError,
    Integers,
    IntegersMod,
    LocalizedIntegers,
    PolynomialRing,
    PowersOf,
    PrimeComplement,
    StagedMap,
    bilinear_lift,
    division_map,
    homotope,
    homotope_ops,
    parse_ring,
    ring_generation_check,
    structure_map,
)

Z = Integers()


def test_product_example():
    x, y = homotope(Z, 3, 2), homotope(Z, 5, 2)
    assert x * y == homotope(Z, 30, 2)
    assert homotope_ops("scale", 4, x) == homotope(Z, 12, 2)
    assert homotope_ops("neg", x) == homotope(Z, -3, 2)


def test_stage_mismatch():
    with pytest.raises(HomotopeError):
        homotope(Z, 1, 2) + homotope(Z, 1, 3)
    with pytest.raises(HomotopeError):
        homotope_ops("pow", homotope(Z, 1, 2))


def test_structure_and_division_maps():
    x = homotope(Z, 7, 6)
    assert structure_map(x, 3) == homotope(Z, 14, 3)
    assert division_map(x, 3) == homotope(Z, 7, 3)
    with pytest.raises(HomotopeError):
        structure_map(x, 4)
    # in Z/12 the factor of 4 over 2 is ambiguous (2 or 8) and the images differ
    R = IntegersMod(12)
    with pytest.raises(HomotopeError):
        structure_map(homotope(R, 1, 4), 2)
    assert structure_map(homotope(R, 1, 4), 2, factor=8) == homotope(R, 8, 2)
    with pytest.raises(HomotopeError):
        structure_map(homotope(R, 1, 4), 2, factor=3)


def test_division_map_is_not_multiplicative():
    x, y = homotope(Z, 1, 4), homotope(Z, 1, 4)
    assert division_map(x * y, 2) != division_map(x, 2) * division_map(y, 2)


def test_parse_ring():
    assert parse_ring("Z") == Z
    assert parse_ring("Z/12") == IntegersMod(12)
    assert parse_ring("Z_(3)") == LocalizedIntegers(3)
    assert parse_ring("Z/5[x]") == PolynomialRing(IntegersMod(5), "x")
    for bad in ("Q", "Z/", "Z_(x)", "R[x"):
        with pytest.raises(HomotopeError):
            parse_ring(bad)


def test_localized_ring_rejects_bad_denominators():
    R = LocalizedIntegers(3)
    assert R.normalize(Fraction(1, 2)) == Fraction(1, 2)
    with pytest.raises(Exception):
        R.normalize(Fraction(1, 3))


def test_multiplicative_sets():
    P = PowersOf(Z, 3)
    assert 27 in P and 6 not in P
    assert P.stages(3) == [1, 3, 9]
    C = PrimeComplement(Z, 2)
    assert 5 in C and 4 not in C
    assert all(s % 2 for s in C.stages(5))


@pytest.mark.parametrize("n", range(2, 13))
def test_homotope_laws_exhaustive(n):
    """Associativity, distributivity and multiplicativity of the structure map in Z/n."""
    R = IntegersMod(n)
    els = list(R.elements())
    for s, s2 in itertools.product(els, repeat=2):
        t = R.mul(s, s2)
        for a, b in itertools.product(els, repeat=2):
            x, y = homotope(R, a, t), homotope(R, b, t)
            lhs = structure_map(x * y, s2, factor=s)
            assert lhs == structure_map(x, s2, factor=s) * structure_map(y, s2, factor=s)
            assert division_map(x + y, s2, factor=s) == division_map(x, s2, factor=s) + division_map(y, s2, factor=s)
        if n <= 7:
            for a, b, c in itertools.product(els, repeat=3):
                x, y, z = (homotope(R, v, s) for v in (a, b, c))
                assert (x * y) * z == x * (y * z)
                assert x * (y + z) == x * y + x * z


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50),
       st.integers(1, 12), st.integers(1, 12))
def test_homotope_laws_integers(a, b, c, s, s2):
    x, y, z = (homotope(Z, v, s) for v in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    X, Y = homotope(Z, a, s * s2), homotope(Z, b, s * s2)
    assert structure_map(X * Y, s2) == structure_map(X, s2) * structure_map(Y, s2)
    # composing structure maps through an intermediate stage
    assert structure_map(structure_map(homotope(Z, a, s * s2 * 2), s * s2), s2) == \
        structure_map(homotope(Z, a, s * s2 * 2), s2)


@pytest.mark.parametrize("ring", [Z, IntegersMod(12), LocalizedIntegers(3), PolynomialRing(Z, "x")])
def test_ring_generation(ring):
    stages = PowersOf(ring, 2).stages(4)
    assert ring_generation_check(ring, stages).passed


def test_staged_map_coherence():
    f = StagedMap(lambda s: s * s, lambda s: (lambda x: structure_map(x, s, factor=s)), name="square")
    rep = f.check_coherence(Z, [(1, 2), (2, 4), (4, 8)])
    assert rep.consistent
    assert str(rep).startswith("consistent up to stage 8")
    g = StagedMap(lambda s: s, lambda s: (lambda x: homotope(Z, x.value + 1, s)), name="shift")
    assert not g.check_coherence(Z, [(1, 2)]).consistent


@pytest.mark.parametrize("ring", [Z, IntegersMod(12), IntegersMod(7), LocalizedIntegers(3), PolynomialRing(Z, "x")])
def test_multiplication_lifts(ring):
    f = bilinear_lift(lambda x, y: x * y, AdditiveGroup(), ring, 2)
    R = ring
    two = R.normalize(2)
    els = list(R.elements())[:5] if R.elements() is not None else R.sample(random.Random(1), 5)
    for a in els:
        for b in (R.one(), R.normalize(3)):
            A, B = homotope(R, a, R.mul(two, two)), homotope(R, b, R.mul(two, two))
            assert f.at(two)(A * B) == structure_map(A, two, factor=two) * structure_map(B, two, factor=two)


def test_lift_failures_name_the_identity():
    with pytest.raises(BilinearLiftError) as e:
        bilinear_lift(lambda x, y: x, AdditiveGroup(), Z, 2)
    assert e.value.identity == 3
    Zx = PolynomialRing(Z, "x")

    def ev0_times(x, y):
        return homotope(Zx, Zx.mul((Zx.evaluate(x.value, 0),), y.value), x.stage)

    with pytest.raises(BilinearLiftError) as e:
        bilinear_lift(ev0_times, AdditiveGroup(), Zx, 1)
    assert e.value.identity == 4
    H = HeisenbergGroup(Z)
    with pytest.raises(BilinearLiftError) as e:
        bilinear_lift(lambda x, y: (x.value * y.value, x.value * y.value, 0), H, Z, 1)
    assert e.value.identity == 1 or e.value.identity == 2


def test_heisenberg_group_laws():
    H = HeisenbergGroup(IntegersMod(5))
    a, b = (1, 2, 3), (4, 0, 1)
    assert H.is_identity(H.mul(a, H.inv(a)))
    assert not H.is_identity(H.commutator((1, 0, 0), (0, 1, 0)))
