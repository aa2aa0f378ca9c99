import random

import pytest

from steinberg.collect import (
    CollectionError,
    Collector,
    EscapeError,
    Letter,
    collect,
    commutator_word,
    conj_expand,
    format_word,
    inverse_word,
    root_action,
)
from steinberg.liealg import build_algebra, word_matrix
from steinberg.polyring import PolyRing
from steinberg.rootsys import Root, RootSubset, build_root_system, special_cone
from steinberg.structconst import build_table


def _positive(phi):
    return RootSubset(phi, frozenset(i for i in range(len(phi)) if phi.height[i] > 0))


def test_a3_commutator_example():
    phi = build_root_system("A3")
    table = build_table("A3")
    R = PolyRing("b c")
    b, c = R.gens
    x, y = Root((1, -1, 0, 0)), Root((0, 1, -1, 0))
    word = commutator_word([Letter(x, b)], [Letter(y, c)])
    nf = collect(phi, table, _positive(phi), word)
    assert nf.args == {x + y: table.N(x, y) * b * c}


def test_b2_commutator_has_two_terms():
    phi = build_root_system("B2")
    table = build_table("B2")
    R = PolyRing("b c")
    b, c = R.gens
    s, l = Root((0, 1)), Root((1, -1))
    nf = collect(phi, table, _positive(phi), commutator_word([Letter(s, b)], [Letter(l, c)]))
    assert set(nf.args) == {s + l, l + 2 * s}
    assert nf.args[l + 2 * s] == table.N21(s, l) * b * b * c


def test_inverse_collects_to_identity():
    phi = build_root_system("F4")
    table = build_table("F4")
    R = PolyRing("p q r")
    p, q, r = R.gens
    pos = [root for root in phi.roots if phi.height[phi.index(root)] > 0]
    word = [Letter(pos[3], p), Letter(pos[0], q), Letter(pos[11], r), Letter(pos[1], p * q)]
    assert collect(phi, table, _positive(phi), word + inverse_word(word)).is_identity()


def test_errors():
    phi = build_root_system("A3")
    table = build_table("A3")
    pos = _positive(phi)
    R = PolyRing("b")
    b, = R.gens
    neg = Root((-1, 1, 0, 0))
    with pytest.raises(CollectionError):
        collect(phi, table, pos, [Letter(neg, b)])
    with pytest.raises(CollectionError):
        collect(phi, table, RootSubset(phi, frozenset(range(len(phi)))), [])
    with pytest.raises(CollectionError):
        collect(phi, table, _positive(phi), [], strategy="sideways")
    # a conjugator whose products leave the support
    small = special_cone(phi, [(Root((0, 1, -1, 0)), ">0"), (Root((1, -1, 0, 0)), ">=0")])
    with pytest.raises(EscapeError):
        conj_expand(phi, table, small, Letter(Root((0, 0, 1, -1)), b), [Letter(Root((0, 1, -1, 0)), b)])


def test_root_action_refuses_opposite_roots():
    table = build_table("A3")
    R = PolyRing("u b")
    u, b = R.gens
    a = Root((1, -1, 0, 0))
    with pytest.raises(CollectionError):
        root_action(table, a, u, Letter(-a, b))
    assert root_action(table, a, u, Letter(Root((0, 0, 1, -1)), b)) == [Letter(Root((0, 0, 1, -1)), b)]


def test_format_word():
    R = PolyRing("b")
    assert format_word([]) == "1"
    assert format_word([Letter(Root((1, 0)), R.gens[0])]) == "x[1,0](b)"


def _random_word(rng, members, ring, length):
    gens = ring.gens
    out = []
    for _ in range(length):
        k = rng.choice(members)
        coeff = rng.choice([-2, -1, 1, 2, 3])
        arg = coeff * gens[rng.randrange(len(gens))] ** rng.randint(1, 2)
        out.append((k, arg))
    return out


@pytest.mark.parametrize("label,count", [("A3", 400), ("D4", 300), ("F4", 300)])
def test_collection_is_confluent(label, count):
    """Both rewriting strategies agree on random words over the positive roots."""
    table = build_table(label)
    phi = table.system
    members = frozenset(i for i in range(len(phi)) if phi.height[i] > 0)
    ordered = sorted(members)
    C = Collector(table)
    R = PolyRing("p q r")
    rng = random.Random(label)
    for _ in range(count):
        w = _random_word(rng, ordered, R, rng.randint(2, 7))
        left = C.collect_idx(w, members, "leftmost")
        low = C.collect_idx(w, members, "lowest")
        assert left == low, w
        # the normal form is sorted and free of zero arguments
        assert list(left) == sorted(left)
        assert all(not p.is_zero for p in left.values())


@pytest.mark.parametrize("label", ["A3", "D4", "F4"])
def test_normal_form_matches_adjoint_product(label):
    """A collected word and its normal form act identically in the adjoint representation."""
    table = build_table(label)
    phi = table.system
    alg = build_algebra(table)
    members = frozenset(i for i in range(len(phi)) if phi.height[i] > 0)
    C = Collector(table)
    R = PolyRing("p q")
    rng = random.Random(17)
    for _ in range(12):
        w = _random_word(rng, sorted(members), R, 4)
        nf = C.collect_idx(w, members)
        assert word_matrix(alg, w, R) == word_matrix(alg, list(nf.items()), R)


def test_root_action_agrees_with_conjugation():
    table = build_table("B3")
    phi = table.system
    alg = build_algebra(table)
    R = PolyRing("u b")
    u, b = R.gens
    C = Collector(table)
    for a in range(len(phi)):
        for k in range(len(phi)):
            if k in (a, phi.neg[a]):
                continue
            rule = C.root_action(a, u, k, b)
            honest = [(a, u), (k, b), (a, -u)]
            assert word_matrix(alg, rule, R) == word_matrix(alg, honest, R)
