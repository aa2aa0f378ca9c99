import pytest

from steinberg.rootsys import Root, RootSystemError, build_root_system
from steinberg.structconst import build_table, sign_orbit, verify_identities

SYSTEMS = ("A2", "B2", "C2", "A3", "B3", "C3", "D4", "F4", "E6")


@pytest.mark.parametrize("label", SYSTEMS)
def test_identities_hold(label):
    rep = verify_identities(build_table(label))
    assert rep.passed, rep.witness


def test_extraspecial_pairs_are_positive():
    table = build_table("F4")
    phi = table.system
    simple = set(phi.simple_indices)
    for i in range(len(phi)):
        if phi.height[i] <= 1:
            continue
        # the extraspecial pair of xi: smallest alpha with xi - alpha a positive root
        for a in range(len(phi)):
            j = phi.idx_multiple_sum([(1, i), (-1, a)])
            if phi.height[a] > 0 and j is not None and phi.height[j] > 0:
                if a < j:
                    assert table.n_idx(a, j) > 0
                break


def test_magnitudes_and_n21():
    table = build_table("B2")
    a, b = Root((0, 1)), Root((1, -1))
    assert abs(table.N(a, b)) == 1
    s = Root((1, 0))
    assert abs(table.N(s, a)) == 2
    assert abs(table.Nhat(s, a)) == 1
    # a + b and 2a + b are both roots
    assert abs(table.N21(a, b)) == 1
    with pytest.raises(RootSystemError):
        table.N21(b, a)


def test_flipped_entry_breaks_antisymmetry():
    table = build_table("A3")
    phi = table.system
    a, b = Root((1, -1, 0, 0)), Root((0, 1, -1, 0))
    bad = table.with_flipped_entry(a, b)
    assert not verify_identities(bad).passed


def test_orbit_flip_keeps_two_term_identities_but_breaks_cocycle():
    table = build_table("A3")
    a, b = Root((1, -1, 0, 0)), Root((0, 1, -1, 0))
    bad = table.with_flipped_orbit(a, b)
    rep = verify_identities(bad)
    assert not rep.passed
    assert "cocycle" in str(rep.witness)
    assert len(sign_orbit(table.system, table.system.index(a), table.system.index(b))) == 12


def test_json_is_deterministic():
    assert build_table("D4").to_json() == build_table("D4").to_json()
