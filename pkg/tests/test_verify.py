import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinberg.rootsys import Root, build_root_system
from steinberg.structconst import build_table
from steinberg.verify import (
    FiniteRingSpec,
    format_group,
    mutated_table,
    run_all,
    schur_multiplier,
    schur_multiplier_oracle,
    verify_generation,
    verify_h_conj,
    verify_new_root,
    verify_new_root_examples,
    verify_rhs,
    verify_root_action,
    verify_structure_constants,
)

# Hand-evaluated quotient rings (small cases worked out by hand, then frozen).
SCHUR_CASES = [
    ("A3", "Z/2", "Z/2"), ("A3", "Z/3", "0"), ("A3", "Z/4", "Z/2"),
    ("B3", "Z/6", "Z/6"), ("B3", "Z/4", "Z/2"), ("B3", "Z/3", "Z/3"), ("B3", "Z/5", "0"),
    ("C3", "Z/2xZ/3", "Z/2"), ("C3", "Z/9", "0"),
    ("D4", "Z/2", "Z/2 x Z/2"), ("D4", "Z/4", "Z/2 x Z/2"), ("D4", "Z/2xZ/2", "Z/2 x Z/2 x Z/2 x Z/2"),
    ("F4", "Z/2", "Z/2"), ("F4", "Z/8", "Z/2"), ("F4", "Z/15", "0"),
    ("E6", "Z/2", "0"), ("B5", "Z/2", "0"),
]


@pytest.mark.parametrize("label,ring,expected", SCHUR_CASES)
def test_schur_values(label, ring, expected):
    assert format_group(schur_multiplier(label, ring)) == expected
    assert format_group(schur_multiplier_oracle(label, ring)) == expected


@settings(max_examples=40)
@given(st.sampled_from(["A3", "B3", "C3", "D4", "F4"]),
       st.lists(st.integers(2, 12), min_size=1, max_size=2))
def test_schur_formula_matches_enumeration(label, moduli):
    spec = FiniteRingSpec(tuple(moduli))
    assert schur_multiplier(label, spec) == schur_multiplier_oracle(label, spec)


@pytest.mark.parametrize("n", range(2, 31))
def test_residue_field_criteria(n):
    assert (schur_multiplier("F4", f"Z/{n}") == []) == (n % 2 == 1)
    assert (schur_multiplier("B3", f"Z/{n}") == []) == (math.gcd(n, 6) == 1)


def test_ring_spec_parsing():
    assert FiniteRingSpec.parse("Z/2xZ/3").moduli == (2, 3)
    with pytest.raises(ValueError):
        FiniteRingSpec.parse("Z/0")
    with pytest.raises(ValueError):
        schur_multiplier("G2", "Z/2")


def test_format_group():
    assert format_group([]) == "0"
    assert format_group([2, 6]) == "Z/2 x Z/6"


@pytest.mark.parametrize("label", ["A3", "D4"])
def test_checks_pass_on_small_systems(label):
    table = build_table(label)
    for res in (verify_structure_constants(table) + verify_new_root(table)
                + verify_root_action(table) + verify_h_conj(table) + verify_generation(table.system)):
        assert res.passed, (res.check_id, res.witness)


def test_new_root_coordinate_examples():
    res = verify_new_root_examples()
    assert {r.check_id for r in res} == {"A3/new_root/coordinate_example", "C3/new_root/coordinate_example"}
    assert all(r.passed for r in res)


def test_h_conj_exponent_is_pairing():
    res, = verify_h_conj(build_table("F4"))
    assert res.passed
    assert res.configuration["inner_product_equals_pairing"] is True
    assert res.configuration["cases"] == 1104


def test_rhs_only_for_f4():
    assert verify_rhs(build_table("A3")) == []
    assert all(r.passed for r in verify_rhs(build_table("F4")))


def test_printed_rule4_sign_fails_on_f4():
    table = build_table("F4")
    bad, = verify_h_conj(table, rule4_sign=-1)
    assert not bad.passed
    assert bad.configuration["failures"] == 288


def test_mutated_table_fails_identities():
    table = mutated_table("F4")
    assert not verify_structure_constants(table)[0].passed
    pair = (Root((1, -1, 0, 0)), Root((0, 1, -1, 0)))
    assert mutated_table("A3", pair).N(*pair) == -build_table("A3").N(*pair)


def test_report_is_json_serialisable():
    report = run_all(systems=("A3",), include_schur=False)
    text = json.dumps(report, sort_keys=True)
    assert json.loads(text)["summary"]["fail"] == 0
    ids = [c["check_id"] for c in report["checks"]]
    assert ids == sorted(ids)
    for c in report["checks"]:
        assert set(c) >= {"check_id", "configuration", "status", "elapsed"}
    bad = run_all(systems=("A3",), mutate=True, include_schur=False)
    failed = [c for c in bad["checks"] if c["status"] == "fail"]
    assert failed and all("witness" in c for c in failed)
