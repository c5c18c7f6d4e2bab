"""Upper bounds, exact predicates, product identities, decomposition reports."""

import math
from fractions import Fraction

import pytest

from wreathcount import (
    DEFAULT,
    BudgetExceeded,
    NotSemiprimitive,
    auto_count,
    burnside_orbit_count,
    count_upper_bound,
    counterexample_scan,
    fixed_subset_fraction_probe,
    large_base_count_bound,
    large_base_match,
    parse_group_spec,
    predicates,
    product_orbit_identity,
    semiprimitive_report,
    subset_orbit_bound,
    subset_orbit_count_exact,
)
from wreathcount.bounds import SCAN_CSV_HEADER, rows_to_csv


def test_count_upper_bound_exact_lattice():
    cases = [
        ("cyclic:2", 5, Fraction(10)),
        ("cyclic:3", 8, Fraction(44, 3)),
        ("symmetric:3", 10, Fraction(76, 3)),
    ]
    for spec, lhs, rhs in cases:
        rep = count_upper_bound(parse_group_spec(spec), 2)
        assert rep.name == "count-upper-bound"
        assert rep.lhs == lhs
        assert rep.rhs == rhs
        assert rep.holds is True
        assert rep.mode == "exact"
        assert rep.e_source == "exact-lattice"


def test_count_upper_bound_alternate_e_sources():
    c3 = parse_group_spec("cyclic:3")
    rep = count_upper_bound(c3, 2, e_source="five-pow-n-third")
    assert rep.rhs == Fraction(68, 3)
    assert rep.mode == "exact"  # 3 divides n, the power is an integer
    rep = count_upper_bound(c3, 2, e_source="five-pow-n-minus-one")
    assert rep.rhs == Fraction(308, 3)
    rep = count_upper_bound(parse_group_spec("cyclic:4"), 2,
                            e_source="five-pow-n-third")
    assert rep.mode == "float"
    assert rep.holds is True
    with pytest.raises(ValueError):
        count_upper_bound(c3, 2, e_source="nosuch")


def test_count_upper_bound_indeterminate_when_uncountable():
    rep = count_upper_bound(parse_group_spec("dihedral:40"), 2)
    assert rep.holds == "indeterminate"


def test_bound_report_json_serialization():
    rep = count_upper_bound(parse_group_spec("cyclic:3"), 2)
    doc = rep.to_json_dict()
    assert doc["lhs"] == "8"
    assert doc["rhs"] == "44/3"
    assert doc["holds"] is True
    assert doc["inputs"]["e"] == "3"


def test_predicates_symmetric3():
    reports = {r.name: r for r in predicates(parse_group_spec("symmetric:3"), 2)}
    assert len(reports) == 6
    mdb = reports["min-degree-base-product"]
    assert (mdb.lhs, mdb.rhs, mdb.holds) == (4, 3, True)
    fpr = reports["fixed-point-ratio"]
    assert (fpr.lhs, fpr.rhs, fpr.holds) == (8, 36, True)
    half = reports["cycle-count-half-bound"]
    assert (half.lhs, half.rhs, half.holds) == (3, 3, True)
    margin = reports["log-margin-condition"]
    assert (margin.lhs, margin.rhs, margin.holds) == (432, 2, False)
    notrans = reports["no-transposition"]
    assert (notrans.lhs, notrans.holds) == (1, False)
    small = reports["small-order-condition"]
    assert small.holds is False
    assert small.asymptotic is True


def test_predicates_log_margin_needs_two_colors():
    reports = {r.name: r for r in predicates(parse_group_spec("cyclic:3"), 1)}
    margin = reports["log-margin-condition"]
    assert margin.holds is False
    assert "k >= 2" in margin.note


def test_predicates_intransitive_note():
    reports = {r.name: r for r in predicates(parse_group_spec("gens:4,(1 2)"), 2)}
    assert reports["min-degree-base-product"].note != ""


def test_unconditional_predicates_hold_on_regular_groups():
    for spec in ("cyclic:4", "cyclic:5", "gens:4,(1 2)(3 4),(1 3)(2 4)",
                 "quaternion", "wreath-cyclic:2"):
        grp = parse_group_spec(spec)
        for k in (2, 3):
            reports = {r.name: r for r in predicates(grp, k)}
            assert reports["min-degree-base-product"].holds is True, spec
            assert reports["fixed-point-ratio"].holds is True, spec
            assert reports["cycle-count-half-bound"].holds is True, spec


def test_subset_orbit_counts_match_known_graph_numbers():
    # 2-colorings of pairs under S_m are graphs on m vertices up to iso
    assert subset_orbit_count_exact(4, 2, 2) == 11
    assert subset_orbit_count_exact(5, 2, 2) == 34
    assert subset_orbit_count_exact(6, 2, 2) == 156
    assert subset_orbit_count_exact(7, 2, 2) == 1044
    assert subset_orbit_count_exact(6, 3, 2) == 2136
    assert subset_orbit_count_exact(5, 2, 3) == 792


def test_subset_orbit_count_matches_lifted_burnside():
    for m, ell, k in [(4, 2, 2), (5, 2, 2), (5, 2, 3), (6, 2, 2)]:
        grp = parse_group_spec(f"subsets:{m},{ell}")
        assert subset_orbit_count_exact(m, ell, k) == burnside_orbit_count(grp, k)


def test_subset_orbit_bound():
    rep = subset_orbit_bound(5, 2, 2)
    assert rep.lhs == 34
    assert rep.holds is True
    assert rep.mode == "float"
    assert rep.asymptotic is True
    assert 861.07 < rep.rhs < 861.08
    assert subset_orbit_bound(6, 2, 2).holds is True
    assert subset_orbit_bound(7, 3, 2).holds is True
    with pytest.raises(ValueError):
        subset_orbit_bound(6, 3, 2)  # ell must stay below m/2


def test_product_orbit_identity_small_grid():
    expected = {(2, 2): 9, (3, 2): 16, (4, 2): 25}
    for (m, t), value in expected.items():
        rep = product_orbit_identity(m, 1, t, 2)
        assert rep.lhs == rep.rhs == value
        assert rep.holds is True
        assert rep.mode == "exact"
    for m in (2, 3, 4):
        rep = product_orbit_identity(m, 1, 1, 2)
        assert rep.lhs == rep.rhs == subset_orbit_count_exact(m, 1, 2)
    assert product_orbit_identity(3, 1, 2, 1).lhs == 1


def test_product_orbit_identity_budget():
    with pytest.raises(BudgetExceeded):
        product_orbit_identity(4, 1, 12, 2)


def test_large_base_count_bound():
    rep = large_base_count_bound(6, 1, 1, 2)
    assert (rep.lhs, rep.rhs, rep.holds, rep.mode) == (65, 468750, True, "exact")
    rep = large_base_count_bound(3, 1, 2, 2)
    assert (rep.lhs, rep.rhs, rep.holds, rep.mode) == (108, 2000000, True, "exact")
    rep = large_base_count_bound(5, 2, 1, 2)
    assert rep.lhs == 136
    assert rep.mode == "float"  # 2n = 20 is not a multiple of 3
    assert rep.holds is True


def test_large_base_match():
    assert large_base_match("subsets:5,2") == (5, 2, 1)
    assert large_base_match("subsets-alt:6,1") == (6, 1, 1)
    assert large_base_match("product:5,1,2") == (5, 1, 2)
    assert large_base_match("subsets:4,1") is None  # base too small
    assert large_base_match("subsets:6,3") is None  # ell must stay below m/2
    assert large_base_match("cyclic:5") is None
    assert large_base_match(parse_group_spec("subsets:5,2")) == (5, 2, 1)


def test_semiprimitive_reports_regular_cyclic():
    rep = semiprimitive_report(parse_group_spec("cyclic:4"), 2)
    assert (rep.r, rep.kernel_order, rep.quotient_order) == (2, 2, 2)
    assert rep.kernel_semiregular and rep.cycle_bound_holds
    assert rep.alpha_bound_holds and rep.chain_holds
    assert (rep.orbit_count, rep.chain_rhs) == (6, 18)
    assert rep.chain_mode == "exact"
    assert rep.e_k == 1
    assert rep.e_k_quotient_bound_holds is True
    assert rep.e_k_five_eighths_holds is None  # abelian, not applicable

    rep = semiprimitive_report(parse_group_spec("cyclic:6"), 2)
    assert (rep.r, rep.kernel_order) == (2, 3)
    assert (rep.orbit_count, rep.chain_rhs) == (14, Fraction(164, 3))
    assert rep.e_k == 2
    assert rep.chain_holds

    rep = semiprimitive_report(parse_group_spec("cyclic:8"), 2)
    assert (rep.r, rep.kernel_order) == (2, 4)
    assert (rep.orbit_count, rep.chain_rhs) == (36, 184)
    assert rep.chain_holds


def test_semiprimitive_report_quaternion():
    rep = semiprimitive_report(parse_group_spec("quaternion"), 2)
    assert (rep.r, rep.kernel_order) == (2, 4)
    assert (rep.orbit_count, rep.chain_rhs) == (37, 184)
    assert rep.kernel_semiregular and rep.cycle_bound_holds
    assert rep.alpha_bound_holds and rep.chain_holds
    assert rep.e_k == 1
    assert rep.e_k_five_eighths_holds is True


def test_semiprimitive_rejections():
    with pytest.raises(NotSemiprimitive):
        semiprimitive_report(parse_group_spec("wreath-cyclic:2"), 2)
    with pytest.raises(NotSemiprimitive):
        semiprimitive_report(parse_group_spec("symmetric:3"), 2)  # primitive
    with pytest.raises(NotSemiprimitive):
        semiprimitive_report(parse_group_spec("gens:3,(1 2)"), 2)


def test_counterexample_scan_small():
    rows = counterexample_scan([2, 3])
    by_param = {row.param: row for row in rows}
    first = by_param["wreath-cyclic:2|5^m/m"]
    assert (first.value, first.bound, first.holds) == (20, "25/2", True)
    marker = by_param["wreath-cyclic:2|k^n"]
    assert (marker.value, marker.bound, marker.holds) == (20, "16", True)
    second = by_param["wreath-cyclic:3|5^m/m"]
    assert (second.value, second.holds) == (55, True)
    # the k^n marker is asymptotic; at m = 3 it genuinely fails
    assert by_param["wreath-cyclic:3|k^n"].holds is False
    for row in rows:
        assert row.value >= math.ceil(2 ** row.n / row.order)


def test_counterexample_scan_skips_over_budget():
    rows = counterexample_scan([2, 20])
    skipped = [row for row in rows if row.holds == "skipped"]
    assert len(skipped) == 2
    assert all(row.order == 2 ** 20 * 20 for row in skipped)
    assert all(row.value is None for row in skipped)


def test_scan_csv_rendering():
    rows = counterexample_scan([2])
    text = rows_to_csv(rows)
    lines = text.strip().splitlines()
    assert lines[0] == SCAN_CSV_HEADER
    assert lines[1] == "wreath-cyclic:2|5^m/m,2,4,8,20,25/2,true,exact"
    assert lines[2] == "wreath-cyclic:2|k^n,2,4,8,20,16,true,exact"


def test_fixed_subset_fraction_probe_clean_small_range():
    results = fixed_subset_fraction_probe(range(2, 9))
    assert [m for m, _ in results] == list(range(2, 9))
    assert all(witness is None for _, witness in results)


def test_large_base_bound_on_matched_family():
    # end to end: match a family spec, then check the bound it names
    spec = "subsets:6,1"
    match = large_base_match(spec)
    assert match == (6, 1, 1)
    rep = large_base_count_bound(*match, 2)
    assert rep.lhs == auto_count(parse_group_spec(spec), 2).value
    assert rep.holds is True
