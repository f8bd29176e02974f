import json
from fractions import Fraction
from math import ceil, comb

import pytest

from boxkit import (BoundEntry, BoundReport, FormulaNotApplicable, InconsistencyError,
                    KneserParams, ParameterError, acs_lower_bound, bound_report,
                    c_sum_upper_linegraph, complement, disjoint_union, exact_boxicity, kneser2_range,
                    kneser_graph, kneser_lower_bound_closed, kneser_upper_bound, line_graph,
                    linegraph_complement_bounds, poset_remark_bounds, profile, range0_sum_bound,
                    standard_graph, write_bound_report)

from conftest import atlas_graphs, seeded_random_graphs


def acs_for(g):
    return acs_lower_bound(g, profile(complement(g), cap=64))


# -- individual formulas --------------------------------------------------------------

def test_acs_examples(petersen):
    assert acs_for(petersen) == Fraction(15, 8)
    assert ceil(acs_for(petersen)) == 2
    assert acs_for(standard_graph("cycle", 4)) == 2
    assert ceil(acs_for(standard_graph("path", 4))) <= 1


def test_acs_rejects_complete_and_foreign_profiles(petersen):
    with pytest.raises(FormulaNotApplicable):
        acs_lower_bound(standard_graph("complete", 4), profile(standard_graph("empty", 4)))
    with pytest.raises(ParameterError):
        acs_lower_bound(petersen, profile(petersen))
    with pytest.raises(ParameterError):
        acs_lower_bound(petersen, profile(complement(petersen), 2))


def test_kneser_upper_bound():
    assert kneser_upper_bound(2, 5) == 3
    assert kneser_upper_bound(KneserParams(3, 7)) == 5
    with pytest.raises(FormulaNotApplicable):
        kneser_upper_bound(2, 4)


def test_kneser_lower_bound_closed():
    assert kneser_lower_bound_closed(2, 100) == 77
    assert kneser_lower_bound_closed(3, 1000) == 950
    assert kneser_lower_bound_closed(2, 9) == -14
    with pytest.raises(FormulaNotApplicable):
        kneser_lower_bound_closed(2, 8)
    with pytest.raises(FormulaNotApplicable):
        kneser_lower_bound_closed(3, 36)


def test_closed_form_numerator_is_even():
    assert all((13 * k * k - 11 * k + 16) % 2 == 0 for k in range(1, 10**4 + 1))


def test_c_sum_upper_linegraph():
    assert c_sum_upper_linegraph(3) == 12
    assert c_sum_upper_linegraph(4) == 16
    assert c_sum_upper_linegraph(5) == 20
    assert c_sum_upper_linegraph(9) == 54
    with pytest.raises(FormulaNotApplicable):
        c_sum_upper_linegraph(2)


def test_kneser2_range():
    assert kneser2_range(5) == (2, 3)
    assert kneser2_range(6) == (3, 4)
    with pytest.raises(FormulaNotApplicable):
        kneser2_range(4)


def test_poset_remark_bounds():
    assert poset_remark_bounds(3, 10) == [Fraction(3, 2)]
    assert poset_remark_bounds(2, 20) == [Fraction(7)]
    assert poset_remark_bounds(2, 5) == [Fraction(0)]
    # boundary: n = 3k+1 stays in the first branch, n = 3k+2 starts the second
    assert poset_remark_bounds(2, 7) == [Fraction(1, 1)]
    assert poset_remark_bounds(2, 8) == [Fraction(1, 1)]
    with pytest.raises(FormulaNotApplicable):
        poset_remark_bounds(2, 4)


def test_range0_sum_bound():
    assert range0_sum_bound(2, 9) == 0
    assert range0_sum_bound(3, 37) == 9 * comb(36, 2) == 5670
    big = range0_sum_bound(4, 200)
    assert big == 16 * comb(197, 1) * comb(199, 3)
    with pytest.raises(FormulaNotApplicable):
        range0_sum_bound(3, 30)


# -- line-graph complements --------------------------------------------------------------

def test_linegraph_complement_k4_and_k5():
    r = linegraph_complement_bounds(standard_graph("complete", 4))
    assert (r.best_lower, r.best_upper) == (1, 2)
    r = linegraph_complement_bounds(standard_graph("complete", 5))
    assert (r.best_lower, r.best_upper) == (2, 3)


def test_linegraph_complement_c6_exact():
    r = linegraph_complement_bounds(standard_graph("cycle", 6))
    assert r.exact == 2 and r.best_lower == r.best_upper == 2


def test_linegraph_complement_with_four_cycle_component():
    # L(C4) = C4 and C4^c = 2K2 is an interval graph, so a 4-cycle adds 1, not ceil(4/3)
    c4 = standard_graph("cycle", 4)
    for g in (c4, disjoint_union(c4, c4), disjoint_union(c4, standard_graph("cycle", 5))):
        r = linegraph_complement_bounds(g)
        assert r.exact == exact_boxicity(complement(line_graph(g))).value


PATH_CYCLE_MIXES = [
    [("path", 5)], [("cycle", 3)], [("cycle", 5)], [("cycle", 6)], [("cycle", 7)], [("cycle", 8)],
    [("path", 4), ("cycle", 5)], [("cycle", 3), ("cycle", 3)], [("path", 7), ("path", 3)],
    [("cycle", 3), ("path", 6)], [("cycle", 4), ("path", 5)], [("path", 1), ("cycle", 6)],
]


@pytest.mark.parametrize("parts", PATH_CYCLE_MIXES, ids=lambda p: "+".join(f"{a[0][0]}{a[1]}" for a in p))
def test_path_cycle_formula_matches_exact_search(parts):
    g = standard_graph(*parts[0])
    for name, n in parts[1:]:
        g = disjoint_union(g, standard_graph(name, n))
    r = linegraph_complement_bounds(g)
    h = complement(line_graph(g))
    assert r.exact == exact_boxicity(h).value


def _linegraph_corpus():
    out = [g for g in atlas_graphs(7) if g.max_degree >= 3]
    out += [g for g in seeded_random_graphs(200, 12) if g.max_degree >= 3 and g.num_edges <= 20]
    out += [standard_graph("complete", m) for m in range(4, 8)]
    return out


def test_line_graph_profile_sums_and_per_index_bounds():
    checked = 0
    for g in _linegraph_corpus():
        h = line_graph(g)
        if h.n > 21 or h.n < 2:
            continue
        delta = g.max_degree
        c = profile(h, cap=64)
        assert c.total <= c_sum_upper_linegraph(delta)
        assert c[1] <= 2 * (delta - 1)
        if h.n > 2:
            assert c[2] <= max(delta - 1, 4)
        if delta >= 5:
            for i in range(3, min(delta - 1, h.n - 1) + 1):
                assert c[i] <= max(delta - i, 2)
        checked += 1
    assert checked > 500


# -- reports ------------------------------------------------------------------------------

def test_report_for_petersen_with_everything():
    r = bound_report(KneserParams(2, 5), acs=True, exact=True)
    assert (r.best_lower, r.best_upper, r.exact) == (2, 3, 3)
    sources = {b.source for b in r.bounds}
    assert {"common-neighbor-ratio", "kneser2-range", "explicit-interval-cover", "exact-search"} <= sources


def test_report_for_large_params():
    r = bound_report(KneserParams(2, 100))
    assert r.best_lower == 97 and r.best_upper == 98
    closed = [b for b in r.bounds if b.source == "kneser-large-n-closed-form"]
    assert closed[0].value == 77


def test_report_keeps_vacuous_bounds():
    r = bound_report(KneserParams(2, 9))
    vacuous = [b for b in r.bounds if b.source == "kneser-large-n-closed-form"]
    assert vacuous and not vacuous[0].applicable and vacuous[0].value == -14


def test_report_special_params():
    assert bound_report(KneserParams(1, 5)).exact == 0
    assert bound_report(KneserParams(3, 6)).exact == 1


def test_report_for_graph_c6():
    c6 = standard_graph("cycle", 6)
    r = bound_report(c6, acs=True, exact=True)
    assert r.exact == exact_boxicity(c6).value
    assert r.best_lower <= r.exact


def test_report_short_circuits_complete_graph():
    r = bound_report(standard_graph("complete", 6), acs=True, exact=True)
    assert r.exact == 0 and len(r.bounds) == 1


def test_report_detects_contradictions():
    r = BoundReport({"x": 1}, [BoundEntry("lower", 4, "a"), BoundEntry("upper", 3, "b")])
    with pytest.raises(InconsistencyError):
        r.check()
    r = BoundReport({"x": 1}, [BoundEntry("exact", 1, "a"), BoundEntry("exact", 2, "b")])
    with pytest.raises(InconsistencyError):
        r.exact
    r = BoundReport({"x": 1}, [BoundEntry("lower", 0, "a", False), BoundEntry("upper", 3, "b")])
    assert r.best_lower == 0 and r.best_upper == 3


def test_report_json_shape():
    obj = json.loads(write_bound_report(bound_report(KneserParams(2, 6))))
    assert set(obj) == {"input", "bounds", "best_lower", "best_upper"}
    assert obj["input"] == {"k": 2, "n": 6}
    assert all(set(b) == {"kind", "value", "source", "applicable"} for b in obj["bounds"])


@pytest.mark.parametrize("k,n", [(k, n) for k in (2, 3, 4) for n in range(2 * k, 40)])
def test_reports_are_consistent_across_grid(k, n):
    r = bound_report(KneserParams(k, n))
    if r.best_upper is not None:
        assert r.best_lower <= r.best_upper


def test_acs_below_exact_on_small_graphs():
    for g in atlas_graphs(6):
        if g.n < 2 or g.is_complete():
            continue
        assert ceil(acs_for(g)) <= exact_boxicity(g).value
