import itertools
import json

import pytest

from boxkit import (BoxicityCertificate, BudgetExceeded, Cover, ExactBoxicity, IntervalRep,
                    LowerBounded, ParameterError, SearchBudget, build_upper_cover, complement,
                    decide_boxicity_leq, exact_boxicity, kneser_graph, line_graph, read_certificate,
                    standard_graph, verify_certificate, write_certificate, write_result)
from boxkit.exactbox import is_interval_order, left_of, realize, result_to_dict

from conftest import atlas_graphs, brute_boxicity


def test_petersen_is_three(petersen):
    assert decide_boxicity_leq(petersen, 2).status == "no"
    result = exact_boxicity(petersen)
    assert isinstance(result, ExactBoxicity) and result.value == 3
    assert verify_certificate(petersen, result.certificate).ok


def test_c4():
    c4 = standard_graph("cycle", 4)
    assert decide_boxicity_leq(c4, 1).status == "no"
    yes = decide_boxicity_leq(c4, 2)
    assert yes.status == "yes" and verify_certificate(c4, yes.certificate).ok


@pytest.mark.parametrize("n", range(1, 11))
def test_complete_graphs_have_boxicity_zero(n):
    k = standard_graph("complete", n)
    d = decide_boxicity_leq(k, 0)
    assert d.status == "yes" and d.certificate.cover.dimension == 0
    assert exact_boxicity(k).value == 0


def test_trivial_sizes():
    assert exact_boxicity(standard_graph("empty", 1)).value == 0
    assert exact_boxicity(standard_graph("empty", 2)).value == 1
    assert exact_boxicity(standard_graph("path", 4)).value == 1


def test_line_graph_complement_c6():
    assert exact_boxicity(complement(line_graph(standard_graph("cycle", 6)))).value == 2


@pytest.mark.parametrize("g", atlas_graphs(5), ids=lambda g: f"n{g.n}m{g.num_edges}_{g.sha[:6]}")
def test_matches_interval_supergraph_oracle(g):
    assert exact_boxicity(g).value == brute_boxicity(g)


@pytest.mark.slow
def test_matches_oracle_on_six_vertices():
    for g in atlas_graphs(6):
        if g.n == 6 and len(g.non_edges()) <= 9:
            assert exact_boxicity(g).value == brute_boxicity(g)


def test_monotone_in_dimension():
    for g in atlas_graphs(6)[::7]:
        result = exact_boxicity(g)
        d = result.value
        assert decide_boxicity_leq(g, d + 1).status == "yes"
        if d >= 1:
            assert decide_boxicity_leq(g, d - 1).status == "no"


def test_certificates_are_interval_orders():
    for g in [kneser_graph(2, 5), standard_graph("cycle", 6), complement(standard_graph("cycle", 7))]:
        cert = exact_boxicity(g).certificate
        for rep in cert.cover.reps:
            preds = left_of(rep)
            assert is_interval_order(preds)
            for a, b, c, d in itertools.product(range(g.n), repeat=4):
                if (preds[b] >> a) & 1 and (preds[d] >> c) & 1:
                    assert (preds[d] >> a) & 1 or (preds[b] >> c) & 1


def test_realize_round_trip():
    rep = IntervalRep(((0, 2), (3, 4), (1, 5), (6, 6), (0, 0)))
    preds = left_of(rep)
    assert left_of(realize(preds, rep.n)) == preds


def test_is_interval_order_rejects_two_plus_two():
    # 0 < 1 and 2 < 3 with nothing else is the 2+2 poset
    assert not is_interval_order([0, 0b1, 0, 0b100])
    assert not is_interval_order([0b1])
    assert is_interval_order([0, 0b1, 0b11])


def test_budget_exhaustion(petersen):
    d = decide_boxicity_leq(petersen, 2, SearchBudget(max_nodes=50))
    assert d.status == "unknown" and d.nodes <= 51
    r = exact_boxicity(petersen, SearchBudget(max_nodes=50))
    assert isinstance(r, LowerBounded) and r.value == 2


def test_max_dimension_cap(petersen):
    r = exact_boxicity(petersen, SearchBudget(max_dimension=2))
    assert isinstance(r, LowerBounded) and r.value == 3


def test_parallel_status_matches_sequential(petersen):
    cases = [(petersen, 2), (petersen, 3), (standard_graph("cycle", 4), 1),
             (complement(line_graph(standard_graph("cycle", 7))), 2),
             (complement(line_graph(standard_graph("cycle", 7))), 3)]
    for g, d in cases:
        seq = decide_boxicity_leq(g, d)
        par = decide_boxicity_leq(g, d, jobs=2)
        assert seq.status == par.status
        if par.status == "yes":
            assert verify_certificate(g, par.certificate).ok


def test_input_guards(petersen):
    with pytest.raises(BudgetExceeded):
        decide_boxicity_leq(standard_graph("empty", 70), 1)
    with pytest.raises(ParameterError):
        decide_boxicity_leq(petersen, -1)
    with pytest.raises(ParameterError):
        SearchBudget(max_nodes=0)


def test_verify_certificate_against_explicit_cover(petersen):
    assert verify_certificate(petersen, build_upper_cover(2, 5)).ok
    bad = BoxicityCertificate(1, Cover((IntervalRep(tuple((v, v + 1) for v in range(4))),)), "")
    assert not verify_certificate(standard_graph("cycle", 4), bad).ok
    with pytest.raises(ParameterError):
        verify_certificate(petersen, BoxicityCertificate(2, build_upper_cover(2, 5), petersen.sha))
    with pytest.raises(ParameterError):
        verify_certificate(standard_graph("cycle", 10), exact_boxicity(petersen).certificate)


def test_certificate_json_round_trip(petersen):
    cert = exact_boxicity(petersen).certificate
    data = write_certificate(cert)
    obj = json.loads(data)
    assert obj["graph_sha"] == petersen.sha and obj["dimension"] == 3 and len(obj["reps"]) == 3
    back = read_certificate(data)
    assert back == cert and verify_certificate(petersen, back).ok


def test_result_json():
    r = exact_boxicity(standard_graph("cycle", 5))
    obj = result_to_dict(r, wall_time=1.5)
    assert obj["status"] == "exact" and obj["value"] == 2 and obj["wall_time"] == 1.5
    assert "wall_time" not in json.loads(write_result(r))
