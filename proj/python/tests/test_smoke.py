from fractions import Fraction

import pytest

import tasep


def test_ring_example_all_routes():
    rep, order = tasep.cyclic_class("12020")
    assert order == 5
    for method in ("solver", "mlq", "trat", "det", "ansatz"):
        assert tasep.ring_probabilities((2, 1, 2), method)[rep] == Fraction(1, 4)


def test_routes_agree_with_rates():
    params = "t=2/3,d=5/7,e=3/2"
    solver = tasep.ring_probabilities((2, 2, 2), "solver", params)
    assert solver == tasep.ring_probabilities((2, 2, 2), "mlq", params)
    assert solver == tasep.ring_probabilities((2, 2, 2), "ansatz", params)
    assert sum(solver.values()) == 1


def test_mlq_round_trip():
    for m in tasep.enumerate_mlqs("1022010"):
        d = tasep.drop(m)
        assert d["type"] == "1022010"
        assert tasep.mlq_from_weights("1022010", d["weights"]) == m
    assert len(tasep.trat_fillings("120201210")) == 5
    assert tasep.det_weight("120201210") == 5


def test_open_routes():
    params = "d=2,e=3/4,alpha=1/2,beta=5/3"
    solver = tasep.open_probabilities(4, 1, "solver", params)
    assert solver == tasep.open_probabilities(4, 1, "amlq", params)
    assert solver == tasep.open_probabilities(4, 1, "ansatz", params)


def test_errors():
    with pytest.raises(tasep.TasepError):
        tasep.cyclic_class("123")
    with pytest.raises(ValueError):
        tasep.lambda_partition("212")
