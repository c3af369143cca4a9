"""Smoke tests for the python module against known exact values."""

import os
import sys
from fractions import Fraction

import pytest

_py_dir = os.environ.get("CRN_PY_DIR")
if _py_dir:
    sys.path.insert(0, _py_dir)
    sys.path.insert(0, os.path.join(os.environ["CRN_SRC"], "python"))

crn = pytest.importorskip("crn")

CHAIN = """
species A B U
A -> U : k=1
U -> A : k=2
U -> B : k=2
B -> U : k=3
set fast = { U }
"""

ENZYME = """
species E A B P Q EA EAB
E + A -> EA : k=1
EA -> E + A : k=5
EA + B -> EAB : k=1
EAB -> EA + B : k=1
EAB -> E + P + Q : k=5
set complexes = { EA, EAB }
"""


def test_parse_and_intensity():
    doc = crn.parse_network(CHAIN)
    assert doc.species == ["A", "B", "U"]
    assert doc.intensity(0, (3, 0, 0)) == Fraction(3)
    assert doc.intensity(1, (0, 0, 0)) == 0
    assert doc.delta(0) == [-1, 0, 1]
    assert doc.validate() == []
    assert crn.parse_network(doc.serialize()).serialize() == doc.serialize()


def test_compose():
    assert crn.compose(((1, 1, 0), (0, 0, 1)), ((0, 1, 1), (0, 1, 0))) == ([1, 2, 0], [0, 1, 0])
    assert crn.leads_to(crn.parse_network(CHAIN), (1, 0, 0), (0, 1, 0)) is True
    assert crn.leads_to(crn.parse_network(CHAIN), (1, 0, 0), (2, 0, 0)) is False


def test_reduction_and_exact_rates():
    doc = crn.parse_network(CHAIN)
    report = crn.analyze(doc)
    assert report["condition1"]["holds"] and report["eliminable"]

    reduced = crn.reduce(doc)
    assert sorted(reduced.reactions) == ["A -> B", "B -> A"]
    forward = reduced.reactions.index("A -> B")
    for a in range(5):
        assert reduced.intensity(forward, (a, 0, 0)) == Fraction(a, 2)
        assert reduced.intensity(1 - forward, (0, a, 0)) == Fraction(3 * a, 2)

    value, tail = reduced.truncated_intensity(forward, (3, 0, 0), depth=6)
    assert value == Fraction(3, 2) and tail == 0


def test_enzyme_reduction():
    doc = crn.parse_network(ENZYME)
    reduced = crn.reduce(doc, u=["EA", "EAB"])
    assert reduced.reactions == ["E + A + B -> E + P + Q"]
    sums = {(w["need_str"], w["result_str"]) for w in reduced.report["walk_sums"]}
    assert sums == {("E + A", "E + A"), ("E + A + B", "E + A + B"), ("E + A + B", "E + P + Q")}


def test_stationary_and_conditional():
    doc = crn.parse_network(CHAIN)
    system = crn.system(doc)
    comp = crn.component(system, (2, 0, 0), total=2)
    assert comp.closed and comp.mutually_reachable and len(comp) == 6

    pi = crn.stationary(system, comp)
    assert pi.p((2, 0, 0)) == Fraction(36, 121)
    assert crn.check_stationary(system, comp, pi)["max_residual"]["value"] == "0"
    assert crn.check_detailed_balance(system, comp, pi)["max_residual"]["value"] == "0"

    cond = crn.conditional(pi, lambda state: state[2] == 0)
    assert cond.p((2, 0, 0)) == Fraction(9, 16)

    reduced_system = crn.system(doc, reduced=True)
    comp0 = crn.component(reduced_system, (2, 0, 0), total=2)
    pi0 = crn.stationary(reduced_system, comp0)
    assert crn.tv_distance(cond, pi0) == 0

    form = crn.product_form([Fraction(6), Fraction(2), Fraction(3)], comp)
    assert crn.tv_distance(form, pi) == 0
    assert crn.find_equilibrium(doc) is not None


def test_scaling_limit():
    doc = crn.parse_network(CHAIN)
    system = crn.system(doc)
    comp = crn.component(system, (2, 0, 0), total=2)
    pi = crn.stationary(system, comp)

    rows = crn.convergence_table(doc, "fast", [Fraction(1)], comp, pi, [1, 2, 4, 8])
    assert rows[0]["tv"] == Fraction(57, 121)
    assert rows[1]["tv"] == Fraction(105, 361)
    assert all(rows[i]["tv"] > rows[i + 1]["tv"] for i in range(3))

    limit = crn.limit_distribution(pi, doc, "fast", [Fraction(1)])
    assert limit.p((2, 0, 0)) == Fraction(9, 16)

    scaled, mass = crn.scaled_distribution(doc, "fast", [Fraction(1)], 3, comp, pi)
    assert mass == Fraction(81, 121)  # (40 + 1/2) / (121/2)
    assert scaled.p((0, 0, 2)) == Fraction(1, 2) / Fraction(81, 2)


def test_simulation():
    doc = crn.parse_network(CHAIN)
    system = crn.system(doc)
    traj = crn.gillespie(system, (2, 0, 0), t_end=200.0, seed=11)
    assert traj.jumps > 10
    assert all(sum(s) == 2 for s in traj.states)
    occupation = crn.empirical_distribution(traj, burn_in=10.0)
    assert abs(sum(occupation.p_float(s) for s in occupation.states) - 1.0) < 1e-9

    again = crn.gillespie(system, (2, 0, 0), t_end=200.0, seed=11)
    assert again.times == traj.times


def test_errors():
    with pytest.raises(crn.CrnError):
        crn.parse_network("A -> B k=1")
    loop = crn.parse_network(
        "species A U\n"
        "A -> U : rate=(A!)^2*ind(A>=1)\n"
        "U -> A : rate=((A+1)!)^2*ind(U>=1)\n"
        "A + U -> U : rate=2*((A+1)!)^2*ind(A>=1,U>=1)\n"
        "U -> A + U : rate=((A+2)!)^2*ind(U>=1)\n"
        "set fast = { U }\n")
    report = crn.analyze(loop)
    assert not report["condition1"]["holds"]
    with pytest.raises(crn.CrnError):
        crn.reduce(loop)
