"""Reliability with arc survival probability 1 sits outside the bottleneck property.

Companion to the acceptance criteria that prescribe weights {1/2, 3/4, 1}:
the minimal counterexample shows why those instances fail, and the same
instance set passes once every weight lies strictly inside (0, 1).
"""

from fractions import Fraction

import pytest

from geodist import (geodetic_report, log_distance, make_graph, reliability_exact,
                     transitional_audit)
from geodist.graph import EITHER, separates
from tests.test_acceptance import STRONG_COUNT, reweighted, strong_instances

OPEN = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def test_certain_arcs_give_equality_without_cut_vertex():
    # 1->2->3 plus a direct arc 1->3, every arc certain to survive
    g = make_graph(3, [(1, 2, 1), (2, 3, 1), (1, 3, 1), (3, 1, 1)])
    p = reliability_exact(g, "rational").matrix
    assert p[0, 1] * p[1, 2] == p[0, 2] * p[1, 1] == 1
    assert not separates(g, 1, 2, 3)
    rep = transitional_audit(reliability_exact(g, "rational"), g)
    assert any(c.indices == (1, 2, 3) and c.note == "equality without separation" for c in rep.failures)


def test_single_uncertain_arc_restores_strictness():
    g = make_graph(3, [(1, 2, Fraction(1, 2)), (2, 3, 1), (1, 3, 1), (3, 1, 1)])
    rep = transitional_audit(reliability_exact(g, "rational"), g)
    assert not any(c.indices == (1, 2, 3) and not c.passed for c in rep.checks)


@pytest.mark.parametrize("idx", range(0, STRONG_COUNT, 5))
def test_open_interval_weights_pass(idx):
    g = reweighted(strong_instances()[idx], OPEN, idx)
    s = reliability_exact(g, "rational")
    assert transitional_audit(s, g, keep_passing=False).ok
    assert geodetic_report(log_distance(s), g, EITHER, keep_passing=False).ok
