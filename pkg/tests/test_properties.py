"""Property tests over hypothesis-generated strongly connected digraphs."""

from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from geodist import (WeightedDigraph, forest_matrix, geodetic_report, log_distance, metric_report,
                     path_tau_matrix, reliability_exact, route_matrix, tau_threshold_search,
                     transitional_audit)
from geodist.graph import EITHER, is_strong
from geodist.measures import max_route_epsilon

PROPS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])


@st.composite
def strong_digraphs(draw, weights=st.integers(1, 4).map(Fraction), max_n=5):
    n = draw(st.integers(2, max_n))
    pairs = [(t, h) for t in range(1, n + 1) for h in range(1, n + 1) if t != h]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=n, max_size=min(12, len(pairs)), unique=True))
    g = WeightedDigraph(n, tuple((t, h, draw(weights)) for t, h in chosen))
    assume(is_strong(g))
    return g


probabilities = st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(2, 3), Fraction(9, 10)])


@PROPS
@given(strong_digraphs(), st.sampled_from(["in", "out"]))
def test_forest_distance_is_geodetic_metric(g, orientation):
    s = forest_matrix(g, orientation, backend="rational")
    assert transitional_audit(s, g, keep_passing=False).ok
    d = log_distance(s)
    assert metric_report(d, keep_passing=False).ok
    assert geodetic_report(d, g, EITHER, keep_passing=False).ok


@PROPS
@given(strong_digraphs(), st.sampled_from([Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)]))
def test_route_distance_matches_forest_distance(g, frac):
    eps = max_route_epsilon(g, "rational") * frac
    d_route = log_distance(route_matrix(g, eps, "rational")).matrix
    d_forest = log_distance(forest_matrix(g, backend="rational")).matrix
    assert (d_route == d_forest).all()


@PROPS
@given(strong_digraphs(weights=probabilities, max_n=4))
def test_reliability_with_open_weights_is_transitional(g):
    s = reliability_exact(g, "rational")
    assert transitional_audit(s, g, keep_passing=False).ok


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(strong_digraphs(max_n=4))
def test_searched_tau_is_also_geodetic(g):
    # the search only runs the one-way transitional audit
    tau = tau_threshold_search(g)
    assume(tau is not None)
    s = path_tau_matrix(g, tau, "rational")
    assert geodetic_report(log_distance(s), g, EITHER, keep_passing=False).ok


@PROPS
@given(strong_digraphs(), st.fractions(min_value=Fraction(1, 100), max_value=100))
def test_log_distance_ignores_scale(g, c):
    assume(c > 0)
    s = forest_matrix(g, backend="rational")
    assert (log_distance(s.scaled(c)).matrix == log_distance(s).matrix).all()
