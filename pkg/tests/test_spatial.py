import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from imgql import spatial
from imgql.grid import Adjacency

ADJ = [4, 8]


def small_pair():
    return st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
        lambda s: st.tuples(arrays(bool, s), arrays(bool, s))
    )


# closure / interior


def test_closure_of_empty_is_empty():
    assert not spatial.closure(np.zeros((4, 4), bool)).any()


@pytest.mark.parametrize("adj,expected", [(8, 9), (4, 5)])
def test_closure_of_centre(adj, expected):
    b = np.zeros((3, 3), bool)
    b[1, 1] = True
    c = spatial.closure(b, adj)
    assert c.sum() == expected
    if adj == 4:
        assert not c[0, 0] and c[0, 1]


def test_interior_of_full_and_isolated():
    assert spatial.interior(np.ones((4, 5), bool)).all()
    b = np.zeros((3, 3), bool)
    b[1, 1] = True
    assert not spatial.interior(b).any()
    assert not spatial.interior(b, 4).any()


@pytest.mark.parametrize("adj", ADJ)
def test_closure_matches_oracle(rng, adj):
    for _ in range(50):
        b = oracles.random_bool(rng, tuple(rng.integers(1, 8, 2)))
        np.testing.assert_array_equal(spatial.closure(b, adj), oracles.closure(b, adj))


@settings(max_examples=300, deadline=None)
@given(small_pair(), st.sampled_from(ADJ))
def test_closure_axioms(ab, adj):
    a, b = ab
    ca, cb = spatial.closure(a, adj), spatial.closure(b, adj)
    assert not (a & ~ca).any()
    np.testing.assert_array_equal(spatial.closure(a | b, adj), ca | cb)
    np.testing.assert_array_equal(spatial.interior(a, adj), ~spatial.closure(~a, adj))


@settings(max_examples=200, deadline=None)
@given(small_pair(), st.sampled_from(ADJ))
def test_monotonicity(ab, adj):
    a, b = ab
    small, big = a & b, a | b
    assert not (spatial.closure(small, adj) & ~spatial.closure(big, adj)).any()
    assert not (spatial.may_reach(small, a, adj) & ~spatial.may_reach(big, a, adj)).any()
    assert (spatial.distance_transform(small) >= spatial.distance_transform(big)).all()


# reachability


def test_may_reach_row_example():
    target = np.array([[0, 0, 0, 0, 1]], bool)
    through = np.array([[0, 0, 1, 0, 0]], bool)
    expected = np.array([[0, 0, 0, 1, 1]], bool)  # from oracles.reach_paths
    np.testing.assert_array_equal(oracles.reach_paths(target, through, 8), expected)
    for adj in ADJ:
        np.testing.assert_array_equal(spatial.may_reach_fwd(target, through, adj), expected)


def test_may_reach_degenerate_through(rng):
    t = oracles.random_bool(rng, (6, 6), 0.1)
    t[0, 0] = True
    np.testing.assert_array_equal(spatial.may_reach(t, np.zeros_like(t)), spatial.closure(t))
    assert spatial.may_reach(t, np.ones_like(t)).all()


def test_may_reach_bwd(rng):
    for _ in range(30):
        f = oracles.random_bool(rng, (5, 6))
        g = oracles.random_bool(rng, (5, 6))
        np.testing.assert_array_equal(spatial.may_reach_bwd(f, g), spatial.may_reach_fwd(f, g))
        np.testing.assert_array_equal(spatial.may_reach_bwd(f, np.zeros_like(f)), spatial.closure(f))
    assert not spatial.may_reach_bwd(np.zeros((4, 4), bool), np.ones((4, 4), bool)).any()


@settings(max_examples=250, deadline=None)
@given(small_pair(), st.sampled_from(ADJ))
def test_path_semantics_oracle(ab, adj):
    f1, f2 = ab
    np.testing.assert_array_equal(spatial.may_reach_fwd(f1, f2, adj), oracles.reach_paths(f1, f2, adj))
    np.testing.assert_array_equal(spatial.surrounded(f1, f2, adj), oracles.surrounded(f1, f2, adj))
    np.testing.assert_array_equal(spatial.touch(f1, f2, adj), oracles.touch(f1, f2, adj))
    np.testing.assert_array_equal(spatial.grow(f1, f2, adj), oracles.grow(f1, f2, adj))


def test_surrounded_degenerate(rng):
    for _ in range(30):
        f = oracles.random_bool(rng, (5, 5))
        np.testing.assert_array_equal(spatial.surrounded(f, np.ones_like(f)), f)
        f[2, 2] = False
        assert not spatial.surrounded(f, np.zeros_like(f)).any()
    full = np.ones((3, 3), bool)
    assert spatial.surrounded(full, np.zeros_like(full)).all()


def test_touch_and_grow_degenerate(rng):
    f = oracles.random_bool(rng, (6, 6))
    np.testing.assert_array_equal(spatial.touch(f, f), f)
    assert not spatial.touch(f, np.zeros_like(f)).any()
    np.testing.assert_array_equal(spatial.grow(f, np.zeros_like(f)), f)


def test_grow_two_blobs():
    hyper = np.zeros((10, 20), bool)
    very = np.zeros((10, 20), bool)
    hyper[2:6, 2:6] = True
    very[2:6, 6:10] = True  # adjacent to hyper
    np.testing.assert_array_equal(spatial.grow(hyper, very), hyper | very)
    far = np.zeros((10, 20), bool)
    far[2:6, 12:16] = True
    np.testing.assert_array_equal(spatial.grow(hyper, far), hyper)


# distances


def test_distance_empty_is_inf():
    assert np.isposinf(spatial.distance_transform(np.zeros((4, 3), bool))).all()


def test_distance_single_point():
    b = np.zeros((6, 6), bool)
    b[0, 0] = True
    assert spatial.distance_transform(b)[4, 3] == 7


def test_distance_matches_brute_force(rng):
    for _ in range(40):
        b = oracles.random_bool(rng, tuple(rng.integers(1, 12, 2)), rng.uniform(0, 0.2))
        d = spatial.distance_transform(b)
        np.testing.assert_array_equal(d, oracles.manhattan_distance(b))
        np.testing.assert_array_equal(d == 0, b)


def test_dist_predicates(rng):
    b = oracles.random_bool(rng, (8, 8), 0.2)
    np.testing.assert_array_equal(spatial.distleq(0, b), b)
    assert spatial.distgeq(3, np.zeros_like(b)).all()
    for r in (0.5, 1, 2.5, 4):
        np.testing.assert_array_equal(spatial.distlt(r, b), ~spatial.distgeq(r, b))
    with pytest.raises(ValueError):
        spatial.distleq(-1, b)


# smoothen


def test_smoothen_constant_images():
    t, f = np.ones((8, 8), bool), np.zeros((8, 8), bool)
    assert spatial.smoothen(2, t).all()
    assert not spatial.smoothen(2, f).any()
    assert not spatial.smoothen(0, t).any()


def test_smoothen_removes_protrusion():
    yy, xx = np.mgrid[0:40, 0:40]
    disk = (yy - 20) ** 2 + (xx - 15) ** 2 <= 100
    spur = np.zeros_like(disk)
    spur[20, 25:35] = True
    b = disk | spur
    out = spatial.smoothen(3, b)
    assert not (out & ~b).any()
    assert not out[20, 27:35].any()
    core = spatial.distgeq(3, ~disk)
    assert not (core & ~out).any()


@settings(max_examples=100, deadline=None)
@given(arrays(bool, (10, 10)), st.integers(1, 4))
def test_smoothen_is_an_opening(b, r):
    once = spatial.smoothen(r, b)
    assert not (once & ~b).any()
    np.testing.assert_array_equal(spatial.smoothen(r, once), once)


# components / maxvol


def test_components_examples():
    assert spatial.connected_components(np.zeros((3, 3), bool)).count == 0
    b = np.zeros((4, 8), bool)
    b[0:2, 5:7] = True
    b[2:4, 0:2] = True
    labels, n = spatial.connected_components(b)
    assert n == 2 and labels[0, 5] == 1 and labels[2, 0] == 2
    d = np.array([[1, 0], [0, 1]], bool)
    assert spatial.connected_components(d, 8).count == 1
    assert spatial.connected_components(d, 4).count == 2


@pytest.mark.parametrize("adj", ADJ)
def test_components_match_oracle(rng, adj):
    for _ in range(40):
        b = oracles.random_bool(rng, tuple(rng.integers(1, 10, 2)))
        labels, n = spatial.connected_components(b, adj)
        olabels, on = oracles.components(b, adj)
        assert n == on
        np.testing.assert_array_equal(labels, olabels)


def test_maxvol_examples():
    b = np.zeros((5, 10), bool)
    b[0, 0:3] = True
    b[3, 0:5] = True
    np.testing.assert_array_equal(spatial.maxvol(b), np.pad(np.ones((1, 5), bool), ((3, 1), (0, 5))))
    t = np.zeros((5, 10), bool)
    t[0:2, 0:2] = True
    t[3:5, 6:8] = True
    np.testing.assert_array_equal(spatial.maxvol(t), t)
    assert not spatial.maxvol(np.zeros((3, 3), bool)).any()


@settings(max_examples=150, deadline=None)
@given(arrays(bool, (7, 9)), st.sampled_from(ADJ))
def test_maxvol_properties(b, adj):
    out = spatial.maxvol(b, adj)
    assert not (out & ~b).any()
    labels, n = spatial.connected_components(b, adj)
    if n:
        biggest = np.bincount(labels.ravel())[1:].max()
        ol, on = spatial.connected_components(out, adj)
        assert on >= 1
        assert all(s == biggest for s in np.bincount(ol.ravel())[1:])
