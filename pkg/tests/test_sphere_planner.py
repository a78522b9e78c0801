import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tcn.sphere_planner import (Plan, PlannerError, continuity_probe, domain_count, domain_index,
                                geodesic, plan, random_config, random_point, sphere_point,
                                tangent_field)


def test_tangent_field_examples():
    np.testing.assert_array_equal(tangent_field(np.array([1.0, 0.0]), 1), [0.0, 1.0])
    np.testing.assert_array_equal(tangent_field(np.array([1.0, 0, 0, 0]), 3), [0, 1.0, 0, 0])
    with pytest.raises(PlannerError):
        tangent_field(np.array([1.0, 0, 0]), 2)


@pytest.mark.parametrize("k", [1, 3, 5, 7])
def test_tangent_field_unit_and_orthogonal(k):
    rng = np.random.default_rng(k)
    for _ in range(200):
        x = random_point(rng, k)
        v = tangent_field(x, k)
        assert abs(v @ x) < 1e-12
        assert abs(np.linalg.norm(v) - 1) < 1e-12


def test_geodesic_examples():
    x, y = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    p = geodesic(x, y, 1, samples=2)
    np.testing.assert_allclose(p.samples[1], [np.sqrt(2) / 2, np.sqrt(2) / 2], atol=1e-15)
    p = geodesic(x, -x, 1, samples=2)
    np.testing.assert_allclose(p.samples[1], [0.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(p.end, -x, atol=1e-15)
    p = geodesic(x, x.copy(), 1, samples=10)
    assert np.all(p.samples == x)


def test_geodesic_antipodal_even_sphere_rejected():
    x = np.array([0.0, 0.0, 1.0])
    with pytest.raises(PlannerError):
        geodesic(x, -x, 2)
    # non-antipodal pairs are fine on any sphere
    geodesic(x, np.array([1.0, 0.0, 0.0]), 2)


def test_geodesic_near_antipode_ends_at_target():
    x = np.array([1.0, 0.0, 0.0, 0.0])
    y = sphere_point([-1.0, 3e-9, 0.0, 0.0])
    p = geodesic(x, y, 3, samples=20)
    assert np.linalg.norm(p.end - y) < 1e-9
    assert np.linalg.norm(p.samples[10] - tangent_field(x, 3)) < 1e-8


@pytest.mark.parametrize("k", [1, 3, 5])
def test_paths_constant_speed_and_on_sphere(k):
    rng = np.random.default_rng(3)
    for _ in range(50):
        x = random_point(rng, k)
        for y in (random_point(rng, k), -x):
            p = geodesic(x, y, k, samples=40)
            assert np.max(np.abs(np.linalg.norm(p.samples, axis=1) - 1)) < 1e-9
            c = p.chords()
            assert np.max(np.abs(c - c.mean())) <= 1e-6 * c.mean()


def test_domain_index_examples():
    x = np.array([1.0, 0, 0, 0])
    g = sphere_point([0.3, 0.4, 0.5, 0.1])
    assert domain_index([x, x, x]) == 0
    assert domain_index([x, -x, g]) == 1
    assert domain_index([x, -x, -x, -x]) == 3


def test_domain_index_symmetry():
    rng = np.random.default_rng(8)
    for _ in range(50):
        cfg = random_config(rng, 3, 5, p_antipode=0.4, p_equal=0.2)
        j = domain_index(cfg)
        tail = cfg[1:]
        rng.shuffle(tail)
        assert domain_index([cfg[0]] + tail) == j
        # moving a generic point generically keeps j
        generic = [i for i, p in enumerate(cfg[1:], 1)
                   if np.linalg.norm(p + cfg[0]) > 1e-3 and np.linalg.norm(p - cfg[0]) > 1e-3]
        for i in generic:
            moved = list(cfg)
            moved[i] = random_point(rng, 3)
            assert domain_index(moved) == j


def test_plan_examples():
    x = sphere_point([0.5, 0.5, 0.5, 0.5])
    p = plan([x, x, x], 3)
    for path in p.paths:
        assert np.all(path.samples == x)
    e = np.array([1.0, 0.0])
    p = plan([e, -e], 1, samples=4)
    assert p.domain == 1
    np.testing.assert_allclose(p.paths[1].samples[2], [0.0, 1.0], atol=1e-15)


@pytest.mark.parametrize("k, n", [(1, 2), (3, 4), (5, 3), (3, 7)])
def test_section_property(k, n):
    rng = np.random.default_rng(k * 10 + n)
    for _ in range(40):
        cfg = random_config(rng, k, n, p_antipode=0.3, p_equal=0.2)
        p = plan(cfg, k, samples=30)
        assert p.section_violations(cfg) == []
        assert np.max(p.endpoint_residuals(cfg)) < 1e-9
        assert 0 <= p.domain <= n - 1
        start = p.paths[0].start
        assert all(np.array_equal(path.start, start) for path in p.paths)
        assert np.array_equal(start, cfg[0])


def test_plan_rejects_even_and_bad_points():
    with pytest.raises(PlannerError):
        plan([np.array([1.0, 0, 0])], 2)
    with pytest.raises(PlannerError):
        plan([np.array([2.0, 0])], 1)
    with pytest.raises(PlannerError):
        plan([np.array([1.0, 0, 0])], 1)


def test_domain_count():
    assert domain_count(3, 3) == 3
    assert domain_count(1, 2) == 2
    assert domain_count(5, 7) == 7
    with pytest.raises(PlannerError):
        domain_count(2, 3)


def test_continuity_probe_s3():
    rep = continuity_probe(3, 3, trials=1000, delta=1e-4, constant=100.0, seed=0)
    assert rep.violations == 0
    assert rep.same_domain > 0 and rep.domain_changes > 0
    assert rep.max_endpoint_residual < 1e-9
    assert rep.passed()


def test_constant_config_neighbourhood():
    x = sphere_point([1.0, 0.0, 0.0, 0.0])
    rng = np.random.default_rng(0)
    base = plan([x, x, x], 3)
    for _ in range(20):
        moved = []
        for p in (x, x, x):
            v = rng.standard_normal(4)
            v -= v.dot(p) * p
            q = p + 1e-4 * v / np.linalg.norm(v)
            moved.append(q / np.linalg.norm(q))
        other = plan(moved, 3)
        assert other.domain == 0
        dist = max(np.max(np.linalg.norm(a.samples - b.samples, axis=1))
                   for a, b in zip(base.paths, other.paths))
        assert dist <= 1e-2


def test_crossing_the_antipode_changes_domain():
    x = np.array([1.0, 0.0, 0.0, 0.0])
    p0 = plan([x, -x, x], 3)
    p1 = plan([x, sphere_point([-1.0, 1e-4, 0, 0]), x], 3)
    assert (p0.domain, p1.domain) == (1, 0)


def test_plan_json_roundtrip():
    rng = np.random.default_rng(4)
    cfg = random_config(rng, 3, 3, p_antipode=0.5)
    p = plan(cfg, 3, samples=7)
    data = json.loads(p.to_json())
    assert set(data) == {"k", "n", "domain", "samples", "paths"}
    assert data["samples"] == 7 and len(data["paths"]) == 3 and len(data["paths"][0]) == 8
    back = Plan.from_dict(data)
    for a, b in zip(back.paths, p.paths):
        np.testing.assert_array_equal(a.samples, b.samples)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=4, max_size=4), st.lists(st.floats(-1, 1), min_size=4, max_size=4))
def test_geodesic_endpoints_property(a, b):
    a, b = np.array(a), np.array(b)
    if np.linalg.norm(a) < 1e-3 or np.linalg.norm(b) < 1e-3:
        return
    x, y = a / np.linalg.norm(a), b / np.linalg.norm(b)
    p = geodesic(x, y, 3, samples=16)
    assert np.array_equal(p.start, x)
    assert np.linalg.norm(p.end - y) < 1e-9
    assert np.max(np.abs(np.linalg.norm(p.samples, axis=1) - 1)) < 1e-9
