import json

import numpy as np
import pytest

from cliffbn.schlafli import (INDEX, LABELS, CubicSurface, build_incidence, double_sixes,
                              is_automorphism, meets, tritangent_planes)


@pytest.fixture(scope="module")
def surface():
    return CubicSurface()


def test_labels_and_rules():
    assert len(LABELS) == 27
    assert meets("c12", "c34") and not meets("c12", "c13")
    assert meets("a1", "b2") and not meets("a1", "b1") and not meets("a1", "a2")
    assert meets("a1", "c12") and not meets("a1", "c23")


def test_graph_counts():
    g = build_incidence()
    assert set(g.degrees) == {10}
    assert g.meeting_pairs() == 135 and g.skew_pairs() == 216


def test_tritangents():
    planes = tritangent_planes()
    assert len(planes) == 45
    assert frozenset(INDEX[x] for x in ("a1", "b2", "c12")) in planes
    kinds = sorted(sum(LABELS[v][0] == "c" for v in p) for p in planes)
    assert kinds.count(1) == 30 and kinds.count(3) == 15


def test_double_sixes():
    ds = double_sixes()
    assert len(ds) == 36
    a = frozenset(INDEX[f"a{i}"] for i in range(1, 7))
    b = frozenset(INDEX[f"b{i}"] for i in range(1, 7))
    assert any({L, M} == {a, b} for L, M in ds)


def test_exports():
    g = build_incidence()
    obj = json.loads(g.to_json())
    assert len(obj["vertices"]) == 27 and len(obj["adjacency"]["a1"]) == 10
    dot = g.to_dot()
    assert dot.startswith("graph") and dot.count("--") == 135


def test_automorphisms(surface):
    adj = surface.graph.adjacency
    for gen in surface.base_generators + [surface.extra_generator]:
        assert is_automorphism(gen, adj)
    assert surface.aut.order == 51840


def test_transitivity_and_orbit_stabilizer(surface):
    n = surface.aut.order
    assert surface.orbit_size([INDEX["a1"]]) == 27
    assert surface.orbit_size([INDEX[x] for x in ("a1", "b2", "c12")]) == 45
    line, tri, six = (surface.line_stabilizer(), surface.tritangent_stabilizer(),
                      surface.double_six_stabilizer())
    assert 27 * line.group.order == 45 * tri.group.order == 36 * six.group.order == n
    assert six.orbit_size == 36
