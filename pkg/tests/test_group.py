import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffbn import cache
from cliffbn.clifford import generators, matrix_group
from cliffbn.group import (BudgetExceeded, as_subgroup, closure, quotient, subgroup,
                           subgroup_from_members)
from cliffbn.kinds import MatrixKind, PermKind
from cliffbn.refgroups import alternating, cyclic, product_group, symmetric
from cliffbn.structure import (center, conjugacy_classes, derived_subgroup, double_cosets,
                               find_isomorphism, fingerprint, index_subgroups, is_normal,
                               normal_subgroups, orbit_labels, right_coset_labels, split_check)

SMALL = [symmetric(3), symmetric(4), alternating(4), cyclic(6),
         product_group(symmetric(3), cyclic(2)), product_group(cyclic(2), cyclic(2), cyclic(2))]


def test_closure_determinism_bytes():
    a, b = matrix_group("C1"), matrix_group("C1")
    assert a.keys() == b.keys()
    assert cache.dumps(a) == cache.dumps(b)
    assert np.array_equal(a.parent, b.parent) and np.array_equal(a.letter, b.letter)


def test_closure_budget():
    kind = MatrixKind(1)
    with pytest.raises(BudgetExceeded) as exc:
        closure([kind.pack(g) for g in generators("C1")], kind, budget=50)
    assert exc.value.count > 50


def test_mul_idx_matches_kind_product():
    G = matrix_group("C1")
    rng = np.random.default_rng(3)
    a, b = rng.integers(0, G.order, 200), rng.integers(0, G.order, 200)
    prods = G.mul_idx(a, b)
    for x, y, p in zip(a[:40], b[:40], prods[:40]):
        assert G.key(int(p)) == G.kind.key(G.kind.mul(G.element(int(x)), G.element(int(y))))


def test_inverses_and_orders():
    G = symmetric(4)
    inv = G.inverses()
    assert (G.mul_idx(np.arange(G.order), inv) == 0).all()
    assert np.bincount(G.element_orders())[1:].tolist() == [1, 9, 8, 6]


@pytest.mark.parametrize("G", SMALL, ids=lambda g: g.name)
def test_lagrange_and_cosets(G):
    for k in range(1, min(G.order, 6)):
        K = subgroup(G, [k])
        assert G.order % K.order == 0
        labels = right_coset_labels(G, K)
        assert len(np.unique(labels)) * K.order == G.order


@pytest.mark.parametrize("G", SMALL, ids=lambda g: g.name)
def test_orbit_stabilizer(G):
    perms = [np.asarray(g) for g in G.gens]
    labels = orbit_labels(G.kind.degree, perms)
    elems = np.stack([np.asarray(e) for e in G.elements])
    for pt in range(G.kind.degree):
        stab = np.nonzero(elems[:, pt] == pt)[0]
        orbit = int((labels == labels[pt]).sum())
        assert orbit * stab.size == G.order


@pytest.mark.parametrize("G", SMALL, ids=lambda g: g.name)
def test_double_coset_sizes_sum(G):
    K = subgroup(G, [1])
    labels, sizes = double_cosets(G, K, K)
    assert sum(sizes) == G.order
    assert len(sizes) == len(np.unique(labels))


def _brute_normal(G):
    """Normal subgroups as multiplicatively closed unions of conjugacy classes."""
    T = G.table()
    cls = conjugacy_classes(G)
    others = [c for c in np.unique(cls) if c != cls[0]]
    found = set()
    for r in range(len(others) + 1):
        for pick in itertools.combinations(others, r):
            mask = np.isin(cls, [cls[0], *pick])
            members = np.nonzero(mask)[0]
            if G.order % members.size == 0 and mask[T[np.ix_(members, members)]].all():
                found.add(frozenset(members.tolist()))
    return found


@pytest.mark.parametrize("G", [symmetric(4), symmetric(5), product_group(symmetric(3), symmetric(3)),
                               product_group(cyclic(2), cyclic(2), cyclic(2)),
                               product_group(alternating(4), cyclic(2)), matrix_group("P1")],
                         ids=lambda g: f"{g.name}")
def test_normal_subgroups_exhaustive(G):
    assert G.order <= 200
    brute = _brute_normal(G)
    from cliffbn.group import ambient_ords
    got = {frozenset(ambient_ords(N, G).tolist()) for N in normal_subgroups(G)}
    assert got == brute


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 23), st.integers(0, 23))
def test_fingerprint_invariant_under_conjugation(g, x):
    G = symmetric(4)
    K = subgroup(G, [x])
    c = G.conj_perm(g)
    conj = subgroup_from_members(G, np.unique(c[np.asarray(_sorted_members(K, G))]))
    assert fingerprint(conj) == fingerprint(K)


def _sorted_members(K, G):
    from cliffbn.group import ambient_ords
    return sorted(ambient_ords(K, G).tolist())


def test_center_derived_quotient():
    G = symmetric(4)
    assert center(G).order == 1
    D = derived_subgroup(G)
    assert D.order == 12 and is_normal(G, D)
    Q = quotient(G, D)
    assert Q.order == 2
    assert find_isomorphism(alternating(4), D) is not None
    assert find_isomorphism(symmetric(4), product_group(alternating(4), cyclic(2))) is None


def test_split_check():
    G = symmetric(4)
    assert split_check(G, derived_subgroup(G)).splits
    Z4 = cyclic(4)
    assert not split_check(Z4, subgroup(Z4, [int(np.nonzero(Z4.element_orders() == 2)[0][0])])).splits


def test_index_subgroups_s4():
    subs = index_subgroups(symmetric(4), 4)
    assert len(subs) == 4 and all(K.order == 6 for K in subs)


def test_conjugacy_classes_s4():
    assert sorted(np.bincount(conjugacy_classes(symmetric(4))).tolist()) == [1, 3, 6, 6, 8]


# -- cache --------------------------------------------------------------------------

@pytest.mark.parametrize("make", [lambda: matrix_group("C1"), lambda: symmetric(5),
                                  lambda: matrix_group("C1", projective=True)])
def test_cache_roundtrip(make, tmp_path):
    G = make()
    p = tmp_path / "g.cbnv"
    cache.save_group(G, p)
    H = cache.load_group(p)
    assert H.keys() == G.keys() and H.gen_ords == G.gen_ords
    assert np.array_equal(H.table(), G.table())


def test_cache_c2_table_identical(c2, tmp_path):
    G = c2["C2"]
    p = tmp_path / "c2.cbnv"
    cache.save_group(G, p)
    H = cache.load_group(p)
    assert H.keys() == G.keys()
    x = np.arange(0, G.order, 97)
    assert np.array_equal(H.mul_idx(x, x[::-1]), G.mul_idx(x, x[::-1]))


def test_cache_corruption(tmp_path):
    data = cache.dumps(matrix_group("C1"))
    with pytest.raises(cache.CorruptCache):
        cache.loads(data[:-7])
    with pytest.raises(cache.CorruptCache):
        cache.loads(data[:10])
    with pytest.raises(cache.CorruptCache, match="version"):
        cache.loads(data[:4] + (99).to_bytes(2, "little") + data[6:])
    with pytest.raises(cache.CorruptCache, match="magic"):
        cache.loads(b"XXXX" + data[4:])
    flipped = bytearray(data)
    flipped[len(data) // 2] ^= 0xFF
    with pytest.raises(cache.CorruptCache):
        cache.loads(bytes(flipped))


def test_cache_rejects_derived_kinds():
    G = symmetric(3)
    with pytest.raises(TypeError):
        cache.dumps(subgroup(G, [1]))


def test_cache_check_dir(tmp_path):
    cache.save_group(symmetric(3), tmp_path / "s3.cbnv")
    (tmp_path / "bad.cbnv").write_bytes(b"CBNV")
    rows = {r["file"]: r["ok"] for r in cache.check_dir(tmp_path)}
    assert rows == {"s3.cbnv": True, "bad.cbnv": False}
