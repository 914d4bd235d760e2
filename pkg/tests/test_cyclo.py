import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffbn.cyclo import (GATE_NAMES, CycloNum, DimensionMismatch, GateMatrix, BadPosition,
                           decode_varints, encode_varint, gate, pack, packed_matmul, packed_scale,
                           unpack)

small = st.integers(-40, 40)
cyclo = st.builds(CycloNum, small, small, small, small, st.integers(0, 4))


def mat(n):
    d = 1 << n
    return st.lists(cyclo, min_size=d * d, max_size=d * d).map(lambda e: GateMatrix(n, tuple(e)))


@given(cyclo, cyclo, cyclo)
def test_ring_laws(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == CycloNum()
    assert x * CycloNum(1) == x


@given(cyclo, cyclo)
def test_conjugation_is_ring_map(x, y):
    assert (x * y).conj() == x.conj() * y.conj()
    assert complex(x * y) == pytest.approx(complex(x) * complex(y), abs=1e-6)


def test_omega_powers():
    w = CycloNum.omega()
    p = CycloNum(1)
    for _ in range(8):
        p = p * w
    assert p == CycloNum(1)
    assert CycloNum.omega(4) == CycloNum(-1)


def test_normal_form_reduces_k():
    assert CycloNum(2, 4, 0, 6, 1) == CycloNum(1, 2, 0, 3)
    with pytest.raises(ValueError):
        CycloNum(1, 0, 0, 0, -1)


@given(st.integers(-10**12, 10**12))
def test_varint_roundtrip(n):
    assert decode_varints(encode_varint(n)) == [n]


@settings(max_examples=30)
@given(mat(1), mat(1), mat(1))
def test_kron_mixed_product(a, b, c):
    assert a.kron(b) @ c.kron(c) == (a @ c).kron(b @ c)
    assert a.kron(b).kron(c) == a.kron(b.kron(c))


@settings(max_examples=30)
@given(mat(1), mat(1))
def test_dagger_antihomomorphism(a, b):
    assert (a @ b).dagger() == b.dagger() @ a.dagger()


@settings(max_examples=50)
@given(mat(1))
def test_key_and_json_roundtrip(a):
    assert GateMatrix.decode(a.canonical_key()) == a
    assert GateMatrix.from_json(a.to_json()) == a


def test_projective_key_ignores_unit_scalars():
    h = gate("H", 1)
    assert h.canonical_key(True) == h.scale(CycloNum.omega(3)).canonical_key(True)
    assert h.canonical_key() != h.scale(CycloNum.omega(3)).canonical_key()


@pytest.mark.parametrize("name", GATE_NAMES)
def test_gates_unitary(name):
    two = name in ("CZ", "T", "R")
    g = gate(name, 3, [0, 2] if two else [1])
    assert g.is_unitary()


def test_gate_embedding_errors():
    with pytest.raises(BadPosition):
        gate("CZ", 2, [0, 0])
    with pytest.raises(ValueError):
        gate("nope", 1)
    with pytest.raises(DimensionMismatch):
        GateMatrix.from_rows([[1, 0, 0]])


def test_embedding_matches_kron():
    assert gate("H", 2, [1]) == gate("I", 1).kron(gate("H", 1))
    assert gate("CZ", 3, [0, 1]) == gate("CZ", 2).kron(gate("I", 1))


@settings(max_examples=25)
@given(st.lists(st.sampled_from(["H", "P", "X", "Z"]), min_size=1, max_size=12))
def test_packed_product_exact(word):
    n = 1
    s = packed_scale(n)
    m = GateMatrix.identity(n)
    acc = pack(m, s).astype(np.int64)
    for g in word:
        m = m @ gate(g, n)
        acc = packed_matmul(acc, pack(gate(g, n), s).astype(np.int64), s)
    assert unpack(acc, s) == m
