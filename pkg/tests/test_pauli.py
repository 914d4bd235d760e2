import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffbn.clifford import generators, matrix_group
from cliffbn.cyclo import CycloNum, GateMatrix, gate, pack, packed_dagger, packed_matmul, packed_scale, unpack
from cliffbn.group import closure
from cliffbn.kinds import MatrixKind
from cliffbn.pauli import (ActionTable, FormViolation, NotInPauliGroup, PauliElement, SymplecticKind,
                           action_table, coset_key, is_symplectic, kernel_bound,
                           omega_parity, order_via_factorization, pauli_generators, quotient_by_pauli, sp_order,
                           symplectic_form, symplectic_from_rows_hex, symplectic_identity,
                           symplectic_image, symplectic_of, symplectic_rows_hex)


def pauli(n):
    m = (1 << n) - 1
    return st.builds(lambda p, x, z: PauliElement(n, p, x, z),
                     st.integers(0, 3), st.integers(0, m), st.integers(0, m))


@settings(max_examples=60)
@given(pauli(2), pauli(2))
def test_pauli_product_matches_matrices(p, q):
    assert (p * q).to_matrix() == p.to_matrix() @ q.to_matrix()
    assert PauliElement.from_matrix(p.to_matrix()) == p


@given(pauli(3), pauli(3), pauli(3))
def test_pauli_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(pauli(3), pauli(3))
def test_commutation_is_symplectic_form(p, q):
    u = p.x | (p.z << 3)
    v = q.x | (q.z << 3)
    assert p.commutes_with(q) == (symplectic_form(u, v, 3) == 0)


def test_not_pauli():
    with pytest.raises(NotInPauliGroup):
        PauliElement.from_matrix(gate("H", 1))


def test_action_table_of_h():
    t = action_table(gate("H", 1))
    assert [img.triple() for img in t.images] == [[0, 0, 1], [0, 1, 0]]
    assert ActionTable.from_json(t.to_json()) == t


def test_action_table_composition():
    g = generators("C2")
    u, v = g[0] @ g[2], g[1] @ g[2] @ g[0]
    assert action_table(u @ v) == action_table(u).compose(action_table(v))


def test_form_violation():
    bad = ActionTable(1, (PauliElement(1, 0, 1, 0), PauliElement(1, 0, 1, 0)))
    with pytest.raises(FormViolation):
        symplectic_of(bad)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hex_rows_roundtrip(n):
    G = symplectic_image(generators({1: "C1", 2: "C2", 3: "C3L"}[n]))
    for a in np.asarray(G.elements)[:: max(1, G.order // 50)]:
        a = int(a)
        assert is_symplectic(a, n)
        assert symplectic_from_rows_hex(symplectic_rows_hex(a, n), n) == a


def test_symplectic_inverse():
    G = symplectic_image(generators("C2"))
    k = SymplecticKind(2)
    for a in np.asarray(G.elements)[::37]:
        assert k.mul(int(a), k.inv(int(a))) == symplectic_identity(2)


def test_sp_orders():
    assert [sp_order(n) for n in (1, 2, 3)] == [6, 720, 1451520]
    assert symplectic_image(generators("C1")).order == 6
    assert symplectic_image(generators("C2")).order == 720


@pytest.mark.parametrize("name,words", [("C2", 10_000), ("C3", 1_000)])
def test_symplectic_homomorphism_random_words(name, words):
    """sp(product of a word) equals the product of generator images."""
    mats = generators(name)
    n = mats[0].n_qubits
    s = packed_scale(n)
    packed = [pack(m, s).astype(np.int64) for m in mats]
    sps = [symplectic_of(action_table(m)) for m in mats]
    kind = SymplecticKind(n)
    rng = np.random.default_rng(2024)
    length = 12
    letters = rng.integers(0, len(mats), (words, length))
    acc = np.broadcast_to(pack(GateMatrix.identity(n), s).astype(np.int64),
                          (words,) + packed[0].shape).copy()
    sp_acc = np.full(words, symplectic_identity(n), dtype=np.int64)
    for step in range(length):
        for l in range(len(mats)):
            sel = letters[:, step] == l
            if sel.any():
                acc[sel] = packed_matmul(acc[sel], packed[l], s)
                sp_acc[sel] = kind.mul_array(sp_acc[sel], sps[l])
    for i in range(words):
        assert symplectic_of(action_table(unpack(acc[i], s))) == int(sp_acc[i])


def _omega_pauli_keys(n):
    kind = MatrixKind(n)
    gens = [kind.pack(p.to_matrix()) for p in pauli_generators(n)]
    gens.append(kind.pack(GateMatrix.identity(n).scale(CycloNum.omega())))
    return set(closure(gens, kind).keys())


@pytest.mark.parametrize("name", ["C1", "C2"])
def test_kernel_full_enumeration(name, c2):
    G = c2["C2"] if name == "C2" else matrix_group(name)
    n = G.kind.n_qubits
    s = packed_scale(n)
    U = np.stack(G.elements).astype(np.int64)
    in_kernel = np.ones(G.order, dtype=bool)
    for p in pauli_generators(n):
        P = pack(p.to_matrix(), s).astype(np.int64)
        up = packed_matmul(U, P, s)
        pu = packed_dagger(packed_matmul(packed_dagger(U), P, s))   # (U^† P)^† = P U
        # trivial symplectic image: U P U^-1 = ±P
        in_kernel &= (up == pu).all(axis=(1, 2, 3)) | (up == -pu).all(axis=(1, 2, 3))
    kernel = {G.key(i) for i in np.nonzero(in_kernel)[0]}
    assert len(kernel) == kernel_bound(n)
    assert kernel == _omega_pauli_keys(n)


@pytest.mark.slow
def test_kernel_three_qubits_by_closure():
    f = order_via_factorization(generators("C3"), name="C3")
    assert f.kernel_order == 512
    assert set(f.kernel.keys()) == _omega_pauli_keys(3)


def test_quotient_by_pauli_two_qubits(c2):
    Q = quotient_by_pauli(generators("C2"), name="C2/P2")
    assert Q.order == c2["C2"].order // 64


def test_coset_key_counts():
    # Pauli sign flips span all sign patterns, so the residue is trivial and
    # keys count Sp(2,2) without the phase bit and C1/P1 with it
    G = matrix_group("C1")
    s = packed_scale(1)
    mats = [unpack(np.asarray(e, dtype=np.int64), s) for e in G.elements]
    assert len({coset_key(action_table(m)) for m in mats}) == sp_order(1)
    assert len({coset_key(action_table(m), omega_parity(m)) for m in mats}) == G.order // 16
