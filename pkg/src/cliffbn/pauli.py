"""Pauli elements, Clifford conjugation tables and the binary symplectic shadow.

Conventions: a Pauli element is i^phase * X^x * Z^z where x and z are qubit
bitmasks (bit q is qubit q, qubit 0 the leftmost tensor factor). A symplectic
matrix is packed column by column into one integer: column j (the image of
basis vector j, ordered x_0..x_{n-1}, z_0..z_{n-1}) occupies bits
[2n*j, 2n*(j+1)), with the x part in the low n bits. With this layout
sp(UV) = sp(U) * sp(V).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cyclo import (I_UNIT, ONE, ZERO, CycloNum, GateMatrix, packed_omega_parity,
                    packed_rowmul, packed_scale)
from .group import BudgetExceeded, FiniteGroup, closure
from .kinds import MatrixKind, _ArrayKind


class NotInPauliGroup(ValueError):
    pass


class FormViolation(ArithmeticError):
    pass


def _popcount(v: int) -> int:
    return bin(v).count("1")


_I_POWERS = [ONE, I_UNIT, -ONE, -I_UNIT]


@dataclass(frozen=True)
class PauliElement:
    n: int
    phase: int
    x: int
    z: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", self.phase % 4)

    def __mul__(self, other: PauliElement) -> PauliElement:
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        ph = self.phase + other.phase + 2 * _popcount(self.z & other.x)
        return PauliElement(self.n, ph, self.x ^ other.x, self.z ^ other.z)

    def is_hermitian(self) -> bool:
        return self.phase % 2 == _popcount(self.x & self.z) % 2

    @property
    def sign(self) -> int:
        """0 or 1 for a Hermitian element: it equals (-1)^sign * P(x, z)."""
        if not self.is_hermitian():
            raise ValueError("sign is defined for Hermitian elements only")
        return ((self.phase - _popcount(self.x & self.z)) % 4) // 2

    def commutes_with(self, other: PauliElement) -> bool:
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    def triple(self) -> list[int]:
        return [self.phase, self.x, self.z]

    def to_matrix(self) -> GateMatrix:
        d = 1 << self.n
        xi, zi = _index_mask(self.x, self.n), _index_mask(self.z, self.n)
        rows = [[ZERO] * d for _ in range(d)]
        for j in range(d):
            sgn = 2 * (_popcount(zi & j) % 2)
            rows[j ^ xi][j] = _I_POWERS[(self.phase + sgn) % 4]
        return GateMatrix.from_rows(rows)

    @classmethod
    def from_matrix(cls, M: GateMatrix) -> PauliElement:
        n, d = M.n_qubits, 1 << M.n_qubits

        def at(r: int, c: int) -> CycloNum:
            return M.entries[r * d + c]

        col0 = [r for r in range(d) if at(r, 0) != ZERO]
        if len(col0) != 1 or at(col0[0], 0) not in _I_POWERS:
            raise NotInPauliGroup("column 0 is not a unit i^k basis vector")
        xi = col0[0]
        phase = _I_POWERS.index(at(xi, 0))
        z = 0
        for q in range(n):
            j = 1 << (n - 1 - q)
            v = at(j ^ xi, j)
            if v == _I_POWERS[phase]:
                continue
            if v == _I_POWERS[(phase + 2) % 4]:
                z |= 1 << q
            else:
                raise NotInPauliGroup("inconsistent entry pattern")
        p = cls(n, phase, _index_mask(xi, n), z)
        if p.to_matrix() != M:
            raise NotInPauliGroup("matrix is not a Pauli element")
        return p

    @classmethod
    def hermitian(cls, n: int, x: int, z: int, sign: int = 0) -> PauliElement:
        return cls(n, _popcount(x & z) + 2 * sign, x, z)


def _index_mask(bits: int, n: int) -> int:
    """Qubit bitmask <-> basis-index bitmask (an involution)."""
    out = 0
    for q in range(n):
        if bits >> q & 1:
            out |= 1 << (n - 1 - q)
    return out


def pauli_generators(n: int) -> list[PauliElement]:
    """X_0..X_{n-1}, Z_0..Z_{n-1}."""
    return ([PauliElement(n, 0, 1 << q, 0) for q in range(n)]
            + [PauliElement(n, 0, 0, 1 << q) for q in range(n)])


def conjugate_pauli(M: GateMatrix, p: PauliElement) -> PauliElement:
    """M p M^dagger as a Pauli element; raises NotInPauliGroup otherwise."""
    if M.n_qubits != p.n:
        raise ValueError("qubit counts differ")
    return PauliElement.from_matrix(M @ p.to_matrix() @ M.dagger())


@dataclass(frozen=True)
class ActionTable:
    """Images of X_1..X_n, Z_1..Z_n under conjugation by a Clifford matrix."""
    n: int
    images: tuple[PauliElement, ...]

    @classmethod
    def identity(cls, n: int) -> ActionTable:
        return cls(n, tuple(pauli_generators(n)))

    def apply(self, p: PauliElement) -> PauliElement:
        out = PauliElement(self.n, p.phase, 0, 0)
        for q in range(self.n):
            if p.x >> q & 1:
                out = out * self.images[q]
        for q in range(self.n):
            if p.z >> q & 1:
                out = out * self.images[self.n + q]
        return out

    def compose(self, other: ActionTable) -> ActionTable:
        """Table of U*V when self is the table of U and other that of V."""
        return ActionTable(self.n, tuple(self.apply(g) for g in other.images))

    def signs(self) -> int:
        return sum(img.sign << j for j, img in enumerate(self.images))

    def to_json(self) -> str:
        return json.dumps([img.triple() for img in self.images])

    @classmethod
    def from_json(cls, text: str) -> ActionTable:
        triples = json.loads(text)
        n = len(triples) // 2
        return cls(n, tuple(PauliElement(n, *t) for t in triples))


def action_table(M: GateMatrix) -> ActionTable:
    return ActionTable(M.n_qubits,
                       tuple(conjugate_pauli(M, g) for g in pauli_generators(M.n_qubits)))


# -- symplectic layer -------------------------------------------------------------

def _col(a: int, j: int, n: int) -> int:
    w = 2 * n
    return (a >> (w * j)) & ((1 << w) - 1)


def symplectic_form(u: int, v: int, n: int) -> int:
    m = (1 << n) - 1
    return (_popcount((u & m) & (v >> n)) + _popcount((u >> n) & (v & m))) % 2


def is_symplectic(a: int, n: int) -> bool:
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            if symplectic_form(_col(a, i, n), _col(a, j, n), n) != (1 if j == i + n else 0):
                return False
    return True


def symplectic_of(t: ActionTable) -> int:
    n, w = t.n, 2 * t.n
    a = 0
    for j, img in enumerate(t.images):
        a |= (img.x | (img.z << n)) << (w * j)
    if not is_symplectic(a, n):
        raise FormViolation("images do not preserve the symplectic form")
    return a


def symplectic_identity(n: int) -> int:
    return sum(1 << (2 * n * j + j) for j in range(2 * n))


def symplectic_apply(a: int, v: int, n: int) -> int:
    out = 0
    for i in range(2 * n):
        if v >> i & 1:
            out ^= _col(a, i, n)
    return out


def symplectic_rows_hex(a: int, n: int) -> list[str]:
    w = 2 * n
    rows = []
    for r in range(w):
        bits = sum(((_col(a, j, n) >> r) & 1) << (w - 1 - j) for j in range(w))
        rows.append(format(bits, f"0{(w + 3) // 4}x"))
    return rows


def symplectic_from_rows_hex(rows: list[str], n: int) -> int:
    w = 2 * n
    a = 0
    for r, h in enumerate(rows):
        bits = int(h, 16)
        for j in range(w):
            if bits >> (w - 1 - j) & 1:
                a |= 1 << (w * j + r)
    return a


def sp_order(n: int) -> int:
    """Classical |Sp(2n,2)| = 2^(n^2) * prod (2^(2i) - 1)."""
    out = 2 ** (n * n)
    for i in range(1, n + 1):
        out *= 4 ** i - 1
    return out


class SymplecticKind(_ArrayKind):
    """Packed Sp(2n, 2) matrices."""

    kind_id = 4

    def __init__(self, n: int) -> None:
        self.n = n
        self.w = 2 * n
        self.name = f"Sp({2 * n},2)"

    def identity(self):
        return symplectic_identity(self.n)

    def mul(self, a, b):
        return int(self.mul_array(np.array([a], dtype=np.int64), b)[0])

    def mul_array(self, arr, g):
        arr = np.asarray(arr, dtype=np.int64)
        g = int(g)
        w, mask = self.w, (1 << self.w) - 1
        cols = [(arr >> (w * i)) & mask for i in range(w)]
        out = np.zeros_like(arr)
        for j in range(w):
            cg = (g >> (w * j)) & mask
            acc = np.zeros_like(arr)
            for i in range(w):
                if cg >> i & 1:
                    acc ^= cols[i]
            out |= acc << (w * j)
        return out

    def inv(self, a):
        # M^-1 = J M^T J with J swapping the x and z halves
        n, w = self.n, self.w
        out = 0
        for j in range(w):
            for i in range(w):
                # (M^T)[j', i'] with j' = J(j), i' = J(i)
                jj, ii = (j + n) % w, (i + n) % w
                if _col(a, jj, n) >> ii & 1:
                    out |= 1 << (w * i + j)
        return out


class CliffordQuotientKind(_ArrayKind):
    """Elements of C_n / P_n stored as (symplectic image << 1) | omega parity.

    The parity of a product is not a function of the two keys alone, so the
    kind keeps row 0 of one representative matrix per element and the packed
    generator matrices; right multiplication by a generator recomputes the
    parity from the product row.
    """

    kind_id = 5

    def __init__(self, n: int, gens: dict[int, np.ndarray]) -> None:
        self.n = n
        self.s = packed_scale(n)
        self.sp = SymplecticKind(n)
        self.gen_mats = dict(gens)
        self.name = f"C{n}/P{n}"
        self._keys = np.zeros(0, dtype=np.int64)
        self._rows = np.zeros((0, 1 << n, 4), dtype=np.int8)

    def attach(self, keys: np.ndarray, rows: np.ndarray) -> None:
        order = np.argsort(keys)
        self._keys, self._rows = keys[order], rows[order]

    def rows_of(self, arr: np.ndarray) -> np.ndarray:
        pos = np.minimum(np.searchsorted(self._keys, arr), max(self._keys.size - 1, 0))
        if self._keys.size == 0 or (self._keys[pos] != arr).any():
            raise KeyError("element has no recorded representative row")
        return self._rows[pos]

    def identity(self):
        return self.sp.identity() << 1

    def step(self, arr: np.ndarray, rows: np.ndarray, g: int):
        """Keys and rows of the products element * generator g."""
        g_mat = self.gen_mats[int(g)]
        new_rows = np.empty(rows.shape, dtype=np.int8)
        for lo in range(0, rows.shape[0], 1 << 17):
            chunk = packed_rowmul(rows[lo:lo + (1 << 17)].astype(np.int64), g_mat, self.s)
            new_rows[lo:lo + (1 << 17)] = chunk
        par = packed_omega_parity(new_rows)
        keys = (self.sp.mul_array(arr >> 1, int(g) >> 1) << 1) | par
        return keys, new_rows

    def mul_array(self, arr, g):
        arr = np.asarray(arr, dtype=np.int64)
        return self.step(arr, self.rows_of(arr), g)[0]

    def mul(self, a, b):
        if int(b) not in self.gen_mats:
            raise NotImplementedError("quotient keys multiply through generators only")
        return int(self.mul_array(np.array([a], dtype=np.int64), b)[0])

    def inv(self, a):
        raise NotImplementedError("use FiniteGroup.inverses()")


def omega_parity(M: GateMatrix) -> int:
    """Parity of j for any nonzero entry w^j * r (r real) of a Clifford matrix.

    The entry squared is i^j * r^2, which is real exactly when j is even.
    """
    for e in M.entries:
        if e != ZERO:
            return 1 if (e * e).c != 0 else 0
    raise ValueError("zero matrix")


def sign_flip_code(n: int) -> list[int]:
    """Sign patterns produced by conjugating with each Pauli generator."""
    gens = pauli_generators(n)
    return [sum((0 if p.commutes_with(g) else 1) << j for j, g in enumerate(gens))
            for p in gens]


def _reduce(v: int, basis: list[int]) -> int:
    for b in basis:
        top = b.bit_length() - 1
        if v >> top & 1:
            v ^= b
    return v


@lru_cache(maxsize=None)
def _echelon(n: int) -> tuple[int, ...]:
    basis: list[int] = []
    for v in sign_flip_code(n):
        v = _reduce(v, basis)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return tuple(basis)


def coset_key(t: ActionTable, phase_bit: int | None = None) -> int:
    """Canonical key of a table modulo Pauli (inner) sign flips.

    Layout: symplectic image, then the reduced sign residue (2n bits), then
    the optional omega-parity bit in the lowest position.
    """
    n = t.n
    residue = _reduce(t.signs(), list(_echelon(n)))
    key = (symplectic_of(t) << (2 * n)) | residue
    if phase_bit is not None:
        key = (key << 1) | (phase_bit & 1)
    return key


# -- order factorization ----------------------------------------------------------

@dataclass
class Factorization:
    order: int
    image_order: int
    kernel_order: int
    image: FiniteGroup
    kernel: FiniteGroup
    schreier_used: int

    def to_dict(self) -> dict:
        return {"order": self.order, "image_order": self.image_order,
                "kernel_order": self.kernel_order, "schreier_generators_used": self.schreier_used}


def kernel_bound(n: int) -> int:
    """|<w I> P_n| = 2^(2n+3): the kernel of C_n -> Sp(2n,2) lies in this group.

    An element acting trivially on Paulis by conjugation is a scalar times a
    Pauli matrix, and unit scalars with entries in Z[w, 1/2] are powers of w.
    """
    return 2 ** (2 * n + 3)


def symplectic_image(mats: list[GateMatrix], budget: int | None = None,
                     name: str = "sp") -> FiniteGroup:
    n = mats[0].n_qubits
    gens = [symplectic_of(action_table(m)) for m in mats]
    return closure(gens, SymplecticKind(n), budget=budget, name=name)


def order_via_factorization(mats: list[GateMatrix], budget: int | None = None,
                            name: str = "") -> Factorization:
    """|<mats>| = |symplectic image| * |kernel|, kernel from Schreier generators."""
    n = mats[0].n_qubits
    image = symplectic_image(mats, budget=budget, name=f"sp({name})")
    kind = MatrixKind(n)
    dgens = [kind.pack(m) for m in mats]
    bound = kernel_bound(n)
    transversal: dict[int, np.ndarray] = {0: kind.identity()}

    def t_of(i: int) -> np.ndarray:
        chain = []
        while i not in transversal:
            chain.append(i)
            i = int(image.parent[i])
        for c in reversed(chain):
            transversal[c] = kind.mul(transversal[int(image.parent[c])],
                                      dgens[int(image.letter[c])])
        return transversal[chain[0]] if chain else transversal[i]

    perms = [image.gen_perm(l) for l in range(len(dgens))]
    K = closure([kind.identity()], kind, name=f"ker({name})")
    kgens: list[np.ndarray] = []
    used = 0
    for i in range(image.order):
        if K.order == bound:
            break
        for l, s in enumerate(dgens):
            j = int(perms[l][i])
            if image.parent[j] == i and image.letter[j] == l:
                continue
            used += 1
            x = kind.mul(kind.mul(t_of(i), s), kind.inv(t_of(j)))
            if K.contains(x):
                continue
            kgens.append(x)
            K = closure(kgens, kind, name=f"ker({name})")
            if K.order == bound:
                break
    return Factorization(image.order * K.order, image.order, K.order, image, K, used)


def quotient_by_pauli(mats: list[GateMatrix], budget: int | None = None,
                      name: str = "") -> FiniteGroup:
    """<mats> / P_n enumerated as (symplectic, omega-parity) keys.

    (sp(U), parity(U)) is a complete invariant of the coset U P_n: two
    elements with equal symplectic image differ by w^k p, and the parity
    shifts by k while Pauli factors keep it.
    """
    n = mats[0].n_qubits
    mk = MatrixKind(n)
    packed = [mk.pack(m).astype(np.int64) for m in mats]
    gens = [(symplectic_of(action_table(m)) << 1) | omega_parity(m) for m in mats]
    kind = CliffordQuotientKind(n, dict(zip(gens, packed)))
    ident_row = mk.identity()[:1].astype(np.int8)
    frontier = np.array([kind.identity()], dtype=np.int64)
    f_rows = ident_row
    levels, rowlv, parents, letters = [frontier], [f_rows], [np.array([-1])], [np.array([-1])]
    visited = frontier.copy()
    front_ords = np.array([0])
    total = 1
    while frontier.size:
        cand, crow, cpar, clet = [], [], [], []
        for l, g in enumerate(gens):
            k, r = kind.step(frontier, f_rows, g)
            cand.append(k)
            crow.append(r)
            cpar.append(front_ords)
            clet.append(np.full(frontier.size, l))
        cand, crow = np.concatenate(cand), np.concatenate(crow)
        cpar, clet = np.concatenate(cpar), np.concatenate(clet)
        pos = np.minimum(np.searchsorted(visited, cand), visited.size - 1)
        fresh = visited[pos] != cand
        cand, crow, cpar, clet = cand[fresh], crow[fresh], cpar[fresh], clet[fresh]
        order = np.lexsort((clet, cpar, cand))
        first = np.ones(order.size, dtype=bool)
        first[1:] = cand[order][1:] != cand[order][:-1]
        pick = order[first]
        frontier, f_rows = cand[pick], crow[pick]
        levels.append(frontier)
        rowlv.append(f_rows)
        parents.append(cpar[pick])
        letters.append(clet[pick])
        front_ords = np.arange(total, total + frontier.size)
        total += frontier.size
        visited = np.union1d(visited, frontier)
        if budget is not None and total > budget:
            raise BudgetExceeded(name or "C/P", total, budget)
    elements = np.concatenate(levels)
    kind.attach(elements, np.concatenate(rowlv))
    return FiniteGroup(kind, elements, gens, np.concatenate(parents),
                       np.concatenate(letters), name=name or "C/P",
                       provenance={"generators": len(gens), "quotient": "Pauli"})
