"""Element kinds: the (identity, mul, inv, key) contract the group engine runs on.

Two storage styles exist. "bytes" kinds keep Python objects and hash their
byte keys; "array" kinds keep elements in a 1-D integer array and supply an
order-preserving integer surrogate for the key so closure can stay in numpy.
"""
from __future__ import annotations

import numpy as np

from . import cyclo


class ElementKind:
    kind_id = 0
    name = "abstract"
    array_based = False

    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def key(self, a) -> bytes:
        raise NotImplementedError

    def from_key(self, key: bytes):
        raise NotImplementedError

    def mul_batch(self, items, g) -> list:
        return [self.mul(a, g) for a in items]

    def keys_batch(self, items) -> list[bytes]:
        return [self.key(a) for a in items]

    def power(self, a, e: int):
        out = self.identity()
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def order(self, a, limit: int = 10_000) -> int:
        ident = self.key(self.identity())
        x = a
        for k in range(1, limit + 1):
            if self.key(x) == ident:
                return k
            x = self.mul(x, a)
        raise ArithmeticError("element order exceeds limit")


class PermKind(ElementKind):
    """Permutations of range(degree) as image arrays; ``a*b`` applies a first."""

    kind_id = 1

    def __init__(self, degree: int) -> None:
        self.degree = degree
        self.dtype = np.uint8 if degree <= 256 else np.uint16
        self.name = f"perm{degree}"

    def make(self, images) -> np.ndarray:
        arr = np.asarray(images, dtype=self.dtype)
        if sorted(arr.tolist()) != list(range(self.degree)):
            raise ValueError("not a permutation")
        return arr

    def from_cycles(self, *cycles) -> np.ndarray:
        img = list(range(self.degree))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                img[x] = cyc[(i + 1) % len(cyc)]
        return self.make(img)

    def identity(self):
        return np.arange(self.degree, dtype=self.dtype)

    def mul(self, a, b):
        return b[a]

    def inv(self, a):
        out = np.empty_like(a)
        out[a] = np.arange(self.degree, dtype=self.dtype)
        return out

    def key(self, a) -> bytes:
        return a.tobytes()

    def from_key(self, key: bytes):
        return np.frombuffer(key, dtype=self.dtype).copy()

    def mul_batch(self, items, g):
        if not len(items):
            return []
        stacked = np.stack(items)
        return list(g[stacked])

    def order(self, a, limit: int = 10_000) -> int:
        seen = np.zeros(self.degree, dtype=bool)
        out = 1
        for i in range(self.degree):
            if seen[i]:
                continue
            n, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = int(a[j])
                n += 1
            out = np.lcm(out, n)
        return int(out)


class MatrixKind(ElementKind):
    """Gate matrices in packed fixed-point form (int8 array (d, d, 4)).

    With ``projective=True`` each element is the unit multiple w^j * M with the
    least key, so keys are equal exactly when matrices differ by a unit scalar.
    """

    kind_id = 2

    def __init__(self, n_qubits: int, projective: bool = False) -> None:
        self.n_qubits = n_qubits
        self.dim = 1 << n_qubits
        self.s = cyclo.packed_scale(n_qubits)
        self.projective = projective
        self.name = f"{'proj' if projective else ''}matrix{n_qubits}"
        if projective:
            self.kind_id = 3

    def pack(self, gm: cyclo.GateMatrix) -> np.ndarray:
        if gm.n_qubits != self.n_qubits:
            raise cyclo.DimensionMismatch(f"{gm.n_qubits} qubits, expected {self.n_qubits}")
        return self._canon(cyclo.pack(gm, self.s).astype(np.int8))

    def unpack(self, a) -> cyclo.GateMatrix:
        return cyclo.unpack(np.asarray(a, dtype=np.int64), self.s)

    def _canon(self, a: np.ndarray) -> np.ndarray:
        if not self.projective:
            return a
        best, best_key = a, a.tobytes()
        for j in range(1, 8):
            cand = cyclo.packed_times_omega(a, j)
            k = cand.tobytes()
            if k < best_key:
                best, best_key = cand, k
        return np.ascontiguousarray(best)

    def identity(self):
        return self.pack(cyclo.GateMatrix.identity(self.n_qubits))

    def mul(self, a, b):
        c = cyclo.packed_matmul(a.astype(np.int64), b.astype(np.int64), self.s)
        return self._canon(self._narrow(c))

    def inv(self, a):
        return self._canon(np.ascontiguousarray(cyclo.packed_dagger(a)))

    def key(self, a) -> bytes:
        return a.tobytes()

    def from_key(self, key: bytes):
        return np.frombuffer(key, dtype=np.int8).reshape(self.dim, self.dim, 4).copy()

    @staticmethod
    def _narrow(c: np.ndarray) -> np.ndarray:
        if c.size and (c.max() > 127 or c.min() < -128):
            raise OverflowError("packed coefficient outside int8")
        return c.astype(np.int8)

    def mul_batch(self, items, g):
        if not len(items):
            return []
        stacked = np.stack(items).astype(np.int64)
        prods = self._narrow(cyclo.packed_matmul(stacked, g.astype(np.int64), self.s))
        return [self._canon(p) for p in prods]


class _ArrayKind(ElementKind):
    """Elements live in integer arrays; ``sort_key`` is injective and key-ordered."""

    array_based = True
    dtype = np.int64

    def mul_array(self, arr: np.ndarray, g) -> np.ndarray:
        raise NotImplementedError

    def sort_key(self, arr: np.ndarray) -> np.ndarray:
        return np.asarray(arr, dtype=np.int64)

    def mul_batch(self, items, g):
        return list(self.mul_array(np.asarray(items, dtype=self.dtype), g))

    def key(self, a) -> bytes:
        return int(a).to_bytes(8, "big", signed=False)

    def from_key(self, key: bytes):
        return int.from_bytes(key, "big")


class IndexKind(_ArrayKind):
    """Elements of a subgroup, stored as ordinals of an enumerated ambient group."""

    kind_id = 100

    def __init__(self, ambient) -> None:
        self.ambient = ambient
        self.name = f"index[{ambient.name}]"

    def identity(self):
        return 0

    def mul(self, a, b):
        return int(self.ambient.mul_idx(np.array([a]), np.array([b]))[0])

    def inv(self, a):
        return int(self.ambient.inverses()[a])

    def key(self, a) -> bytes:
        return self.ambient.key(int(a))

    def mul_array(self, arr, g):
        return self.ambient.right_perm(int(g))[arr]

    def sort_key(self, arr):
        return self.ambient.key_rank()[arr]


class CosetKind(_ArrayKind):
    """Cosets gN of a normal subgroup, each stored as its least-key member."""

    kind_id = 101

    def __init__(self, ambient, labels: np.ndarray, reps: np.ndarray, name: str) -> None:
        self.ambient = ambient
        self.labels = labels
        self.reps = reps
        self.name = name

    def canon(self, ords):
        return self.reps[self.labels[ords]]

    def identity(self):
        return int(self.reps[self.labels[0]])

    def mul(self, a, b):
        return int(self.canon(self.ambient.mul_idx(np.array([a]), np.array([b])))[0])

    def inv(self, a):
        return int(self.canon(self.ambient.inverses()[a]))

    def key(self, a) -> bytes:
        return self.ambient.key(int(a))

    def mul_array(self, arr, g):
        return self.canon(self.ambient.right_perm(int(g))[arr])

    def sort_key(self, arr):
        return self.ambient.key_rank()[arr]
