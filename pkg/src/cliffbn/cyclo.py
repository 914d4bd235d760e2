"""Exact arithmetic in Z[w, 1/2] with w = exp(i*pi/4), and gate matrices over it.

Values are stored as ``(a + b*w + c*w^2 + d*w^3) / 2^k``. Since sqrt(2) = w - w^3,
every gate entry used here (1/sqrt(2), i, ...) has a single normal form.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import reduce

import numpy as np


class DimensionMismatch(ValueError):
    pass


class BadPosition(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class CycloNum:
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0
    k: int = 0

    def __post_init__(self) -> None:
        a, b, c, d, k = self.a, self.b, self.c, self.d, self.k
        if k < 0:
            raise ValueError("negative denominator exponent")
        while k > 0 and not (a | b | c | d) & 1:
            a, b, c, d, k = a >> 1, b >> 1, c >> 1, d >> 1, k - 1
        if (a | b | c | d) == 0:
            k = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "k", k)

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def from_int(cls, n: int) -> CycloNum:
        return cls(n)

    @classmethod
    def omega(cls, j: int = 1) -> CycloNum:
        """w^j for any integer j."""
        j %= 8
        coeffs = [0, 0, 0, 0]
        coeffs[j % 4] = -1 if j >= 4 else 1
        return cls(*coeffs)

    def _scaled(self, k: int) -> tuple[int, int, int, int]:
        s = k - self.k
        return (self.a << s, self.b << s, self.c << s, self.d << s)

    def __add__(self, other: CycloNum) -> CycloNum:
        if isinstance(other, int):
            other = CycloNum(other)
        k = max(self.k, other.k)
        x, y = self._scaled(k), other._scaled(k)
        return CycloNum(*(p + q for p, q in zip(x, y)), k)

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum(-self.a, -self.b, -self.c, -self.d, self.k)

    def __sub__(self, other: CycloNum) -> CycloNum:
        return self + (-other)

    def __mul__(self, other: CycloNum) -> CycloNum:
        if isinstance(other, int):
            other = CycloNum(other)
        x, y = self.coeffs, other.coeffs
        out = [0, 0, 0, 0]
        for p in range(4):
            if not x[p]:
                continue
            for q in range(4):
                m = p + q
                if m >= 4:
                    out[m - 4] -= x[p] * y[q]
                else:
                    out[m] += x[p] * y[q]
        return CycloNum(*out, self.k + other.k)

    __rmul__ = __mul__

    def conj(self) -> CycloNum:
        # conj(w) = w^7 = -w^3, conj(w^2) = -w^2, conj(w^3) = -w
        return CycloNum(self.a, -self.d, -self.c, -self.b, self.k)

    def is_zero(self) -> bool:
        return (self.a | self.b | self.c | self.d) == 0

    def __complex__(self) -> complex:
        w = complex(np.exp(1j * np.pi / 4))
        return (self.a + self.b * w + self.c * w**2 + self.d * w**3) / 2**self.k

    def __repr__(self) -> str:
        return f"CycloNum({self.a}, {self.b}, {self.c}, {self.d}, k={self.k})"


ZERO = CycloNum()
ONE = CycloNum(1)
OMEGA = CycloNum.omega(1)
I_UNIT = CycloNum.omega(2)
SQRT2 = CycloNum(0, 1, 0, -1)
INV_SQRT2 = CycloNum(0, 1, 0, -1, 1)


def cyclo_arith(x: CycloNum, y: CycloNum, op: str) -> CycloNum:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise ValueError(f"unknown op {op!r}")


def cyclo_conj(x: CycloNum) -> CycloNum:
    return x.conj()


# -- varint encoding -------------------------------------------------------

def _zigzag(n: int) -> int:
    return (n << 1) if n >= 0 else ((-n) << 1) - 1


def _unzigzag(u: int) -> int:
    return (u >> 1) if not u & 1 else -((u + 1) >> 1)


def encode_varint(n: int) -> bytes:
    u = _zigzag(n)
    out = bytearray()
    while True:
        byte = u & 0x7F
        u >>= 7
        if u:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def decode_varints(data: bytes) -> list[int]:
    values, u, shift = [], 0, 0
    for byte in data:
        u |= (byte & 0x7F) << shift
        if byte & 0x80:
            shift += 7
        else:
            values.append(_unzigzag(u))
            u, shift = 0, 0
    if shift:
        raise ValueError("truncated varint stream")
    return values


# -- gate matrices -----------------------------------------------------------

@dataclass(frozen=True, slots=True)
class GateMatrix:
    n_qubits: int
    entries: tuple[CycloNum, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.dim * self.dim:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for dimension {self.dim}")

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    @classmethod
    def from_rows(cls, rows, scale: CycloNum = ONE) -> GateMatrix:
        dim = len(rows)
        n = dim.bit_length() - 1
        if 1 << n != dim or any(len(r) != dim for r in rows):
            raise DimensionMismatch(f"not a 2^n square matrix: {dim}")
        entries = []
        for r in rows:
            for x in r:
                x = x if isinstance(x, CycloNum) else CycloNum(x)
                entries.append(x * scale)
        return cls(n, tuple(entries))

    @classmethod
    def identity(cls, n_qubits: int) -> GateMatrix:
        dim = 1 << n_qubits
        return cls(n_qubits, tuple(ONE if i == j else ZERO
                                   for i in range(dim) for j in range(dim)))

    def __getitem__(self, ij: tuple[int, int]) -> CycloNum:
        i, j = ij
        return self.entries[i * self.dim + j]

    def rows(self) -> list[list[CycloNum]]:
        d = self.dim
        return [list(self.entries[i * d:(i + 1) * d]) for i in range(d)]

    def __matmul__(self, other: GateMatrix) -> GateMatrix:
        if self.dim != other.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        d = self.dim
        out = []
        for i in range(d):
            for j in range(d):
                acc = ZERO
                for m in range(d):
                    x = self.entries[i * d + m]
                    if x.is_zero():
                        continue
                    y = other.entries[m * d + j]
                    if not y.is_zero():
                        acc = acc + x * y
                out.append(acc)
        return GateMatrix(self.n_qubits, tuple(out))

    def scale(self, s: CycloNum) -> GateMatrix:
        return GateMatrix(self.n_qubits, tuple(x * s for x in self.entries))

    def dagger(self) -> GateMatrix:
        d = self.dim
        return GateMatrix(self.n_qubits, tuple(
            self.entries[j * d + i].conj() for i in range(d) for j in range(d)))

    def kron(self, other: GateMatrix) -> GateMatrix:
        d1, d2 = self.dim, other.dim
        out = []
        for i1, i2 in itertools.product(range(d1), range(d2)):
            for j1, j2 in itertools.product(range(d1), range(d2)):
                out.append(self.entries[i1 * d1 + j1] * other.entries[i2 * d2 + j2])
        return GateMatrix(self.n_qubits + other.n_qubits, tuple(out))

    def is_identity(self) -> bool:
        return self == GateMatrix.identity(self.n_qubits)

    def is_unitary(self) -> bool:
        return (self @ self.dagger()).is_identity()

    def canonical_key(self, projective: bool = False) -> bytes:
        if not projective:
            return self._encode()
        return min(self.scale(CycloNum.omega(j) * sign)._encode()
                   for j in range(8) for sign in (1, -1))

    def _encode(self) -> bytes:
        out = bytearray(encode_varint(self.dim))
        for x in self.entries:
            for v in (x.a, x.b, x.c, x.d, x.k):
                out += encode_varint(v)
        return bytes(out)

    @classmethod
    def decode(cls, data: bytes) -> GateMatrix:
        values = decode_varints(data)
        dim, rest = values[0], values[1:]
        if len(rest) != 5 * dim * dim:
            raise ValueError("key length does not match dimension")
        entries = tuple(CycloNum(*rest[i:i + 5]) for i in range(0, len(rest), 5))
        return cls(dim.bit_length() - 1, entries)

    def to_json(self) -> str:
        return json.dumps({"dim": self.dim,
                           "entries": [[x.a, x.b, x.c, x.d, x.k] for x in self.entries]})

    @classmethod
    def from_json(cls, text: str) -> GateMatrix:
        obj = json.loads(text)
        dim = obj["dim"]
        entries = tuple(CycloNum(*e) for e in obj["entries"])
        return cls(dim.bit_length() - 1, entries)

    def to_complex(self) -> np.ndarray:
        return np.array([complex(x) for x in self.entries]).reshape(self.dim, self.dim)


def mat_ops(A: GateMatrix, B: GateMatrix | None, op: str):
    if op == "mul":
        return A @ B
    if op == "dagger":
        return A.dagger()
    if op == "kron":
        return A.kron(B)
    if op == "eq":
        return A == B
    raise ValueError(f"unknown op {op!r}")


def is_unitary(A: GateMatrix) -> bool:
    return A.is_unitary()


def canonical_key(A: GateMatrix, projective: bool = False) -> bytes:
    return A.canonical_key(projective)


# -- the gate library --------------------------------------------------------

_i = I_UNIT
_BASE_GATES: dict[str, GateMatrix] = {
    "I": GateMatrix.from_rows([[1, 0], [0, 1]]),
    "X": GateMatrix.from_rows([[0, 1], [1, 0]]),
    "Y": GateMatrix.from_rows([[0, -_i], [_i, 0]]),
    "Z": GateMatrix.from_rows([[1, 0], [0, -1]]),
    "H": GateMatrix.from_rows([[1, 1], [1, -1]], scale=INV_SQRT2),
    "P": GateMatrix.from_rows([[1, 0], [0, _i]]),
    "CZ": GateMatrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0],
                                [0, 0, 1, 0], [0, 0, 0, -1]]),
    "T": GateMatrix.from_rows([[1, 0, 0, 0], [0, 0, 1, 0],
                               [0, 1, 0, 0], [0, 0, 0, 1]]),
    "R": GateMatrix.from_rows([[1, 0, 0, 1], [0, 1, -1, 0],
                               [0, 1, 1, 0], [-1, 0, 0, 1]], scale=INV_SQRT2),
}
GATE_NAMES = tuple(_BASE_GATES)


def kron_all(mats) -> GateMatrix:
    return reduce(GateMatrix.kron, mats)


def gate(name: str, n_qubits: int, positions=None) -> GateMatrix:
    """Embed a named gate on ``positions`` of an n-qubit register.

    Qubit 0 is the leftmost tensor factor (most significant basis bit).
    """
    try:
        base = _BASE_GATES[name]
    except KeyError:
        raise ValueError(f"unknown gate {name!r}") from None
    arity = base.n_qubits
    if positions is None:
        positions = list(range(arity))
    positions = list(positions)
    if (len(positions) != arity or len(set(positions)) != arity
            or any(not 0 <= p < n_qubits for p in positions)):
        raise BadPosition(f"{name} needs {arity} distinct positions in "
                          f"range({n_qubits}), got {positions}")
    dim = 1 << n_qubits
    shifts = [n_qubits - 1 - p for p in positions]
    others = ~sum(1 << s for s in shifts)

    def local(x: int) -> int:
        return sum(((x >> s) & 1) << (arity - 1 - t) for t, s in enumerate(shifts))

    entries = []
    for r in range(dim):
        for c in range(dim):
            if (r & others) != (c & others):
                entries.append(ZERO)
            else:
                entries.append(base[local(r), local(c)])
    return GateMatrix(n_qubits, tuple(entries))


def local_product(names) -> GateMatrix:
    """Tensor product of single-qubit gates, e.g. ``["H", "H", "P"]``."""
    return kron_all([_BASE_GATES[nm] for nm in names])


# -- packed fixed-point form used by the closure engine ---------------------
#
# A matrix M over Z[w,1/2] is stored as the int array 2^s * M with shape
# (d, d, 4); s is fixed per qubit count so the form is canonical.

def packed_scale(n_qubits: int) -> int:
    return max(n_qubits, 1)


def pack(A: GateMatrix, s: int | None = None) -> np.ndarray:
    s = packed_scale(A.n_qubits) if s is None else s
    out = np.zeros((A.dim, A.dim, 4), dtype=np.int64)
    for idx, x in enumerate(A.entries):
        if x.k > s:
            raise ValueError(f"entry {x} needs denominator 2^{x.k} > 2^{s}")
        out[idx // A.dim, idx % A.dim] = [v << (s - x.k) for v in x.coeffs]
    return out


def unpack(arr: np.ndarray, s: int) -> GateMatrix:
    dim = arr.shape[0]
    entries = tuple(CycloNum(*(int(v) for v in arr[i, j]), s)
                    for i in range(dim) for j in range(dim))
    return GateMatrix(dim.bit_length() - 1, entries)


def _unit_table(y: np.ndarray) -> np.ndarray:
    """(..., 4) coefficients -> (..., 4, 4) with [p, m] = coeff of w^m in w^p * y."""
    out = np.zeros(y.shape + (4,), dtype=y.dtype)
    for p in range(4):
        for q in range(4):
            m = p + q
            if m >= 4:
                out[..., p, m - 4] -= y[..., q]
            else:
                out[..., p, m] += y[..., q]
    return out


def regular_form(B: np.ndarray) -> np.ndarray:
    """(..., d, d, 4) -> (..., 4d, 4d) with right multiplication as a matmul."""
    d = B.shape[-2]
    t = _unit_table(B)                      # (..., j, k, p, m)
    t = np.moveaxis(t, -2, -3)              # (..., j, p, k, m)
    return t.reshape(B.shape[:-3] + (4 * d, 4 * d))


def packed_matmul(A: np.ndarray, B: np.ndarray, s: int) -> np.ndarray:
    """Products of packed matrices; A is (F, d, d, 4) or (d, d, 4), B likewise.

    Float64 GEMM is exact here: entries stay far below 2^53.
    """
    d = A.shape[-2]
    Breg = regular_form(B).astype(np.float64)
    Af = A.reshape(A.shape[:-3] + (d, 4 * d)).astype(np.float64)
    C = np.rint(Af @ Breg).astype(np.int64)
    mask = (1 << s) - 1
    if np.any(C & mask):
        raise ArithmeticError("product left the fixed-point lattice; raise the scale")
    return (C >> s).reshape(C.shape[:-1] + (d, 4))


def packed_dagger(A: np.ndarray) -> np.ndarray:
    t = np.swapaxes(A, -2, -3)
    out = np.empty_like(t)
    out[..., 0] = t[..., 0]
    out[..., 1] = -t[..., 3]
    out[..., 2] = -t[..., 2]
    out[..., 3] = -t[..., 1]
    return out


def packed_times_omega(A: np.ndarray, j: int) -> np.ndarray:
    out = A
    for _ in range(j % 8):
        out = np.stack([-out[..., 3], out[..., 0], out[..., 1], out[..., 2]], axis=-1)
    return out


def packed_rowmul(rows: np.ndarray, B: np.ndarray, s: int) -> np.ndarray:
    """Row vectors (F, d, 4) times a packed matrix (d, d, 4)."""
    d = rows.shape[-2]
    C = np.rint(rows.reshape(rows.shape[:-2] + (4 * d,)).astype(np.float64)
                @ regular_form(B).astype(np.float64)).astype(np.int64)
    if np.any(C & ((1 << s) - 1)):
        raise ArithmeticError("product left the fixed-point lattice; raise the scale")
    return (C >> s).reshape(C.shape[:-1] + (d, 4))


def packed_omega_parity(rows: np.ndarray) -> np.ndarray:
    """Parity of j for the first nonzero entry w^j * r of each packed row.

    The square of a + b w + c w^2 + d w^3 has w^2 coefficient 2ac + b^2 - d^2,
    which vanishes exactly when the square is real, i.e. when j is even.
    """
    r = rows.astype(np.int64)
    nz = (r != 0).any(axis=-1)
    first = np.argmax(nz, axis=-1)
    e = np.take_along_axis(r, first[..., None, None], axis=-2)[..., 0, :]
    a, b, c, d = e[..., 0], e[..., 1], e[..., 2], e[..., 3]
    return ((2 * a * c + b * b - d * d) != 0).astype(np.int64)
