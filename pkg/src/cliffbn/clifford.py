"""Named gate groups: Pauli, Clifford, local Clifford and Bell groups for 1-3 qubits."""
from __future__ import annotations

from functools import lru_cache

from .cache import load_or_build
from .cyclo import GateMatrix, gate, local_product
from .group import FiniteGroup, closure, subgroup
from .kinds import MatrixKind


def _words(n: int, specs) -> list[GateMatrix]:
    out = []
    for spec in specs:
        m = GateMatrix.identity(n)
        for name, pos in spec:
            m = m @ gate(name, n, pos)
        out.append(m)
    return out


# generating sets, as products of embedded gates
GENERATORS: dict[str, tuple[int, list]] = {
    "C1": (1, [[("H", [0])], [("P", [0])]]),
    "P1": (1, [[("X", [0])], [("Y", [0])], [("Z", [0])]]),
    # <C1 (x) C1>
    "C2L": (2, [[("H", [0])], [("H", [1])], [("P", [0])], [("P", [1])]]),
    # <H(x)H, H(x)P, T>
    "C2L_swap": (2, [[("H", [0]), ("H", [1])], [("H", [0]), ("P", [1])], [("T", [0, 1])]]),
    "B2": (2, [[("H", [0]), ("H", [1])], [("H", [0]), ("P", [1])], [("R", [0, 1])]]),
    "C2": (2, [[("H", [0]), ("H", [1])], [("H", [0]), ("P", [1])], [("CZ", [0, 1])]]),
    # <C1 (x) C1, CZ>
    "C2_local_cz": (2, [[("H", [0])], [("H", [1])], [("P", [0])], [("P", [1])],
                        [("CZ", [0, 1])]]),
    "P2": (2, [[("X", [0])], [("Z", [0])], [("X", [1])], [("Z", [1])], [("Y", [0])]]),
    "C3": (3, [[("H", [0]), ("H", [1]), ("P", [2])], [("H", [0]), ("CZ", [1, 2])],
               [("CZ", [0, 1]), ("H", [2])]]),
    "B3": (3, [[("H", [0]), ("H", [1]), ("P", [2])], [("H", [0]), ("R", [1, 2])],
               [("R", [0, 1]), ("H", [2])]]),
    "C3L": (3, [[("H", [q])] for q in range(3)] + [[("P", [q])] for q in range(3)]),
}


def generators(name: str) -> list[GateMatrix]:
    n, specs = GENERATORS[name]
    return _words(n, specs)


def n_qubits(name: str) -> int:
    return GENERATORS[name][0]


def matrix_group(name: str, projective: bool = False, budget: int | None = None) -> FiniteGroup:
    n = n_qubits(name)
    kind = MatrixKind(n, projective)
    return closure([kind.pack(g) for g in generators(name)], kind, budget=budget,
                   name=name + ("~" if projective else ""),
                   provenance={"generators": name, "projective": projective})


def subgroup_of(G: FiniteGroup, name: str) -> FiniteGroup:
    """Named gate group realised inside an already enumerated group G."""
    kind = G.kind
    ords = [G.locate_one(kind.pack(g)) for g in generators(name)]
    if min(ords) < 0:
        raise ValueError(f"{name} generators are not all in {G.name}")
    return subgroup(G, ords, name=name)


def element_of(G: FiniteGroup, m: GateMatrix) -> int:
    return G.locate_one(G.root.kind.pack(m))


def trt() -> GateMatrix:
    """The conjugated match gate T R T."""
    T, R = gate("T", 2), gate("R", 2)
    return T @ R @ T


def yang_baxter_holds() -> bool:
    R, I = gate("R", 2), gate("I", 1)
    a, b = R.kron(I), I.kron(R)
    return a @ b @ a == b @ a @ b


@lru_cache(maxsize=None)
def two_qubit_groups() -> dict[str, FiniteGroup]:
    """C2 enumerated by matrices, with C2L, B2 and the swap-form local group inside it."""
    C2 = load_or_build("C2", lambda: matrix_group("C2"))
    return {
        "C2": C2,
        "C2L": subgroup_of(C2, "C2L"),
        "B2": subgroup_of(C2, "B2"),
        "C2L_swap": subgroup_of(C2, "C2L_swap"),
        "C2_local_cz": subgroup_of(C2, "C2_local_cz"),
        "P2": subgroup_of(C2, "P2"),
    }


__all__ = ["GENERATORS", "generators", "matrix_group", "subgroup_of", "element_of",
           "trt", "yang_baxter_holds", "two_qubit_groups", "local_product"]
