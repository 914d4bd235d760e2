"""Coxeter matrices, finite type data and isomorphism certificates.

A certificate for type X on a group G is a tuple of involutions whose pairwise
product orders realise the Coxeter diagram of X, which generate G, and with
|G| equal to |W(X)|. Since W(X) surjects onto the generated group, equal
orders force the surjection to be an isomorphism.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .group import BudgetExceeded, FiniteGroup, subgroup
from .structure import conjugacy_classes


class NotInvolution(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        r = len(self.entries)
        for i in range(r):
            if len(self.entries[i]) != r or self.entries[i][i] != 1:
                raise ValueError("Coxeter matrix needs unit diagonal")
            for j in range(r):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if i != j and self.entries[i][j] < 2:
                    raise ValueError("off-diagonal entries must be >= 2")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    @classmethod
    def from_edges(cls, rank: int, edges: dict[tuple[int, int], int]) -> CoxeterMatrix:
        m = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
        for (i, j), v in edges.items():
            m[i][j] = m[j][i] = v
        return cls(tuple(tuple(r) for r in m))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class CoxeterTypeData:
    tag: str
    rank: int
    edges: dict = field(hash=False)
    order: int

    @property
    def matrix(self) -> CoxeterMatrix:
        return CoxeterMatrix.from_edges(self.rank, self.edges)


def _chain(n: int) -> dict:
    return {(i, i + 1): 3 for i in range(n - 1)}


def type_A(n: int) -> CoxeterTypeData:
    import math
    return CoxeterTypeData(f"A{n}", n, _chain(n), math.factorial(n + 1))


TYPES: dict[str, CoxeterTypeData] = {
    "A1": type_A(1),
    "A2": type_A(2),
    "A3": type_A(3),
    "A4": type_A(4),
    "A1xA1": CoxeterTypeData("A1xA1", 2, {}, 4),
    "D5": CoxeterTypeData("D5", 5, {(0, 1): 3, (1, 2): 3, (2, 3): 3, (2, 4): 3}, 1920),
    "E6": CoxeterTypeData("E6", 6, {(0, 1): 3, (1, 2): 3, (2, 3): 3, (3, 4): 3, (2, 5): 3},
                          51840),
    "E7": CoxeterTypeData("E7", 7, {(0, 1): 3, (1, 2): 3, (2, 3): 3, (3, 4): 3, (4, 5): 3,
                                    (2, 6): 3}, 2903040),
    "F4": CoxeterTypeData("F4", 4, {(0, 1): 3, (1, 2): 4, (2, 3): 3}, 1152),
}


def coxeter_matrix(G: FiniteGroup, gens) -> CoxeterMatrix:
    orders = G.element_orders()
    gens = [int(g) for g in gens]
    for g in gens:
        if orders[g] != 2:
            raise NotInvolution(f"element {g} has order {orders[g]}")
    r = len(gens)
    m = [[1] * r for _ in range(r)]
    for i, j in itertools.combinations(range(r), 2):
        p = int(G.mul_idx(np.array([gens[i]]), np.array([gens[j]]))[0])
        m[i][j] = m[j][i] = int(orders[p])
    return CoxeterMatrix(tuple(tuple(row) for row in m))


def match_type(m: CoxeterMatrix, t: CoxeterTypeData) -> bool:
    target = t.matrix
    r = m.rank
    if r != target.rank:
        return False
    if sorted(sorted(row) for row in m.entries) != sorted(sorted(row) for row in target.entries):
        return False
    for perm in itertools.permutations(range(r)):
        if all(m[perm[i], perm[j]] == target[i, j] for i in range(r) for j in range(r)):
            return True
    return False


@dataclass
class CoxeterCertificate:
    group: str
    type_tag: str
    generators: list[int]
    matrix: CoxeterMatrix
    generated_order: int
    generator_keys: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"group": self.group, "type": self.type_tag, "generators": self.generators,
                "generator_keys": self.generator_keys, "matrix": self.matrix.tolist(),
                "generated_order": self.generated_order}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _search_order(t: CoxeterTypeData) -> list[int]:
    """Diagram nodes in BFS order so each new node touches an earlier one."""
    adj = {i: set() for i in range(t.rank)}
    for i, j in t.edges:
        adj[i].add(j)
        adj[j].add(i)
    start = max(range(t.rank), key=lambda v: (len(adj[v]), -v))
    order, seen = [start], {start}
    while len(order) < t.rank:
        frontier = sorted({w for v in order for w in adj[v]} - seen)
        nxt = frontier[0] if frontier else min(set(range(t.rank)) - seen)
        order.append(nxt)
        seen.add(nxt)
    return order


def find_certificate(G: FiniteGroup, t: CoxeterTypeData, budget: int = 200_000):
    """Depth-first search for a certificate; returns None when exhausted."""
    if G.order != t.order:
        return None
    orders = G.element_orders()
    classes = conjugacy_classes(G)
    csize = np.bincount(classes)
    rank = G.key_rank()
    invs = np.nonzero(orders == 2)[0]
    invs = invs[np.lexsort((rank[invs], csize[classes[invs]]))]
    target = t.matrix
    node_order = _search_order(t)
    first_reps, seen = [], set()
    for x in invs:
        if classes[x] not in seen:
            seen.add(classes[x])
            first_reps.append(int(x))
    visited = 0

    def candidates(assigned: list[int]) -> np.ndarray:
        k = len(assigned)
        node = node_order[k]
        ok = np.ones(invs.size, dtype=bool)
        for j, x in enumerate(assigned):
            want = target[node_order[j], node]
            prods = G.mul_idx(np.full(invs.size, x), invs)
            ok &= orders[prods] == want
        return invs[ok]

    def dfs(assigned: list[int]):
        nonlocal visited
        if len(assigned) == t.rank:
            S = subgroup(G, assigned)
            return assigned if S.order == G.order else None
        pool = first_reps if not assigned else candidates(assigned)
        for y in pool:
            visited += 1
            if visited > budget:
                raise BudgetExceeded(f"{t.tag} certificate search", visited, budget)
            if assigned and int(y) in assigned:
                continue
            if not assigned and orders[y] != 2:
                continue
            res = dfs(assigned + [int(y)])
            if res is not None:
                return res
        return None

    found = dfs([])
    if found is None:
        return None
    gens = [0] * t.rank
    for pos, node in enumerate(node_order):
        gens[node] = found[pos]
    return CoxeterCertificate(group=G.name, type_tag=t.tag, generators=gens,
                              matrix=coxeter_matrix(G, gens), generated_order=G.order,
                              generator_keys=[G.key(g).hex() for g in gens])


def validate_certificate(G: FiniteGroup, cert: CoxeterCertificate) -> bool:
    """Independent re-check: involutions, diagram, generation, order."""
    t = TYPES[cert.type_tag]
    orders = G.element_orders()
    if any(orders[g] != 2 for g in cert.generators):
        return False
    try:
        m = coxeter_matrix(G, cert.generators)
    except ValueError:      # repeated generators give a product of order 1
        return False
    if m != t.matrix:
        return False
    return subgroup(G, cert.generators).order == G.order == t.order
