"""The 27 lines on a smooth cubic surface in the classical Schläfli labelling.

Lines are a1..a6, b1..b6 and c_ij (i < j). Incidence: a_i meets b_j iff i != j,
a_i and b_i meet c_jk iff i in {j, k}, c_ij meets c_kl iff the pairs are
disjoint; lines within the a family (or within the b family) are skew.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cache import load_or_build
from .coxeter import TYPES, CoxeterCertificate, find_certificate
from .group import FiniteGroup, closure, subgroup_from_members
from .kinds import PermKind
from .structure import (SplitVerdict, derived_subgroup, fingerprint, normal_subgroups,
                        split_check)

PAIRS = list(itertools.combinations(range(1, 7), 2))
LABELS = ([f"a{i}" for i in range(1, 7)] + [f"b{i}" for i in range(1, 7)]
          + [f"c{i}{j}" for i, j in PAIRS])
INDEX = {lab: k for k, lab in enumerate(LABELS)}


def _parse(label: str):
    if label[0] in "ab":
        return label[0], {int(label[1])}
    return "c", {int(label[1]), int(label[2])}


def meets(u: str, v: str) -> bool:
    if u == v:
        return False
    (fu, su), (fv, sv) = _parse(u), _parse(v)
    if fu == fv and fu in "ab":
        return False
    if {fu, fv} == {"a", "b"}:
        return su != sv
    if fu == "c" and fv == "c":
        return not (su & sv)
    # one of a/b against a c line
    single, pair = (su, sv) if fu != "c" else (sv, su)
    return single <= pair


@dataclass
class IncidenceGraph:
    adjacency: np.ndarray     # 27 x 27 boolean

    @property
    def degrees(self) -> list[int]:
        return self.adjacency.sum(axis=1).tolist()

    def meeting_pairs(self) -> int:
        return int(self.adjacency.sum()) // 2

    def skew_pairs(self) -> int:
        n = len(LABELS)
        return n * (n - 1) // 2 - self.meeting_pairs()

    def neighbours(self, v: int) -> list[int]:
        return np.nonzero(self.adjacency[v])[0].tolist()

    def to_json(self) -> str:
        return json.dumps({"vertices": LABELS,
                           "adjacency": {LABELS[v]: [LABELS[u] for u in self.neighbours(v)]
                                         for v in range(len(LABELS))}})

    def to_dot(self) -> str:
        lines = ["graph lines27 {"]
        for u, v in zip(*np.nonzero(np.triu(self.adjacency))):
            lines.append(f"  {LABELS[u]} -- {LABELS[v]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_incidence() -> IncidenceGraph:
    n = len(LABELS)
    adj = np.zeros((n, n), dtype=bool)
    for u, v in itertools.combinations(range(n), 2):
        adj[u, v] = adj[v, u] = meets(LABELS[u], LABELS[v])
    return IncidenceGraph(adj)


def tritangent_planes(graph: IncidenceGraph | None = None) -> list[frozenset[int]]:
    adj = (graph or build_incidence()).adjacency
    return [frozenset(t) for t in itertools.combinations(range(len(LABELS)), 3)
            if adj[t[0], t[1]] and adj[t[0], t[2]] and adj[t[1], t[2]]]


def _skew_sixes(adj: np.ndarray) -> list[tuple[int, ...]]:
    skew = ~adj
    np.fill_diagonal(skew, False)
    out = []

    def grow(clique: list[int], cand: list[int]):
        if len(clique) == 6:
            out.append(tuple(clique))
            return
        for i, v in enumerate(cand):
            grow(clique + [v], [u for u in cand[i + 1:] if skew[v, u]])

    grow([], list(range(len(LABELS))))
    return out


def double_sixes(graph: IncidenceGraph | None = None) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Unordered pairs {L, M} with M_i the line skew to L_i meeting the other five."""
    adj = (graph or build_incidence()).adjacency
    seen, out = set(), []
    for six in _skew_sixes(adj):
        partner = []
        for i, li in enumerate(six):
            others = [l for j, l in enumerate(six) if j != i]
            cand = [m for m in range(len(LABELS)) if m not in six and not adj[m, li]
                    and all(adj[m, l] for l in others)]
            if len(cand) != 1:
                break
            partner.append(cand[0])
        else:
            M = frozenset(partner)
            if len(M) == 6 and not any(adj[u, v] for u, v in itertools.combinations(M, 2)):
                key = frozenset({frozenset(six), M})
                if key not in seen:
                    seen.add(key)
                    out.append((frozenset(six), M))
    return out


def _relabel(perm_of_indices) -> list[int]:
    """Permutation of lines induced by a permutation of {1..6}."""
    p = {i + 1: perm_of_indices[i] + 1 for i in range(6)}
    img = []
    for lab in LABELS:
        fam, s = _parse(lab)
        if fam in "ab":
            img.append(INDEX[f"{fam}{p[min(s)]}"])
        else:
            i, j = sorted(p[x] for x in s)
            img.append(INDEX[f"c{i}{j}"])
    return img


def _swap_ab() -> list[int]:
    img = []
    for lab in LABELS:
        img.append(INDEX[{"a": "b", "b": "a"}.get(lab[0], lab[0]) + lab[1:]])
    return img


def is_automorphism(perm, adj: np.ndarray) -> bool:
    p = np.asarray(perm)
    return bool((adj[np.ix_(p, p)] == adj).all())


def automorphism_search(adj: np.ndarray, limit: int | None = None, skip=None):
    """Backtracking over vertex images with adjacency consistency pruning.

    Yields automorphisms in lexicographic order of image lists; ``skip`` is an
    optional predicate used to step over known ones.
    """
    n = adj.shape[0]
    deg = adj.sum(axis=1)
    found = 0
    img = [-1] * n
    used = [False] * n

    def extend(v: int):
        nonlocal found
        if limit is not None and found >= limit:
            return
        if v == n:
            if skip is None or not skip(img):
                found += 1
                yield list(img)
            return
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            if any(adj[v, u] != adj[w, img[u]] for u in range(v)):
                continue
            img[v], used[w] = w, True
            yield from extend(v + 1)
            img[v], used[w] = -1, False
            if limit is not None and found >= limit:
                return

    yield from extend(0)


def count_automorphisms(adj: np.ndarray) -> int:
    return sum(1 for _ in automorphism_search(adj))


@dataclass
class StabilizerResult:
    name: str
    group: FiniteGroup
    orbit_size: int
    certificate: CoxeterCertificate | None = None
    split: SplitVerdict | None = None
    normal_order: int | None = None


class CubicSurface:
    """Lazily computed 27-line model with its automorphism group."""

    def __init__(self) -> None:
        self.graph = build_incidence()
        self.kind = PermKind(len(LABELS))

    @cached_property
    def tritangents(self):
        return tritangent_planes(self.graph)

    @cached_property
    def double_sixes(self):
        return double_sixes(self.graph)

    @cached_property
    def base_generators(self) -> list[list[int]]:
        """Index relabelling S6 (transposition and 6-cycle) and the a/b swap."""
        return [_relabel([1, 0, 2, 3, 4, 5]), _relabel([1, 2, 3, 4, 5, 0]), _swap_ab()]

    @cached_property
    def extra_generator(self) -> list[int]:
        base = closure([self.kind.make(g) for g in self.base_generators], self.kind)
        known = set(base.keys())
        skip = lambda img: self.kind.key(self.kind.make(img)) in known  # noqa: E731
        return next(automorphism_search(self.graph.adjacency, limit=1, skip=skip))

    @cached_property
    def aut(self) -> FiniteGroup:
        gens = self.base_generators + [self.extra_generator]
        for g in gens:
            if not is_automorphism(g, self.graph.adjacency):
                raise ArithmeticError("generator does not preserve incidence")
            return load_or_build("Aut27", lambda: closure([self.kind.make(g) for g in gens],
                                                      self.kind, name="Aut27"))

    @cached_property
    def perm_array(self) -> np.ndarray:
        return np.stack([np.asarray(e) for e in self.aut.elements]).astype(np.int64)

    def setwise_stabilizer(self, points, name: str) -> FiniteGroup:
        pts = sorted(points)
        mask = np.zeros(len(LABELS), dtype=bool)
        mask[pts] = True
        ok = mask[self.perm_array[:, pts]].all(axis=1)
        return subgroup_from_members(self.aut, np.nonzero(ok)[0], name=name)

    def orbit_size(self, points) -> int:
        imgs = {frozenset(row.tolist()) for row in self.perm_array[:, sorted(points)]}
        return len(imgs)

    def line_stabilizer(self, line: str = "a1") -> StabilizerResult:
        S = self.setwise_stabilizer([INDEX[line]], f"Stab({line})")
        return StabilizerResult(S.name, S, self.orbit_size([INDEX[line]]),
                                certificate=find_certificate(S, TYPES["D5"]))

    def tritangent_stabilizer(self, plane=("a1", "b2", "c12")) -> StabilizerResult:
        pts = [INDEX[x] for x in plane]
        S = self.setwise_stabilizer(pts, "Stab(" + ",".join(plane) + ")")
        return StabilizerResult(S.name, S, self.orbit_size(pts),
                                certificate=find_certificate(S, TYPES["F4"]))

    def double_six_stabilizer(self) -> StabilizerResult:
        """Stabilizer of the canonical double six {a*}, {b*} as an unordered pair."""
        L = [INDEX[f"a{i}"] for i in range(1, 7)]
        M = [INDEX[f"b{i}"] for i in range(1, 7)]
        P = self.perm_array
        lm = np.zeros(len(LABELS), dtype=bool)
        lm[L] = True
        mm = np.zeros(len(LABELS), dtype=bool)
        mm[M] = True
        keep = ((lm[P[:, L]].all(axis=1) & mm[P[:, M]].all(axis=1))
                | (mm[P[:, L]].all(axis=1) & lm[P[:, M]].all(axis=1)))
        S = subgroup_from_members(self.aut, np.nonzero(keep)[0], name="Stab(double six)")
        orbit = {frozenset({frozenset(r[L].tolist()), frozenset(r[M].tolist())}) for r in P}
        res = StabilizerResult(S.name, S, len(orbit))
        a6 = [N for N in normal_subgroups(S, order_filter=360)]
        if a6:
            res.normal_order = a6[0].order
            res.split = split_check(S, a6[0])
        return res

    def e6_certificate(self) -> CoxeterCertificate | None:
        return find_certificate(self.aut, TYPES["E6"])

    def derived_aut(self) -> FiniteGroup:
        return derived_subgroup(self.aut, name="Aut27'")

    def counts(self) -> dict:
        return {"lines": len(LABELS), "meeting_pairs": self.graph.meeting_pairs(),
                "skew_pairs": self.graph.skew_pairs(), "tritangent_planes": len(self.tritangents),
                "double_sixes": len(self.double_sixes),
                "regular_degree": sorted(set(self.graph.degrees))}

    def fingerprint_aut(self):
        return fingerprint(self.aut)
