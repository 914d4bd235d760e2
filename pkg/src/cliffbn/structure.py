"""Structural algorithms on enumerated groups, all run on ordinals."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import asdict, dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .group import (BudgetExceeded, FiniteGroup, NotASubgroup, NotNormal,
                    ambient_ords, closure, generator_ords, quotient, subgroup,
                    subgroup_from_members)


def orbit_labels(n: int, perms) -> np.ndarray:
    """Orbit label per point under the group generated by index permutations."""
    perms = [np.asarray(p, dtype=np.int64) for p in perms]
    if not perms:
        return np.arange(n, dtype=np.int64)
    rows = np.concatenate([np.arange(n)] * len(perms))
    cols = np.concatenate(perms)
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    # relabel by first occurrence so labels follow element order
    _, first = np.unique(labels, return_index=True)
    remap = np.empty(first.size, dtype=np.int64)
    remap[np.argsort(first)] = np.arange(first.size)
    return remap[labels]


def membership(G: FiniteGroup, x) -> bool:
    return G.contains(x)


def conjugate(G: FiniteGroup, x: int, g: int) -> int:
    """Ordinal of g^-1 x g."""
    ginv = int(G.inverses()[g])
    return int(G.mul_idx(G.mul_idx(np.array([ginv]), np.array([x])), np.array([g]))[0])


def commutator(G: FiniteGroup, x: int, y: int) -> int:
    """Ordinal of x^-1 y^-1 x y."""
    inv = G.inverses()
    a = G.mul_idx(np.array([inv[x]]), np.array([inv[y]]))
    a = G.mul_idx(a, np.array([x]))
    return int(G.mul_idx(a, np.array([y]))[0])


def intersection(G: FiniteGroup, A: FiniteGroup, B: FiniteGroup, name: str = "") -> FiniteGroup:
    """A ∩ B as a subgroup of the common ambient group G."""
    a, b = ambient_ords(A, G), ambient_ords(B, G)
    small, big = (a, b) if a.size <= b.size else (b, a)
    members = small[G.mask(big)[small]]
    return subgroup_from_members(G, members, name=name or f"{A.name}∩{B.name}")


def is_subgroup_of(K: FiniteGroup, G: FiniteGroup) -> bool:
    try:
        ambient_ords(K, G)
    except NotASubgroup:
        return False
    return True


def is_normal(G: FiniteGroup, H: FiniteGroup) -> bool:
    h_ords = ambient_ords(H, G)
    inH = G.mask(h_ords)
    hgens = np.array(generator_ords(H, G), dtype=np.int64)
    inv = G.inverses()
    for g in G.gen_ords:
        conj = G.mul_idx(G.mul_idx(np.full(hgens.size, inv[g]), hgens), np.full(hgens.size, g))
        if not inH[conj].all():
            return False
    return True


def normal_closure(G: FiniteGroup, seeds, name: str = "") -> FiniteGroup:
    gens = sorted({int(s) for s in seeds}) or [0]
    inv = G.inverses()
    while True:
        K = subgroup(G, gens, name=name)
        inK = G.mask(K.elements)
        kg = np.array(gens, dtype=np.int64)
        extra = []
        for g in G.gen_ords:
            conj = G.mul_idx(G.mul_idx(np.full(kg.size, inv[g]), kg), np.full(kg.size, g))
            extra.extend(int(c) for c in conj[~inK[conj]])
        if not extra:
            return K
        gens = sorted(set(gens) | {extra[0]})


def center(G: FiniteGroup, name: str = "") -> FiniteGroup:
    ok = np.ones(G.order, dtype=bool)
    idx = np.arange(G.order)
    for l, g in enumerate(G.gen_ords):
        ok &= G.gen_perm(l) == G.left_perm(g)
    return subgroup_from_members(G, idx[ok], name=name or f"Z({G.name})")


def centralizer_mask(G: FiniteGroup, x: int) -> np.ndarray:
    return G.right_perm(x) == G.left_perm(x)


def derived_subgroup(G: FiniteGroup, name: str = "") -> FiniteGroup:
    gens = G.gen_ords
    comms = {commutator(G, a, b) for a, b in itertools.combinations(gens, 2)}
    return normal_closure(G, comms or [0], name=name or f"{G.name}'")


def commutator_subgroup(G: FiniteGroup, K: FiniteGroup, name: str = "") -> FiniteGroup:
    """[G, K] for K normal in G."""
    kg = generator_ords(K, G)
    comms = {commutator(G, g, k) for g in G.gen_ords for k in kg}
    return normal_closure(G, comms or [0], name=name)


def derived_series(G: FiniteGroup) -> list[int]:
    orders = [G.order]
    K = G
    while True:
        D = derived_subgroup(K)
        if D.order == K.order:
            return orders
        orders.append(D.order)
        if D.order == 1:
            return orders
        K = D


def lower_central_series(G: FiniteGroup) -> list[int]:
    orders = [G.order]
    K = G
    while K.order > 1:
        nxt = commutator_subgroup(G, K)
        if nxt.order == K.order:
            break
        orders.append(nxt.order)
        K = nxt
    return orders


def is_nilpotent(G: FiniteGroup) -> bool:
    return lower_central_series(G)[-1] == 1


def conjugacy_classes(G: FiniteGroup) -> np.ndarray:
    """Class label per element (labels follow element order)."""
    cache = getattr(G, "_class_labels", None)
    if cache is None:
        cache = orbit_labels(G.order, [G.conj_perm(g) for g in G.gen_ords])
        G._class_labels = cache
    return cache


def class_sizes(G: FiniteGroup) -> list[int]:
    return sorted(np.bincount(conjugacy_classes(G)).tolist())


# -- fingerprints ----------------------------------------------------------------

@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    center_order: int
    derived_series: tuple[int, ...]
    abelian_invariants: tuple[int, ...]
    class_sizes: tuple[tuple[int, int], ...]
    order_histogram: tuple[tuple[int, int], ...]
    exponent: int

    def to_dict(self) -> dict:
        return asdict(self)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants_from_orders(orders) -> tuple[int, ...]:
    """Prime-power invariants of an abelian group from its element orders."""
    orders = np.asarray(orders)
    n = orders.size
    inv: list[int] = []
    for p in _prime_factors(n):
        counts = []
        k = 0
        while True:
            c = int(np.count_nonzero((p ** k) % orders == 0))
            counts.append(round(math.log(c, p)))
            if c == n or (k and counts[-1] == counts[-2]):
                break
            k += 1
        ge = [counts[i] - counts[i - 1] for i in range(1, len(counts))]
        ge.append(0)
        for e in range(1, len(ge)):
            inv.extend([p ** e] * (ge[e - 1] - ge[e]))
    return tuple(sorted(inv))


def abelian_invariants(G: FiniteGroup) -> tuple[int, ...]:
    D = derived_subgroup(G)
    if D.order == G.order:
        return ()
    if D.order == 1:
        return abelian_invariants_from_orders(G.element_orders())
    Q = quotient(G, D, check=False)
    return abelian_invariants_from_orders(Q.element_orders())


def fingerprint(G: FiniteGroup) -> GroupFingerprint:
    orders = G.element_orders()
    hist = Counter(orders.tolist())
    csz = Counter(class_sizes(G))
    return GroupFingerprint(
        order=G.order,
        center_order=center(G).order,
        derived_series=tuple(derived_series(G)),
        abelian_invariants=abelian_invariants(G),
        class_sizes=tuple(sorted(csz.items())),
        order_histogram=tuple(sorted(hist.items())),
        exponent=int(np.lcm.reduce(orders)),
    )


# -- cosets -------------------------------------------------------------------------

def right_coset_labels(G: FiniteGroup, K: FiniteGroup) -> np.ndarray:
    """Label of the coset gK for each g."""
    return orbit_labels(G.order, [G.right_perm(k) for k in generator_ords(K, G)])


def double_cosets(G: FiniteGroup, A: FiniteGroup, B: FiniteGroup) -> tuple[np.ndarray, list[int]]:
    """(label per element of G, sizes) for the partition of G into A x B."""
    perms = [G.left_perm(a) for a in generator_ords(A, G)]
    perms += [G.right_perm(b) for b in generator_ords(B, G)]
    labels = orbit_labels(G.order, perms)
    return labels, np.bincount(labels).tolist()


# -- normal subgroups, complements ---------------------------------------------

def _mask_key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


def normal_subgroups(G: FiniteGroup, order_filter=None, budget: int = 5000) -> list[FiniteGroup]:
    """All normal subgroups (optionally only those of the given orders).

    Every normal subgroup is the join of the normal closures of the classes it
    contains, so iterating joins over class closures is exhaustive.
    """
    labels = conjugacy_classes(G)
    reps = {}
    for i, lab in enumerate(labels.tolist()):
        reps.setdefault(lab, i)
    atoms: dict[bytes, FiniteGroup] = {}
    for lab, x in sorted(reps.items()):
        if x == 0:
            continue
        N = normal_closure(G, [x])
        atoms.setdefault(_mask_key(G.mask(N.elements)), N)
    trivial = subgroup(G, [0], name="1")
    lattice: dict[bytes, FiniteGroup] = {_mask_key(G.mask([0])): trivial}
    for A in atoms.values():
        a_gens = generator_ords(A, G)
        a_mask = G.mask(A.elements)
        for N in list(lattice.values()):
            if a_mask[N.elements].all() and N.order >= A.order:
                continue
            n_mask = G.mask(N.elements)
            if n_mask[A.elements].all():
                continue
            J = subgroup(G, generator_ords(N, G) + a_gens)
            lattice.setdefault(_mask_key(G.mask(J.elements)), J)
            if len(lattice) > budget:
                raise BudgetExceeded("normal subgroup lattice", len(lattice), budget)
    out = sorted(lattice.values(), key=lambda N: (N.order, _mask_key(G.mask(N.elements))))
    if order_filter is not None:
        wanted = {order_filter} if isinstance(order_filter, int) else set(order_filter)
        out = [N for N in out if N.order in wanted]
    return out


def small_closure_size(T: np.ndarray, gens, limit: int) -> int:
    """Size of <gens> from a multiplication table, stopping once above limit."""
    seen = np.zeros(T.shape[0], dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    total = 1
    gens = np.asarray(list(gens), dtype=np.int64)
    while frontier.size:
        nxt = np.unique(T[np.ix_(frontier, gens)].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        total += nxt.size
        if total > limit:
            return total
        frontier = nxt
    return total


def small_generating_set(G: FiniteGroup, T: np.ndarray | None = None) -> list[int]:
    """A short generating set (greedy, high-order elements first)."""
    T = G.table() if T is None else T
    orders = G.element_orders()
    cand = sorted(range(1, G.order), key=lambda i: (-orders[i], i))
    if not cand:
        return [0]
    if orders[cand[0]] == G.order:
        return [cand[0]]
    for x in cand[:60]:
        for y in cand:
            if small_closure_size(T, [x, y], G.order) == G.order:
                return [x, y]
    gens: list[int] = []
    size = 1
    for x in cand:
        s = small_closure_size(T, gens + [x], G.order)
        if s > size:
            gens.append(x)
            size = s
            if size == G.order:
                break
    return gens or [0]


@dataclass
class SplitVerdict:
    splits: bool
    complement: list[int] | None
    candidates_tried: int


def split_check(G: FiniteGroup, N: FiniteGroup, budget: int = 2_000_000) -> SplitVerdict:
    """Exhaustive search for a complement C (|C| = |G:N|, C ∩ N = 1)."""
    if not is_normal(G, N):
        raise NotNormal(f"{N.name} not normal in {G.name}")
    m = G.order // N.order
    if m == 1:
        return SplitVerdict(True, [0], 0)
    T = G.table()
    Q = quotient(G, N, check=False)
    coset = Q.kind.labels
    qT = Q.table()
    qgens = small_generating_set(Q, qT)
    q_orders = Q.element_orders()
    g_orders = G.element_orders()
    lifts = []
    for q in qgens:
        lab = int(Q.kind.labels[Q.elements[q]])
        members = np.nonzero(coset == lab)[0]
        lifts.append(members[g_orders[members] == q_orders[q]])
    tried = 0
    for combo in itertools.product(*lifts):
        tried += 1
        if tried > budget:
            raise BudgetExceeded("complement search", tried, budget)
        if small_closure_size(T, combo, m) == m:
            return SplitVerdict(True, [int(c) for c in combo], tried)
    return SplitVerdict(False, None, tried)


# -- isomorphism search --------------------------------------------------------

def find_isomorphism(G: FiniteGroup, K: FiniteGroup, budget: int = 1_000_000):
    """Explicit isomorphism G -> K as an ordinal array, or None if none exists.

    Images of a short generating set are searched by backtracking; the first
    image is fixed up to conjugacy in K, later ones must match element order
    and class size, and each partial assignment is checked for consistency.
    """
    if G.order != K.order:
        return None
    if G.order > 6000:
        raise BudgetExceeded("isomorphism search", G.order, 6000)
    TG, TK = G.table().astype(np.int64), K.table().astype(np.int64)
    oG, oK = G.element_orders(), K.element_orders()
    cG, cK = conjugacy_classes(G), conjugacy_classes(K)
    sG, sK = np.bincount(cG)[cG], np.bincount(cK)[cK]
    if sorted(zip(oG.tolist(), sG.tolist())) != sorted(zip(oK.tolist(), sK.tolist())):
        return None
    gens = small_generating_set(G, TG)
    # BFS tree of G over the chosen generators
    n = G.order
    par = np.full(n, -1)
    let = np.full(n, -1)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    order_bfs = [0]
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for l, g in enumerate(gens):
                y = int(TG[x, g])
                if not seen[y]:
                    seen[y] = True
                    par[y], let[y] = x, l
                    nxt.append(y)
                    order_bfs.append(y)
        frontier = nxt
    order_bfs = np.array(order_bfs)

    def extend(images: list[int]):
        k = len(images)
        sub = _sub_bfs(TG, gens[:k])
        phi = np.full(n, -1)
        phi[0] = 0
        for x, p, l in sub:
            phi[x] = TK[phi[p], images[l]]
        members = np.array([0] + [x for x, _, _ in sub])
        for l in range(k):
            prod = TG[members, gens[l]]
            if not np.array_equal(phi[prod], TK[phi[members], images[l]]):
                return None
        if np.unique(phi[members]).size != members.size:
            return None
        return phi

    cand = []
    for g in gens:
        cand.append(np.nonzero((oK == oG[g]) & (sK == sG[g]))[0])
    first_reps = []
    seen_cls = set()
    for y in cand[0]:
        if cK[y] not in seen_cls:
            seen_cls.add(cK[y])
            first_reps.append(int(y))
    tried = 0

    def search(images):
        nonlocal tried
        k = len(images)
        phi = extend(images)
        if phi is None:
            return None
        if k == len(gens):
            if (phi[order_bfs] >= 0).all() and np.unique(phi).size == n:
                return phi
            return None
        for y in (first_reps if k == 0 else cand[k]):
            tried += 1
            if tried > budget:
                raise BudgetExceeded("isomorphism search", tried, budget)
            res = search(images + [int(y)])
            if res is not None:
                return res
        return None

    for y in first_reps:
        res = search([y])
        if res is not None:
            return res
    return None


def _sub_bfs(T: np.ndarray, gens):
    seen = {0}
    out = []
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for l, g in enumerate(gens):
                y = int(T[x, g])
                if y not in seen:
                    seen.add(y)
                    out.append((y, x, l))
                    nxt.append(y)
        frontier = nxt
    return out


# -- homomorphisms -------------------------------------------------------------

class Homomorphism:
    """Generator-defined map; the image is enumerated with witness words."""

    def __init__(self, domain_kind, domain_gens, image_kind, image_gens,
                 budget: int | None = None, name: str = "") -> None:
        if len(domain_gens) != len(image_gens):
            raise ValueError("generator lists differ in length")
        self.domain_kind = domain_kind
        self.domain_gens = list(domain_gens)
        self.image_kind = image_kind
        self.image = closure(image_gens, image_kind, budget=budget, name=name or "image")
        self._transversal: dict[int, object] = {0: domain_kind.identity()}

    def transversal(self, i: int):
        """Domain element whose image is image element i (word evaluation)."""
        i = int(i)
        t = self._transversal.get(i)
        if t is None:
            p = int(self.image.parent[i])
            t = self.domain_kind.mul(self.transversal(p),
                                     self.domain_gens[int(self.image.letter[i])])
            self._transversal[i] = t
        return t

    def schreier_generators(self):
        """Yield t_i * s * t_{is}^-1 for every non-tree edge of the image BFS."""
        img = self.image
        kind = self.domain_kind
        for i in range(img.order):
            for l, s in enumerate(self.domain_gens):
                j = int(img.gen_perm(l)[i])
                if img.parent[j] == i and img.letter[j] == l:
                    continue
                yield kind.mul(kind.mul(self.transversal(i), s),
                               kind.inv(self.transversal(j)))


def schreier_kernel(h: Homomorphism, budget: int | None = None, name: str = "kernel") -> FiniteGroup:
    kind = h.domain_kind
    gens = []
    K = closure([kind.identity()], kind, name=name)
    for x in h.schreier_generators():
        if K.contains(x):
            continue
        gens.append(x)
        K = closure(gens, kind, budget=budget, name=name)
    return K


def _small_subgroups(T: np.ndarray, size: int) -> set[frozenset[int]]:
    """Subgroups of the given size among those generated by at most two elements."""
    q = T.shape[0]
    out = set()
    for a in range(q):
        for b in range(a, q):
            seen, frontier = {0}, [0]
            while frontier:
                nxt = []
                for x in frontier:
                    for y in (a, b):
                        z = int(T[x, y])
                        if z not in seen:
                            seen.add(z)
                            nxt.append(z)
                frontier = nxt
                if len(seen) > size:
                    break
            if len(seen) == size:
                out.add(frozenset(seen))
    return out


def index_subgroups(G: FiniteGroup, k: int) -> list[FiniteGroup]:
    """All subgroups of index k <= 4.

    A subgroup K of index k has a normal core M with G/M acting faithfully and
    transitively on the k cosets, so |G/M| divides k! and K/M is a core-free
    subgroup of index k in G/M. Subgroups of S_k (k <= 4) are 2-generated,
    which makes the pair scan in G/M exhaustive.
    """
    if not 1 <= k <= 4:
        raise ValueError("index_subgroups supports k <= 4")
    fact = 1
    for i in range(2, k + 1):
        fact *= i
    idx = [m for m in range(k, fact + 1) if fact % m == 0 and m % k == 0]
    found: dict[bytes, FiniteGroup] = {}
    for M in normal_subgroups(G, order_filter={G.order // m for m in idx if G.order % m == 0}):
        Q = quotient(G, M, check=False)
        T = Q.table()
        inv = Q.inverses()
        for S in _small_subgroups(T, Q.order // k):
            core = set(S)
            for x in range(Q.order):
                core &= {int(T[T[inv[x], s], x]) for s in S}
            if core != {0}:
                continue
            labels = Q.kind.labels
            wanted = [int(labels[Q.elements[s]]) for s in S]
            members = np.nonzero(np.isin(labels, wanted))[0]
            K = subgroup_from_members(G, members, name=f"{G.name}:idx{k}")
            found.setdefault(_mask_key(G.mask(K.elements)), K)
    return [found[key] for key in sorted(found)]
