"""Enumerated finite groups.

A :class:`FiniteGroup` stores its elements in BFS-then-key order together with the
BFS tree (``parent``, ``letter``): element ``i`` equals ``parent[i] * gens[letter[i]]``.
Once the right-multiplication permutation of each generator is known, every
product can be evaluated on ordinals by walking generator words, so the heavy
structural algorithms never touch the underlying element kind.
"""
from __future__ import annotations

import logging

import numpy as np

from .kinds import CosetKind, ElementKind, IndexKind

logger = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, count: int, budget: int) -> None:
        super().__init__(f"{what}: {count} elements exceeds budget {budget}")
        self.count = count
        self.budget = budget


class NotASubgroup(ValueError):
    pass


class NotNormal(ValueError):
    pass


class FiniteGroup:
    def __init__(self, kind: ElementKind, elements, gens: list, parent, letter,
                 keys: list[bytes] | None = None, name: str = "",
                 provenance: dict | None = None) -> None:
        self.kind = kind
        self.gens = list(gens)
        self.parent = np.asarray(parent, dtype=np.int64)
        self.letter = np.asarray(letter, dtype=np.int16)
        self.name = name
        self.provenance = provenance or {}
        if kind.array_based:
            self.elements = np.asarray(elements, dtype=kind.dtype)
            sk = kind.sort_key(self.elements)
            self._sort_order = np.argsort(sk, kind="stable")
            self._sorted_sk = sk[self._sort_order]
            self._keys = None
            self._index = None
        else:
            self.elements = list(elements)
            self._keys = keys if keys is not None else kind.keys_batch(self.elements)
            self._index = {k: i for i, k in enumerate(self._keys)}
        self._gen_perms: dict[int, np.ndarray] = {}
        self._right_cache: dict[int, np.ndarray] = {}
        self._words = None
        self._inverses = None
        self._orders = None
        self._rank = None
        self.gen_ords = [int(self.locate_one(g)) for g in self.gens]

    # -- basic access -----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name or '?'} order={self.order} kind={self.kind.name}>"

    def element(self, i: int):
        return self.elements[int(i)]

    def native(self, i: int):
        """Element ``i`` in the root (non-index) kind."""
        e = self.element(i)
        if isinstance(self.kind, (IndexKind, CosetKind)):
            return self.kind.ambient.native(int(e))
        return e

    @property
    def root(self) -> FiniteGroup:
        if isinstance(self.kind, (IndexKind, CosetKind)):
            return self.kind.ambient.root
        return self

    def key(self, i: int) -> bytes:
        if self._keys is not None:
            return self._keys[int(i)]
        return self.kind.key(self.elements[int(i)])

    def keys(self) -> list[bytes]:
        if self._keys is not None:
            return self._keys
        return [self.kind.key(e) for e in self.elements]

    def key_rank(self) -> np.ndarray:
        """rank[i] = position of key(i) among all keys, sorted bytewise."""
        if self._rank is None:
            if self.kind.array_based:
                order = self._sort_order
            else:
                order = np.array(sorted(range(self.order), key=self._keys.__getitem__),
                                 dtype=np.int64)
            rank = np.empty(self.order, dtype=np.int64)
            rank[order] = np.arange(self.order)
            self._rank = rank
        return self._rank

    def locate(self, items) -> np.ndarray:
        """Ordinals of kind elements (-1 where absent)."""
        if self.kind.array_based:
            sk = self.kind.sort_key(np.asarray(items, dtype=self.kind.dtype))
            pos = np.searchsorted(self._sorted_sk, sk)
            pos = np.minimum(pos, len(self._sorted_sk) - 1)
            hit = self._sorted_sk[pos] == sk
            return np.where(hit, self._sort_order[pos], -1)
        keys = self.kind.keys_batch(items)
        return np.array([self._index.get(k, -1) for k in keys], dtype=np.int64)

    def locate_one(self, x) -> int:
        if self.kind.array_based:
            return int(self.locate(np.array([x]))[0])
        return self._index.get(self.kind.key(x), -1)

    def locate_keys(self, keys) -> np.ndarray:
        if self.kind.array_based:
            return self.locate(np.array([self.kind.from_key(k) for k in keys],
                                        dtype=self.kind.dtype))
        return np.array([self._index.get(k, -1) for k in keys], dtype=np.int64)

    def contains(self, x) -> bool:
        return self.locate_one(x) >= 0

    # -- index arithmetic -------------------------------------------------------

    def gen_perm(self, letter: int) -> np.ndarray:
        """R_g for generator ``letter``: i -> ordinal of element_i * g."""
        perm = self._gen_perms.get(letter)
        if perm is None:
            g = self.gens[letter]
            if self.kind.array_based:
                prods = self.kind.mul_array(self.elements, g)
            else:
                prods = self.kind.mul_batch(self.elements, g)
            perm = self.locate(prods)
            if (perm < 0).any():
                raise ArithmeticError(f"{self.name}: not closed under generator {letter}")
            self._gen_perms[letter] = perm
        return perm

    def words(self) -> np.ndarray:
        """(order, depth) generator letters from the root, padded with -1."""
        if self._words is None:
            depth = np.zeros(self.order, dtype=np.int64)
            for i in range(1, self.order):
                depth[i] = depth[self.parent[i]] + 1
            maxd = int(depth.max()) if self.order else 0
            W = np.full((self.order, max(maxd, 1)), -1, dtype=np.int16)
            # parents always precede children in BFS order
            for d in range(1, maxd + 1):
                idx = np.nonzero(depth == d)[0]
                W[idx] = W[self.parent[idx]]
                W[idx, d - 1] = self.letter[idx]
            self._words = W
        return self._words

    def word(self, i: int) -> list[int]:
        return [int(x) for x in self.words()[int(i)] if x >= 0]

    def mul_idx(self, a, b) -> np.ndarray:
        """Elementwise products element[a] * element[b] on ordinal arrays."""
        a = np.array(a, dtype=np.int64, copy=True)
        b = np.broadcast_to(np.asarray(b, dtype=np.int64), a.shape)
        if a.ndim == 0:
            return self.mul_idx(a[None], b[None])[0]
        W = self.words()[b]
        perms = [self.gen_perm(l) for l in range(len(self.gens))]
        for t in range(W.shape[1]):
            col = W[:, t]
            if (col < 0).all():
                break
            for l, perm in enumerate(perms):
                m = col == l
                if m.any():
                    a[m] = perm[a[m]]
        return a

    def right_perm(self, x: int) -> np.ndarray:
        """i -> ordinal of element_i * element_x."""
        x = int(x)
        perm = self._right_cache.get(x)
        if perm is None:
            perm = np.arange(self.order, dtype=np.int64)
            for l in self.word(x):
                perm = self.gen_perm(l)[perm]
            if len(self._right_cache) > 256:
                self._right_cache.clear()
            self._right_cache[x] = perm
        return perm

    def left_perm(self, x: int) -> np.ndarray:
        """i -> ordinal of element_x * element_i."""
        return self.mul_idx(np.full(self.order, int(x)), np.arange(self.order))

    def conj_perm(self, g: int) -> np.ndarray:
        """i -> ordinal of g^-1 * element_i * g."""
        ginv = int(self.inverses()[g])
        return self.right_perm(g)[self.left_perm(ginv)]

    def _compute_orders(self) -> None:
        n = self.order
        x = np.arange(n, dtype=np.int64)
        cur = x.copy()
        orders = np.zeros(n, dtype=np.int64)
        inverses = np.zeros(n, dtype=np.int64)
        prev = np.zeros(n, dtype=np.int64)   # x^(k-1)
        active = np.ones(n, dtype=bool)
        k = 1
        while active.any():
            done = active & (cur == 0)
            orders[done] = k
            inverses[done] = prev[done]
            active &= ~done
            if not active.any():
                break
            idx = np.nonzero(active)[0]
            prev[idx] = cur[idx]
            cur[idx] = self.mul_idx(cur[idx], x[idx])
            k += 1
            if k > 100_000:
                raise ArithmeticError("element order runaway")
        self._orders, self._inverses = orders, inverses

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            self._compute_orders()
        return self._orders

    def inverses(self) -> np.ndarray:
        if self._inverses is None:
            self._compute_orders()
        return self._inverses

    def table(self) -> np.ndarray:
        """Full multiplication table T[i, j] = ordinal(element_i * element_j)."""
        n = self.order
        if n > 6000:
            raise BudgetExceeded("multiplication table", n, 6000)
        T = np.empty((n, n), dtype=np.int32 if n > 32000 else np.int16)
        T[:, 0] = np.arange(n)
        perms = [self.gen_perm(l) for l in range(len(self.gens))]
        for j in range(1, n):
            T[:, j] = perms[self.letter[j]][T[:, self.parent[j]]]
        return T

    def mask(self, ords) -> np.ndarray:
        m = np.zeros(self.order, dtype=bool)
        m[np.asarray(ords, dtype=np.int64)] = True
        return m


# -- construction ----------------------------------------------------------------

def closure(gens, kind: ElementKind, budget: int | None = None, name: str = "",
            provenance: dict | None = None) -> FiniteGroup:
    """Smallest group containing ``gens``, in deterministic BFS-then-key order."""
    gens = list(gens)
    if not gens:
        raise ValueError("closure needs at least one generator")
    if kind.array_based:
        elements, parent, letter = _closure_arrays(gens, kind, budget, name)
        keys = None
    else:
        elements, keys, parent, letter = _closure_objects(gens, kind, budget, name)
    logger.debug("closure %s: order %d", name, len(elements))
    return FiniteGroup(kind, elements, gens, parent, letter, keys=keys, name=name,
                       provenance=provenance or {"generators": len(gens)})


def _closure_objects(gens, kind, budget, name):
    ident = kind.identity()
    k0 = kind.key(ident)
    elements, keys, parent, letter = [ident], [k0], [-1], [-1]
    index = {k0: 0}
    frontier = [0]
    while frontier:
        found: dict[bytes, tuple] = {}
        front = [elements[i] for i in frontier]
        for l, g in enumerate(gens):
            prods = kind.mul_batch(front, g)
            for i, k, e in zip(frontier, kind.keys_batch(prods), prods):
                if k in index:
                    continue
                prev = found.get(k)
                if prev is None or (i, l) < (prev[1], prev[2]):
                    found[k] = (e, i, l)
        frontier = []
        for k in sorted(found):
            e, p, l = found[k]
            index[k] = len(keys)
            frontier.append(len(keys))
            elements.append(e)
            keys.append(k)
            parent.append(p)
            letter.append(l)
        if budget is not None and len(keys) > budget:
            raise BudgetExceeded(name or "closure", len(keys), budget)
    return elements, keys, parent, letter


def _closure_arrays(gens, kind, budget, name):
    ident = np.array([kind.identity()], dtype=kind.dtype)
    levels = [ident]
    parents = [np.array([-1])]
    letters = [np.array([-1])]
    visited = kind.sort_key(ident)
    frontier = ident
    front_ords = np.array([0])
    total = 1
    while frontier.size:
        cand, cpar, clet = [], [], []
        for l, g in enumerate(gens):
            cand.append(kind.mul_array(frontier, g))
            cpar.append(front_ords)
            clet.append(np.full(frontier.size, l))
        cand = np.concatenate(cand)
        cpar = np.concatenate(cpar)
        clet = np.concatenate(clet)
        sk = kind.sort_key(cand)
        pos = np.minimum(np.searchsorted(visited, sk), visited.size - 1)
        fresh = visited[pos] != sk
        cand, cpar, clet, sk = cand[fresh], cpar[fresh], clet[fresh], sk[fresh]
        # first occurrence by (key, parent, letter)
        order = np.lexsort((clet, cpar, sk))
        sk_sorted = sk[order]
        first = np.ones(order.size, dtype=bool)
        first[1:] = sk_sorted[1:] != sk_sorted[:-1]
        pick = order[first]
        frontier = cand[pick]
        levels.append(frontier)
        parents.append(cpar[pick])
        letters.append(clet[pick])
        front_ords = np.arange(total, total + frontier.size)
        total += frontier.size
        visited = np.union1d(visited, sk[pick])
        if budget is not None and total > budget:
            raise BudgetExceeded(name or "closure", total, budget)
    return np.concatenate(levels), np.concatenate(parents), np.concatenate(letters)


def subgroup(G: FiniteGroup, gen_ords, name: str = "", budget: int | None = None) -> FiniteGroup:
    """Subgroup of G generated by the given ordinals (computed in index space)."""
    gen_ords = [int(g) for g in gen_ords] or [0]
    return closure(gen_ords, IndexKind(G), budget=budget, name=name,
                   provenance={"ambient": G.name, "generators": gen_ords})


def root_ords(K: FiniteGroup) -> np.ndarray:
    """Ordinals of K's elements in its root group."""
    if isinstance(K.kind, (IndexKind, CosetKind)):
        return root_ords(K.kind.ambient)[np.asarray(K.elements, dtype=np.int64)]
    return np.arange(K.order, dtype=np.int64)


def locate_root(G: FiniteGroup, ords) -> np.ndarray:
    """Ordinals in G of elements given by root ordinals (-1 if absent)."""
    ords = np.asarray(ords, dtype=np.int64)
    if not isinstance(G.kind, (IndexKind, CosetKind)):
        return ords
    amb = locate_root(G.kind.ambient, ords)
    out = np.full(ords.shape, -1, dtype=np.int64)
    ok = amb >= 0
    out[ok] = G.locate(amb[ok])
    return out


def ambient_ords(K: FiniteGroup, G: FiniteGroup) -> np.ndarray:
    """Ordinals in G of the elements of K (raises if K is not inside G)."""
    if K is G:
        return np.arange(G.order, dtype=np.int64)
    if isinstance(K.kind, IndexKind) and K.kind.ambient is G:
        return np.asarray(K.elements, dtype=np.int64)
    if K.root is G.root:
        ords = locate_root(G, root_ords(K))
    else:
        ords = G.locate_keys(K.keys())
    if (ords < 0).any():
        raise NotASubgroup(f"{K.name} is not contained in {G.name}")
    return ords


def as_subgroup(K: FiniteGroup, G: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Re-express K as an index subgroup of G, keeping K's generators."""
    if isinstance(K.kind, IndexKind) and K.kind.ambient is G:
        return K
    gens = generator_ords(K, G)
    H = subgroup(G, gens, name=name or K.name)
    if H.order != K.order:
        raise NotASubgroup(f"{K.name} generators span a different subgroup of {G.name}")
    return H


def subgroup_from_members(G: FiniteGroup, members, name: str = "") -> FiniteGroup:
    """Subgroup of G given as a member set; generators are picked greedily by key."""
    members = np.unique(np.asarray(members, dtype=np.int64))
    target = members.size
    rank = G.key_rank()
    cand = members[np.argsort(rank[members])]
    gens: list[int] = []
    current = np.zeros(G.order, dtype=bool)
    current[0] = True
    K = None
    for x in cand:
        if current[x]:
            continue
        gens.append(int(x))
        K = subgroup(G, gens, name=name)
        current = G.mask(K.elements)
        if K.order == target:
            break
    if K is None:
        K = subgroup(G, [0], name=name)
    if K.order != target or not current[members].all():
        raise NotASubgroup(f"{name}: member set is not a subgroup")
    return K


def quotient(G: FiniteGroup, N: FiniteGroup, name: str = "", check: bool = True) -> FiniteGroup:
    """G/N with each coset represented by its least-key element."""
    from .structure import is_normal, orbit_labels

    n_ords = ambient_ords(N, G)
    if check and not is_normal(G, N):
        raise NotNormal(f"{N.name} is not normal in {G.name}")
    n_gens = [G.right_perm(int(x)) for x in _gen_ords_in(N, G, n_ords)]
    labels = orbit_labels(G.order, n_gens)
    rank = G.key_rank()
    nlab = int(labels.max()) + 1
    best = np.full(nlab, np.iinfo(np.int64).max)
    np.minimum.at(best, labels, rank)
    order_of_rank = np.empty(G.order, dtype=np.int64)
    order_of_rank[rank] = np.arange(G.order)
    reps = order_of_rank[best]
    kind = CosetKind(G, labels, reps, name=f"{G.name}/{N.name}")
    gens = [int(reps[labels[g]]) for g in G.gen_ords]
    Q = closure(gens, kind, name=name or kind.name,
                provenance={"quotient": (G.name, N.name)})
    if Q.order * N.order != G.order:
        raise ArithmeticError("quotient order mismatch")
    return Q


def _gen_ords_in(K: FiniteGroup, G: FiniteGroup, k_ords: np.ndarray) -> list[int]:
    return [int(k_ords[i]) for i in K.gen_ords]


def generator_ords(K: FiniteGroup, G: FiniteGroup) -> list[int]:
    """Ordinals in G of K's generators."""
    if K is G:
        return list(G.gen_ords)
    if isinstance(K.kind, IndexKind) and K.kind.ambient is G:
        return [int(K.elements[i]) for i in K.gen_ords]
    if K.root is G.root:
        ords = locate_root(G, root_ords(K)[np.asarray(K.gen_ords, dtype=np.int64)])
    else:
        ords = G.locate_keys([K.key(i) for i in K.gen_ords])
    if (ords < 0).any():
        raise NotASubgroup(f"{K.name} generators not in {G.name}")
    return [int(x) for x in ords]


def image_in_quotient(Q: FiniteGroup, K: FiniteGroup, name: str = "") -> FiniteGroup:
    """Image of a subgroup K of G inside Q = G/N, as an index subgroup of Q."""
    if not isinstance(Q.kind, CosetKind):
        raise TypeError("Q must be a quotient group")
    G = Q.kind.ambient
    reps = Q.kind.canon(ambient_ords(K, G))
    ords = Q.locate(np.unique(reps))
    return subgroup_from_members(Q, ords, name=name or f"{K.name}N/N")
