"""BN-pair verification: H, W, S, axioms (i)/(ii), Bruhat census, cell rules,
split axioms (iii)/(iv).

All checks run on ordinals of an enumerated ambient group G. A pair may be
given modulo a normal subgroup contained in B (``modulo``); every set in the
axioms is then a union of cosets, so the verdicts transfer unchanged. The one
exception is axiom (iii), where only a necessary condition survives the
reduction and the report says so.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .coxeter import TYPES, CoxeterCertificate, find_certificate
from .group import FiniteGroup, ambient_ords, as_subgroup, generator_ords, quotient, subgroup
from .structure import (conjugacy_classes, double_cosets, intersection, is_nilpotent,
                        is_normal, normal_subgroups)


class GenerationFails(ValueError):
    pass


@dataclass
class BNPrepared:
    G: FiniteGroup
    B: FiniteGroup
    N: FiniteGroup
    H: FiniteGroup
    meet: FiniteGroup
    W: FiniteGroup | None
    S: list[int]
    s_source: str
    n_rep: np.ndarray | None
    generates: bool
    h_normal_in_N: bool
    h_normal_in_G: bool
    h_in_B: bool
    certificate: CoxeterCertificate | None
    lengths: np.ndarray | None
    modulo: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def b_ords(self) -> np.ndarray:
        return ambient_ords(self.B, self.G)

    def summary(self) -> dict:
        return {
            "G": self.G.order, "B": self.B.order, "N": self.N.order,
            "H": self.H.order, "B_meet_N": self.meet.order,
            "H_equals_B_meet_N": self.H.order == self.meet.order and self.h_in_B,
            "generation": self.generates, "H_normal_in_N": self.h_normal_in_N,
            "H_normal_in_G": self.h_normal_in_G, "H_in_B": self.h_in_B,
            "W": self.W.order if self.W is not None else None,
            "S_size": len(self.S), "S_source": self.s_source,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "length_table": (np.bincount(self.lengths).tolist()
                             if self.lengths is not None else None),
            "modulo": self.modulo, "notes": self.notes,
        }


def minimal_involution_generators(W: FiniteGroup) -> list[int]:
    """Greedy involution generating set (sorted by class size, key), then pruned."""
    orders = W.element_orders()
    classes = conjugacy_classes(W)
    csize = np.bincount(classes)
    rank = W.key_rank()
    invs = np.nonzero(orders == 2)[0]
    invs = invs[np.lexsort((rank[invs], csize[classes[invs]]))]
    chosen: list[int] = []
    current = 1
    for x in invs:
        trial = chosen + [int(x)]
        size = subgroup(W, trial).order
        if size > current:
            chosen, current = trial, size
        if current == W.order:
            break
    if current != W.order:
        raise GenerationFails(f"{W.name} is not generated by involutions")
    for x in list(chosen):
        rest = [y for y in chosen if y != x]
        if rest and subgroup(W, rest).order == W.order:
            chosen = rest
    return chosen


def word_lengths(W: FiniteGroup, S: list[int]) -> np.ndarray:
    """l_S(w) by breadth-first search on the Cayley graph of W."""
    lengths = np.full(W.order, -1, dtype=np.int64)
    lengths[0] = 0
    perms = [W.left_perm(s) for s in S]
    frontier = np.array([0])
    d = 0
    while frontier.size:
        d += 1
        nxt = np.unique(np.concatenate([p[frontier] for p in perms]))
        nxt = nxt[lengths[nxt] < 0]
        lengths[nxt] = d
        frontier = nxt
    return lengths


def prepare(G: FiniteGroup, B: FiniteGroup, N: FiniteGroup, claimed_type: str | None = None,
            H: FiniteGroup | None = None, S: list[int] | None = None,
            modulo: str | None = None, cert_budget: int = 200_000) -> BNPrepared:
    """Compute H, W = N/H, S and the representatives n_w.

    H defaults to B ∩ N; a configured H (the one a source names) is used for W
    when given, and the report records whether it agrees with B ∩ N.
    """
    B = as_subgroup(B, G) if B is not G else B
    N = as_subgroup(N, G) if N is not G else N
    gens = generator_ords(B, G) + generator_ords(N, G)
    generates = subgroup(G, gens).order == G.order
    meet = intersection(G, B, N, name="B∩N")
    notes: list[str] = []
    if H is None:
        H = meet
    else:
        H = as_subgroup(H, G)
        if H.order != meet.order:
            notes.append(f"configured H has order {H.order}; B∩N has order {meet.order}")
    b_mask = G.mask(ambient_ords(B, G))
    h_ords = ambient_ords(H, G)
    h_in_B = bool(b_mask[h_ords].all())
    n_mask = G.mask(ambient_ords(N, G))
    h_in_N = bool(n_mask[h_ords].all())
    h_norm_G = is_normal(G, H)
    h_norm_N = h_in_N and is_normal(N, as_subgroup(H, N))
    W = n_rep = lengths = cert = None
    s_source = "none"
    S_out: list[int] = []
    if h_norm_N:
        W = quotient(N, as_subgroup(H, N), name="W", check=False)
        n_rep = ambient_ords(N, G)[np.asarray(W.elements, dtype=np.int64)]
        if S is not None:
            S_out, s_source = list(S), "explicit"
        else:
            t = TYPES.get(claimed_type) if claimed_type else None
            if t is not None and W.order == t.order:
                cert = find_certificate(W, t, budget=cert_budget)
            if cert is not None:
                S_out, s_source = list(cert.generators), f"Coxeter certificate {t.tag}"
            else:
                S_out = minimal_involution_generators(W)
                s_source = "minimal involution generating set"
                if claimed_type:
                    notes.append(f"no {claimed_type} certificate for W of order {W.order}; "
                                 "S substituted by a minimal involution generating set")
        lengths = word_lengths(W, S_out)
    else:
        notes.append("H is not normal in N, so W = N/H is undefined")
    return BNPrepared(G, B, N, H, meet, W, S_out, s_source, n_rep, generates, h_norm_N,
                      h_norm_G, h_in_B, cert, lengths, modulo, notes)


# -- axiom (i), cell rules --------------------------------------------------------

@dataclass
class AxiomOneResult:
    mode: str
    checked: int
    pairs_total: int
    pairs_failing: int
    counterexamples: list[dict]
    seed: int | None
    hit_sets: dict | None = None      # (s_index, w) -> frozenset of double-coset labels

    @property
    def holds(self) -> bool:
        return self.pairs_failing == 0

    def to_dict(self) -> dict:
        return {"mode": self.mode, "products_checked": self.checked,
                "pairs_total": self.pairs_total, "pairs_failing": self.pairs_failing,
                "holds": self.holds, "counterexamples": self.counterexamples[:10],
                "seed": self.seed}


class BNVerifier:
    def __init__(self, prep: BNPrepared) -> None:
        if prep.W is None:
            raise ValueError("W is undefined; axioms cannot be evaluated")
        self.p = prep
        self.G = prep.G
        self._labels = None
        self._sizes = None

    @property
    def labels(self) -> np.ndarray:
        if self._labels is None:
            self._labels, self._sizes = double_cosets(self.G, self.p.B, self.p.B)
        return self._labels

    @property
    def sizes(self) -> list[int]:
        self.labels
        return self._sizes

    def _sw(self, s: int) -> np.ndarray:
        W = self.p.W
        return W.mul_idx(np.full(W.order, s), np.arange(W.order))

    def axiom_i(self, mode: str = "exhaustive", samples: int = 100_000, seed: int = 0,
                chunk: int = 1 << 22) -> AxiomOneResult:
        p, G, lab = self.p, self.G, self.labels
        b = p.b_ords
        nw = p.n_rep
        nW = p.W.order
        checked = failing = 0
        cex: list[dict] = []
        hits: dict | None = {} if mode == "exhaustive" else None
        if mode == "exhaustive":
            per = max(1, chunk // b.size)
            for si, s in enumerate(p.S):
                x = G.mul_idx(np.full(b.size, nw[s]), b)
                sw = self._sw(s)
                for lo in range(0, nW, per):
                    ws = np.arange(lo, min(nW, lo + per))
                    prods = G.mul_idx(np.tile(x, ws.size), np.repeat(nw[ws], b.size))
                    got = lab[prods].reshape(ws.size, b.size)
                    ok = (got == lab[nw[ws]][:, None]) | (got == lab[nw[sw[ws]]][:, None])
                    checked += got.size
                    bad = ~ok.all(axis=1)
                    failing += int(bad.sum())
                    for i in np.nonzero(bad)[0][: max(0, 10 - len(cex))]:
                        j = int(np.nonzero(~ok[i])[0][0])
                        cex.append({"s": int(s), "w": int(ws[i]), "b": int(b[j]),
                                    "product_coset": int(got[i, j])})
                    srt = np.sort(got, axis=1)
                    for i, w in enumerate(ws.tolist()):
                        hits[(si, w)] = frozenset(np.unique(srt[i]).tolist())
            pairs = len(p.S) * nW
        else:
            rng = np.random.default_rng(seed)
            si = rng.integers(0, len(p.S), samples)
            ws = rng.integers(0, nW, samples)
            bs = b[rng.integers(0, b.size, samples)]
            s_arr = np.asarray(p.S)[si]
            left = G.mul_idx(nw[s_arr], bs)
            prods = G.mul_idx(left, nw[ws])
            sw = p.W.mul_idx(s_arr, ws)
            got = lab[prods]
            ok = (got == lab[nw[ws]]) | (got == lab[nw[sw]])
            checked = samples
            bad_pairs = {(int(a), int(c)) for a, c in zip(s_arr[~ok], ws[~ok])}
            failing = len(bad_pairs)
            for i in np.nonzero(~ok)[0][:10]:
                cex.append({"s": int(s_arr[i]), "w": int(ws[i]), "b": int(bs[i]),
                            "product_coset": int(got[i])})
            pairs = len(p.S) * nW
        return AxiomOneResult(mode, checked, pairs, failing, cex,
                              None if mode == "exhaustive" else seed, hits)

    def axiom_ii(self) -> list[dict]:
        p, G = self.p, self.G
        b = p.b_ords
        bmask = G.mask(b)
        out = []
        for s in p.S:
            ns = int(p.n_rep[s])
            y = G.mul_idx(G.mul_idx(np.full(b.size, ns), b), np.full(b.size, ns))
            outside = np.nonzero(~bmask[y])[0]
            out.append({"s": int(s), "holds": bool(outside.size),
                        "witness_b": int(b[outside[0]]) if outside.size else None,
                        "witness_key": G.key(int(b[outside[0]])).hex() if outside.size else None})
        return out

    def bruhat_census(self) -> dict:
        lab = self.labels
        fibre = lab[self.p.n_rep]
        hit = np.unique(fibre)
        count = len(self.sizes)
        return {"double_cosets": count, "sizes": sorted(self.sizes),
                "sizes_sum": int(sum(self.sizes)),
                "index_bound": self.G.order // self.p.B.order,
                "within_index_bound": count <= self.G.order // self.p.B.order,
                "injective": hit.size == self.p.W.order,
                "surjective": hit.size == count, "covers_G": hit.size == count,
                "fibre_sizes": sorted(np.bincount(fibre, minlength=count).tolist())}

    def cell_rules(self, one: AxiomOneResult) -> dict:
        if one.hit_sets is None:
            return {"mode": "sampled", "evaluated": False}
        p, lab = self.p, self.labels
        L, nw = p.lengths, p.n_rep
        out = {"a": [0, 0], "b": [0, 0], "neither": 0, "c": []}
        fails: dict[str, list] = {"a": [], "b": []}
        for si, s in enumerate(p.S):
            sw = self._sw(s)
            for w in range(p.W.order):
                got = one.hit_sets[(si, w)]
                c_sw, c_w = int(lab[nw[sw[w]]]), int(lab[nw[w]])
                if L[sw[w]] > L[w]:
                    ok = got == {c_sw}
                    rule = "a"
                elif L[sw[w]] < L[w]:
                    ok = got == {c_sw, c_w}
                    rule = "b"
                else:
                    out["neither"] += 1
                    continue
                out[rule][0 if ok else 1] += 1
                if not ok and len(fails[rule]) < 5:
                    fails[rule].append({"s": int(s), "w": int(w), "cosets": sorted(got)})
            got = one.hit_sets[(si, int(s))]
            c_b, c_s = int(lab[0]), int(lab[nw[s]])
            out["c"].append({"s": int(s), "holds": got == {c_b, c_s} and c_s != c_b,
                             "cosets": sorted(got)})
        return {"mode": "exhaustive",
                "a": {"pass": out["a"][0], "fail": out["a"][1], "examples": fails["a"]},
                "b": {"pass": out["b"][0], "fail": out["b"][1], "examples": fails["b"]},
                "length_ties": out["neither"],
                "c": out["c"], "a_holds": out["a"][1] == 0, "b_holds": out["b"][1] == 0,
                "c_holds": all(x["holds"] for x in out["c"])}

    def split_axioms(self, budget: int = 5000) -> dict:
        p, G = self.p, self.G
        res: dict = {}
        if p.modulo:
            nil = is_nilpotent(p.B)
            res["iii"] = {"holds": False if not nil else None, "reduced": True,
                          "B_mod_H_nilpotent": nil,
                          "reason": ("U would be isomorphic to B/H, which is not nilpotent"
                                     if not nil else "undecided in the reduced setting")}
        else:
            h_mask = G.mask(ambient_ords(p.H, G))
            b_ords = p.b_ords
            b_set = G.mask(b_ords)
            scanned, found = 0, None
            for U in normal_subgroups(p.B, budget=budget):
                scanned += 1
                if U.order * p.H.order != p.B.order:
                    continue
                u = ambient_ords(U, G)
                if h_mask[u].sum() != 1 or not is_nilpotent(U):
                    continue
                prod = G.mul_idx(np.repeat(u, p.H.order), np.tile(ambient_ords(p.H, G), u.size))
                if (G.mask(prod) == b_set).all():
                    found = U
                    break
            res["iii"] = {"holds": found is not None, "reduced": False,
                          "normal_subgroups_scanned": scanned,
                          "U_order": found.order if found is not None else None,
                          "U_generators": generator_ords(found, G) if found is not None else None}
        # (iv): intersect nBn^-1 over left cosets n(N∩B)
        b = p.b_ords
        inv = G.inverses()
        current = G.mask(b)
        h_mask = G.mask(ambient_ords(p.H, G))
        n_ords = ambient_ords(p.N, G)
        seen = np.zeros(G.order, dtype=bool)
        conj_used = 0
        for n in n_ords:
            if seen[n]:
                continue
            coset = G.mul_idx(np.full(b.size, n), b)
            seen[coset] = True
            conj = G.mul_idx(G.mul_idx(np.full(b.size, n), b), np.full(b.size, inv[n]))
            current &= G.mask(conj)
            conj_used += 1
            if (current == h_mask).all():
                break
        res["iv"] = {"holds": bool((current == h_mask).all()), "conjugates_used": conj_used,
                     "intersection_order": int(current.sum())}
        return res

    def report(self, mode: str = "exhaustive", samples: int = 100_000, seed: int = 0) -> dict:
        t0 = time.perf_counter()
        one = self.axiom_i(mode=mode, samples=samples, seed=seed)
        rep = {"prepare": self.p.summary(), "axiom_i": one.to_dict(),
               "axiom_ii": self.axiom_ii(), "bruhat": self.bruhat_census(),
               "cell_rules": self.cell_rules(one), "split": self.split_axioms()}
        rep["elapsed_ms"] = int(1000 * (time.perf_counter() - t0))
        return rep


def with_random_representatives(prep: BNPrepared, seed: int = 0) -> BNPrepared:
    """Copy of prep with each n_w replaced by n_w * h for a random h in H."""
    rng = np.random.default_rng(seed)
    h = ambient_ords(prep.H, prep.G)
    pick = h[rng.integers(0, h.size, prep.n_rep.size)]
    new = BNPrepared(**{**prep.__dict__})
    new.n_rep = prep.G.mul_idx(prep.n_rep, pick)
    return new
