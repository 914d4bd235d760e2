"""Named BN-pair configurations and the group constructions behind them."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .bn import BNPrepared, prepare
from .cache import load_or_build
from .clifford import generators, two_qubit_groups
from .group import FiniteGroup, ambient_ords, as_subgroup, image_in_quotient, quotient, subgroup
from .pauli import action_table, symplectic_image, symplectic_of
from .refgroups import gl2_f2, weyl_f4
from .structure import (center, derived_subgroup, fingerprint, index_subgroups, intersection,
                        is_subgroup_of)

PAIR_NAMES = ("gl2f2-toy", "c2-pair", "c2-hat-split-pair", "c3-pair")


@lru_cache(maxsize=None)
def local_order_1152() -> tuple[FiniteGroup, ...]:
    """All subgroups of order 1152 (index 4) of the local Clifford group."""
    return tuple(index_subgroups(two_qubit_groups()["C2L"], 4))


@lru_cache(maxsize=None)
def f4_reference_fingerprint():
    return fingerprint(weyl_f4())


@lru_cache(maxsize=None)
def c2_pair_B() -> tuple[FiniteGroup, str]:
    """B for the two-qubit pair.

    Preference order: a W(F4)-fingerprint subgroup of order 1152 of C2L; else
    the first (canonical order) order-1152 subgroup containing Z(B2), which
    keeps the configured H inside B.
    """
    g = two_qubit_groups()
    C2, B2 = g["C2"], g["B2"]
    cands = local_order_1152()
    ref = f4_reference_fingerprint()
    for K in cands:
        if fingerprint(K) == ref:
            return K, "order-1152 subgroup with W(F4) fingerprint"
    Z = as_subgroup(center(B2), C2)
    for K in cands:
        if is_subgroup_of(Z, as_subgroup(K, C2)):
            return K, "substitute: no W(F4) subgroup exists; first order-1152 subgroup containing Z(B2)"
    return cands[0], "substitute: first order-1152 subgroup"


def gl2f2_toy() -> BNPrepared:
    G, upper, swap = gl2_f2()
    B = subgroup(G, [G.locate_one(G.kind.make(upper))], name="B")
    N = subgroup(G, [G.locate_one(G.kind.make(swap))], name="N")
    return prepare(G, B, N, claimed_type="A1")


def c2_pair() -> BNPrepared:
    g = two_qubit_groups()
    C2, B2 = g["C2"], g["B2"]
    B, how = c2_pair_B()
    prep = prepare(C2, as_subgroup(B, C2, name="B"), B2, claimed_type="D5",
                   H=as_subgroup(center(B2), C2, name="Z(B2)"))
    prep.notes.insert(0, how)
    return prep


@lru_cache(maxsize=None)
def hatted_groups() -> dict[str, FiniteGroup]:
    """G^ = G'/Z(G') for the two-qubit groups, and the images inside C2^."""
    g = two_qubit_groups()
    C2 = g["C2"]
    D = derived_subgroup(C2, name="C2'")
    Z = center(D, name="Z(C2')")
    hat = quotient(D, Z, name="C2^")
    out = {"C2^": hat}
    for nm in ("C2L", "B2"):
        Dn = derived_subgroup(g[nm], name=f"{nm}'")
        out[f"{nm}^ intrinsic"] = quotient(Dn, center(Dn), name=f"{nm}'/Z")
        out[f"{nm}^"] = image_in_quotient(hat, as_subgroup(Dn, D), name=f"{nm}^")
    P2 = as_subgroup(intersection(C2, as_subgroup(D, C2), g["P2"]), D)
    out["P2~"] = image_in_quotient(hat, P2, name="P2~")
    return out


def c2_hat_split_pair() -> BNPrepared:
    h = hatted_groups()
    prep = prepare(h["C2^"], h["C2L^"], h["B2^"], claimed_type="A5", H=h["P2~"])
    return prep


@lru_cache(maxsize=None)
def three_qubit_symplectic() -> dict[str, FiniteGroup]:
    """Sp(6,2) as the image of C3, with the images of C3L and B3 inside it."""
    G = load_or_build("sp-C3", lambda: symplectic_image(generators("C3"), name="sp(C3)"))

    def image(name: str) -> FiniteGroup:
        ords = [G.locate_one(symplectic_of(action_table(m))) for m in generators(name)]
        return subgroup(G, ords, name=f"sp({name})")

    return {"G": G, "B": image("C3L"), "N": image("B3")}


def c3_pair() -> BNPrepared:
    s = three_qubit_symplectic()
    G = s["G"]
    prep = prepare(G, s["B"], s["N"], claimed_type="E6",
                   H=subgroup(G, [0], name="P3~/P3~"), modulo="P3~ (C3~ reduced to Sp(6,2))")
    return prep


def build(name: str) -> BNPrepared:
    builders = {"gl2f2-toy": gl2f2_toy, "c2-pair": c2_pair,
                "c2-hat-split-pair": c2_hat_split_pair, "c3-pair": c3_pair}
    if name not in builders:
        raise KeyError(f"unknown pair {name!r}; choose from {', '.join(PAIR_NAMES)}")
    return builders[name]()


def b_ords_in(prep: BNPrepared) -> np.ndarray:
    return ambient_ords(prep.B, prep.G)
