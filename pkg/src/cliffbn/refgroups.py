"""Reference permutation groups for isomorphism-type comparisons."""
from __future__ import annotations

import numpy as np

from .group import FiniteGroup, closure
from .kinds import PermKind


def _perm_group(degree: int, gens, name: str) -> FiniteGroup:
    kind = PermKind(degree)
    return closure([kind.make(g) for g in gens], kind, name=name)


def _cycle(degree: int, pts) -> list[int]:
    img = list(range(degree))
    for i, x in enumerate(pts):
        img[x] = pts[(i + 1) % len(pts)]
    return img


def cyclic(n: int) -> FiniteGroup:
    return _perm_group(max(n, 1), [_cycle(max(n, 1), list(range(n)))], f"Z{n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 2:
        return _perm_group(max(n, 1), [list(range(max(n, 1)))], f"S{n}")
    gens = [_cycle(n, [0, 1])]
    if n > 2:
        gens.append(_cycle(n, list(range(n))))
    return _perm_group(n, gens, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    gens = [_cycle(n, [0, 1, k]) for k in range(2, n)]
    return _perm_group(n, gens or [list(range(n))], f"A{n}")


def direct_product(*factors: tuple[int, list]) -> tuple[int, list[list[int]]]:
    """Generators of a direct product from (degree, generator image lists) pairs."""
    total = sum(d for d, _ in factors)
    gens, offset = [], 0
    for d, fgens in factors:
        for g in fgens:
            img = list(range(total))
            for i, x in enumerate(g):
                img[offset + i] = offset + x
            gens.append(img)
        offset += d
    return total, gens


def _gens_of(G: FiniteGroup) -> tuple[int, list]:
    return G.kind.degree, [np.asarray(g).tolist() for g in G.gens]


def product_group(*groups: FiniteGroup, name: str | None = None) -> FiniteGroup:
    degree, gens = direct_product(*(_gens_of(G) for G in groups))
    return _perm_group(degree, gens, name or "x".join(G.name for G in groups))


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    return product_group(*[cyclic(p) for _ in range(k)], name=f"Z{p}^{k}")


def z2_x_s5() -> FiniteGroup:
    return product_group(cyclic(2), symmetric(5), name="Z2xS5")


def s3_cubed() -> FiniteGroup:
    return product_group(symmetric(3), symmetric(3), symmetric(3), name="S3^3")


def weyl_f4() -> FiniteGroup:
    """W(F4) acting on its 48 roots (coordinates doubled to stay integral)."""
    import itertools

    roots = set()
    for i in range(4):
        for s in (2, -2):
            v = [0] * 4
            v[i] = s
            roots.add(tuple(v))
    for i, j in itertools.combinations(range(4), 2):
        for s, t in itertools.product((2, -2), repeat=2):
            v = [0] * 4
            v[i], v[j] = s, t
            roots.add(tuple(v))
    roots.update(itertools.product((1, -1), repeat=4))
    roots = sorted(roots)
    index = {r: i for i, r in enumerate(roots)}
    simple = [(0, 2, -2, 0), (0, 0, 2, -2), (0, 0, 0, 2), (1, -1, -1, -1)]

    def reflection(a):
        a = np.array(a)
        return [index[tuple(np.array(r) - 2 * (np.array(r) @ a) * a // (a @ a))] for r in roots]

    return _perm_group(len(roots), [reflection(a) for a in simple], "W(F4)")


def gl2_f2() -> tuple[FiniteGroup, list[int], list[int]]:
    """GL2(2) on the nonzero vectors (1,0), (0,1), (1,1) with the upper
    triangular generator [[1,1],[0,1]] and the monomial swap [[0,1],[1,0]]."""
    upper = [0, 2, 1]      # e1 -> e1, e2 -> e1+e2, e1+e2 -> e2
    swap = [1, 0, 2]
    return _perm_group(3, [upper, swap], "GL2(2)"), upper, swap
