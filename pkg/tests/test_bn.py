import numpy as np
import pytest

from cliffbn.bn import BNVerifier, minimal_involution_generators, with_random_representatives
from cliffbn.pairs import PAIR_NAMES, build, gl2f2_toy


@pytest.fixture(scope="module")
def toy():
    return gl2f2_toy()


def test_pair_names():
    assert set(PAIR_NAMES) == {"gl2f2-toy", "c2-pair", "c2-hat-split-pair", "c3-pair"}
    with pytest.raises(KeyError):
        build("nope")


def test_toy_pair_is_bn(toy):
    v = BNVerifier(toy)
    rep = v.report()
    assert toy.G.order == 6 and toy.B.order == 2 and toy.W.order == 2
    assert rep["axiom_i"]["holds"]
    assert all(x["holds"] for x in rep["axiom_ii"])
    b = rep["bruhat"]
    assert b["double_cosets"] == 2 and b["injective"] and b["covers_G"]
    assert b["sizes"] == [2, 4]
    assert rep["cell_rules"]["a_holds"] and rep["cell_rules"]["b_holds"] and rep["cell_rules"]["c_holds"]
    assert rep["split"]["iii"]["holds"] and rep["split"]["iv"]["holds"]


def test_toy_sampled_matches_exhaustive(toy):
    v = BNVerifier(toy)
    a = v.axiom_i("sampled", samples=500, seed=7)
    b = v.axiom_i("sampled", samples=500, seed=7)
    assert a.to_dict() == b.to_dict() and a.holds


@pytest.mark.parametrize("seed", range(5))
def test_representative_independence(toy, seed):
    base = BNVerifier(toy).report()
    other = BNVerifier(with_random_representatives(toy, seed)).report()
    for key in ("axiom_i", "axiom_ii", "bruhat", "cell_rules", "split"):
        a, b = base[key], other[key]
        if key == "axiom_ii":
            a = [x["holds"] for x in a]
            b = [x["holds"] for x in b]
        if key == "axiom_i":
            a = {k: v for k, v in a.items() if k != "counterexamples"}
            b = {k: v for k, v in b.items() if k != "counterexamples"}
        assert a == b


def test_minimal_involutions_generate(toy):
    S = minimal_involution_generators(toy.W)
    assert len(S) == 1


def test_lagrange_on_c2_pair():
    prep = build("c2-pair")
    for K in (prep.B, prep.N, prep.H, prep.meet, prep.W):
        assert prep.G.order % K.order == 0 or K is prep.W
    assert prep.N.order % prep.H.order == 0
    assert prep.W.order * prep.H.order == prep.N.order
    v = BNVerifier(prep)
    assert sum(v.sizes) == prep.G.order
    assert all(s % prep.B.order == 0 for s in v.sizes)


def test_representative_independence_c2_hat():
    prep = build("c2-hat-split-pair")
    a = BNVerifier(prep).axiom_i()
    b = BNVerifier(with_random_representatives(prep, 11)).axiom_i()
    assert (a.pairs_failing, a.pairs_total) == (b.pairs_failing, b.pairs_total)
    assert BNVerifier(prep).bruhat_census() == BNVerifier(with_random_representatives(prep, 11)).bruhat_census()
