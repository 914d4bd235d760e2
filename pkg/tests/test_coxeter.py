import json

import pytest

from cliffbn.coxeter import (TYPES, CoxeterCertificate, CoxeterMatrix, NotInvolution, coxeter_matrix,
                             find_certificate, match_type, validate_certificate)
from cliffbn.refgroups import cyclic, product_group, symmetric, weyl_f4


def test_matrix_validation():
    with pytest.raises(ValueError):
        CoxeterMatrix(((1, 3), (2, 1)))
    with pytest.raises(ValueError):
        CoxeterMatrix(((2, 3), (3, 1)))
    assert TYPES["F4"].matrix[1, 2] == 4


def test_type_orders():
    assert {t: TYPES[t].order for t in ("A3", "D5", "E6", "E7", "F4")} == {
        "A3": 24, "D5": 1920, "E6": 51840, "E7": 2903040, "F4": 1152}


def test_s4_is_a3():
    G = symmetric(4)
    cert = find_certificate(G, TYPES["A3"])
    assert cert is not None and validate_certificate(G, cert)
    assert match_type(cert.matrix, TYPES["A3"])
    assert json.loads(cert.to_json())["type"] == "A3"


def test_non_involution_rejected():
    G = cyclic(4)
    with pytest.raises(NotInvolution):
        coxeter_matrix(G, [1])


def test_no_certificate_for_wrong_group():
    # same order as W(A2 x A1) = 12 but cyclic
    assert find_certificate(cyclic(12), TYPES["A1xA1"]) is None
    assert find_certificate(product_group(cyclic(2), cyclic(2)), TYPES["A1xA1"]) is not None


def test_tampered_certificate_fails_validation():
    G = symmetric(4)
    cert = find_certificate(G, TYPES["A3"])
    bad = CoxeterCertificate(cert.group, "A3", [cert.generators[0]] * 3, cert.matrix, 24)
    assert not validate_certificate(G, bad)


def test_weyl_f4_reference():
    W = weyl_f4()
    assert W.order == 1152
    assert find_certificate(W, TYPES["F4"]) is not None
