from fractions import Fraction

import pytest

import lienil


def test_min_index():
    assert lienil.min_index("E2*E2") == 4
    assert lienil.min_index("E2") == 3
    with pytest.raises(lienil.CapExceeded):
        lienil.min_index("E3*E3", cap=3)


def test_check_identity():
    assert lienil.check_identity("E2", "[x1,x2,x3]")["is_identity"]
    verdict = lienil.check_identity("E2", "[x1,x2]")
    assert not verdict["is_identity"]
    assert "witness" in verdict


def test_errors_map_to_python():
    with pytest.raises(lienil.ParseError):
        lienil.min_index("E2**")
    with pytest.raises(lienil.Error):
        lienil.decompose(9, 3)


def test_codimensions():
    assert lienil.quotient_dims(4, 3) == (18, 3)
    assert lienil.gamma_by_evaluation(4, "E*E2") == 9


def test_decompose():
    terms = dict(lienil.decompose(4, 4))
    assert terms == {(3, 1): 1, (2, 2): 1, (2, 1, 1): 1, (1, 1, 1, 1): 1}
    assert sum(m * lienil.hook_dim(lam) for lam, m in terms.items()) == 9
    assert lienil.character([2, 1], [3]) == -1


def test_did():
    assert sum(lienil.hook_dim(lam) * m for lam, m in lienil.did_gamma(6, 1)) == 25


def test_bounds():
    a3 = lienil.bound_poly(3)
    assert len(a3) == 5 and a3[-1] == Fraction(10, 3)
    r, _ = lienil.closed_form(3)
    assert r[-1] == Fraction(5, 24)
    assert lienil.combined_bounds(4) == (Fraction(58, 45), Fraction(29, 1440))


def test_criterion():
    result = lienil.run_criterion(2)
    assert result["id"] == 2 and result["passed"]
