import pytest

from nearperfect.exclusion import (
    ALMOST,
    PARY,
    Certificate,
    check_determinant,
    check_divisibility,
    full_exclusion,
    gram_determinant,
)
from nearperfect.search import SearchSpec, search


def test_divisibility():
    assert check_divisibility(5, 3, 2) is None
    c = check_divisibility(6, 5, 0)
    assert c.rule == "Divisibility" and c.bound_lhs == 6
    assert check_divisibility(13, 3, 2, ALMOST).rule == "Divisibility"
    assert check_divisibility(12, 3, 2, ALMOST) is None


def test_determinant():
    assert gram_determinant(5, -2) == -3 * 7**4
    c = check_determinant(5, -2)
    assert c.rule == "DeterminantNegative" and c.bound_lhs < 0
    assert check_determinant(2, -2) is None
    assert check_determinant(10, -1) is None


def test_determinant_matches_numpy():
    np = pytest.importorskip("numpy")
    for n in range(2, 9):
        for g in range(-4, 4):
            M = np.full((n, n), g, dtype=float)
            np.fill_diagonal(M, n)
            assert round(np.linalg.det(M)) == gram_determinant(n, g)


def test_table_examples():
    c = full_exclusion(5, 2, -1)
    assert (c.rule, c.q, c.u, c.r) == ("T2ii", 3, 5, 1)
    assert c.narrative == "not exists by Theorem 2 (ii) with q=3 and u=5"

    c = full_exclusion(45, 23, -1)
    assert (c.rule, c.q, c.u) == ("T2iii", 23, 9)
    assert c.bound_lhs == 23 and c.bound_rhs == 4 * 45 // 9

    assert full_exclusion(13, 3, 1) is None
    assert full_exclusion(5, 3, 2) is None

    c = full_exclusion(77, 7, -1, ALMOST)
    assert (c.rule, c.q, c.u) == ("T4ii", 3, 2)
    assert c.narrative == "not exists by Theorem 4 (ii) with q=3 and u=2"

    c = full_exclusion(4, 2, 1, ALMOST)
    assert (c.rule, c.q, c.u) == ("T4iii_b", 3, 5)
    assert c.narrative == "not exists by Theorem 4 (iii) resp. with q=3 and u=5"

    assert full_exclusion(12, 3, 2, ALMOST) is None


def test_pipeline_order():
    # determinant rule, then divisibility, then the theorems
    assert full_exclusion(6, 5, -2).rule == "DeterminantNegative"
    assert full_exclusion(6, 5, -1).rule == "Divisibility"
    assert full_exclusion(5, 2, -1).rule == "T2ii"


def test_certificate_roundtrip():
    c = full_exclusion(45, 23, -1)
    assert Certificate.from_dict(c.to_dict()) == c
    assert set(c.to_dict()) >= {"rule", "q", "u", "r", "lhs", "rhs", "narrative"}


def test_gamma_out_of_range_only_determinant():
    assert full_exclusion(3, 2, 5, PARY) is None
    assert full_exclusion(3, 2, -5, PARY).rule == "DeterminantNegative"


def _exists(n, p, gamma, s):
    res = search(SearchSpec(n, p, gamma, s))
    assert res.outcome != "Aborted"
    return res.outcome == "Witness"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_never_excludes_an_existing_sequence(p):
    # exhaustive search is the oracle: whatever it finds must not be excluded
    for n in range(2, 9 if p < 5 else 7):
        for gamma in range(-n + 1, n):
            if _exists(n, p, gamma, 0):
                assert full_exclusion(n, p, gamma, PARY) is None, (n, p, gamma)
            if n <= 7 and _exists(n, p, gamma, 1):
                assert full_exclusion(n, p, gamma, ALMOST, 1) is None, (n, p, gamma, "almost")
