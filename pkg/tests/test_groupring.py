import itertools

import pytest

from conftest import BINARY_2, W5, W13_ALMOST, W17
from nearperfect.groupring import (
    DpdsInstance,
    DpdsParams,
    almost_params,
    difference_table,
    dpds_to_sequence,
    equivalence_check,
    from_json,
    group_ring_square,
    pary_params,
    satisfies_group_ring_identity,
    sequence_to_dpds,
    to_json,
    verify_dpds,
)


def brute_counts(elems, m, p):
    out = {(h, g): 0 for h in range(m) for g in range(p)}
    for a, b in itertools.product(elems, repeat=2):
        if a != b:
            out[((a[0] - b[0]) % m, (a[1] - b[1]) % p)] += 1
    return out


def test_difference_table_small():
    assert all(v == 0 for v in difference_table(DpdsInstance.of(2, 2, [(0, 0)])).values())
    t = difference_table(DpdsInstance.of(2, 2, [(0, 0), (1, 0)]))
    assert t[(1, 0)] == 2 and sum(t.values()) == 2


def test_difference_table_matches_brute():
    R, _ = sequence_to_dpds(W17, 2)
    assert difference_table(R) == brute_counts(list(R.elements), 17, 3)


def test_period5_witness_is_dpds():
    R, params = sequence_to_dpds(W5, 2)
    assert params.as_tuple() == (5, 3, 5, 3, 0, 1)
    assert len(R.elements) == 5
    assert verify_dpds(R, params)
    assert satisfies_group_ring_identity(R, params)


def test_perturbed_mu_reports_violations():
    R, params = sequence_to_dpds(W5, 2)
    bad = DpdsParams(5, 3, 5, 3, 0, 2)
    res = verify_dpds(R, bad)
    assert not res and res.violations
    assert all(got != want for _, got, want in res.violations)


def test_size_mismatch():
    R, params = sequence_to_dpds(W5, 2)
    res = verify_dpds(DpdsInstance.of(5, 3, list(R.elements)[:4]), params)
    assert not res.ok and not res.size_ok


def test_almost_witness():
    R, params = sequence_to_dpds(W13_ALMOST, 2)
    assert params.as_tuple() == (13, 3, 12, 5, 0, 3)
    assert len(R.elements) == 12 and verify_dpds(R, params)


def test_almost_zero_rotated_to_origin():
    rotated = W13_ALMOST.shift(5)
    R, params = sequence_to_dpds(rotated, 2)
    assert all(h != 0 for h, _ in R.elements) and verify_dpds(R, params)


def test_trivial_set_against_brute():
    m, p = 4, 3
    R = DpdsInstance.of(m, p, [(h, 0) for h in range(m)])
    table = difference_table(R)
    assert table == brute_counts(list(R.elements), m, p)
    # every nonidentity element of H is hit m times
    assert verify_dpds(R, DpdsParams(m, p, m, m, 0, 0))


def test_binary_pair():
    R, params = sequence_to_dpds(BINARY_2, -2)
    assert verify_dpds(R, params)


def test_divisibility_gate():
    with pytest.raises(ValueError):
        pary_params(6, 5, 0)
    with pytest.raises(ValueError):
        almost_params(13, 3, 2)
    assert almost_params(12, 3, 2).as_tuple() == (13, 3, 12, 5, 0, 3)


def test_roundtrip_sequence_set():
    R, params = sequence_to_dpds(W17, 2)
    assert dpds_to_sequence(R) == W17
    R2, params2 = from_json(to_json(R, params))
    assert R2 == R and params2 == params


def test_group_ring_square_identity_coefficient():
    R, _ = sequence_to_dpds(W17, 2)
    assert group_ring_square(R)[(0, 0)] == 17


@pytest.mark.parametrize(
    "n,p,gamma,mode,count",
    [(4, 3, 1, "pary", 81), (5, 2, 1, "pary", 32), (4, 3, 0, "almost", 81)],
)
def test_equivalence_examples(n, p, gamma, mode, count):
    rep = equivalence_check(n, p, gamma, mode)
    assert rep.checked == count and rep.holds


def test_elements_outside_group():
    with pytest.raises(ValueError):
        DpdsInstance.of(3, 3, [(3, 0)])
    with pytest.raises(ValueError):
        DpdsInstance.of(3, 3, [(1, 0), (1, 0)])
