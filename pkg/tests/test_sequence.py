import pytest

from conftest import BINARY_2, W5, W13_ALMOST, W17, seq
from nearperfect.cyclotomic import CycInt
from nearperfect.sequence import (
    Sequence,
    autocorrelation,
    canonicalize,
    is_nps,
    lag_counts,
    load_sequence,
    orbit,
)


def test_period5_profile():
    prof = autocorrelation(W5)
    assert prof[0] == CycInt.integer(3, 5)
    assert all(v == CycInt.integer(3, 2) for v in prof[1:])


def test_almost_period13_profile():
    prof = autocorrelation(W13_ALMOST)
    assert prof[0] == CycInt.integer(3, 12)
    assert all(v.as_integer() == 2 for v in prof[1:])


def test_in_phase_counts_nonzero_entries():
    assert autocorrelation(W17)[0].as_integer() == 17
    assert autocorrelation(seq(5, [None, 1, None, 3]))[0].as_integer() == 2


def test_is_nps_examples():
    assert is_nps(BINARY_2, -2)
    assert is_nps(W17, 2)
    ones = seq(2, [0, 0, 0])
    assert autocorrelation(ones)[1].as_integer() == 3
    assert not is_nps(ones, 1)
    assert is_nps(ones, 3)


def test_mutated_witness_fails():
    for i in range(17):
        sym = list(W17.symbols)
        sym[i] = (sym[i] + 1) % 3
        assert not is_nps(Sequence(3, tuple(sym)), 2)


def test_lag_counts_brute():
    # product a_i * conj(a_{i+t}) = zeta^(b_i - b_{i+t})
    s = seq(5, [0, 3, None, 1, 4, 4])
    for t in range(6):
        want = [0] * 5
        for i in range(6):
            a, b = s.symbols[i], s.symbols[(i + t) % 6]
            if a is not None and b is not None:
                want[(a - b) % 5] += 1
        assert lag_counts(s, t) == want


def test_canonical_form_stable():
    c = canonicalize(W5)
    assert c.symbols == (0, 0, 0, 0, 1)
    for k in range(5):
        for m in range(3):
            assert canonicalize(W5.shift(k).scale(m)) == c
    assert len(orbit(W5)) == 15


def test_text_and_json_roundtrip():
    for s in (W5, W13_ALMOST):
        assert load_sequence(s.to_text()) == s
        assert load_sequence(s.to_json()) == s


def test_text_tokens():
    s = load_sequence("p=3 n=4\n1, z, z^2, 0\n")
    assert s.symbols == (0, 1, 2, None)


@pytest.mark.parametrize(
    "text",
    ["p=3 n=3\n1,z\n", "p=4 n=2\n1,z\n", "p=3 n=1\nz^3\n", "p=3 n=1\nq\n", "1,z"],
)
def test_bad_text(text):
    with pytest.raises(ValueError):
        load_sequence(text)


def test_modes():
    assert W5.mode == "pary" and W13_ALMOST.mode == "almost"
    assert W13_ALMOST.zero_count == 1 and W13_ALMOST.nonzero_count == 12
