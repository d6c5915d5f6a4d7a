"""The seven acceptance criteria, each printing one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or
``python3 tests/test_acceptance.py``.
"""

import sys
import time

import pytest

import test_properties as props
from conftest import BINARY_2, W5, W13_ALMOST, W17
from nearperfect import catalog
from nearperfect.certcheck import check_cited, parse_cited
from nearperfect.exclusion import ALMOST, PARY
from nearperfect.groupring import almost_params, equivalence_check, pary_params, sequence_to_dpds, verify_dpds
from nearperfect.multiplier import (
    lemma5_rhs,
    orbit_cover_feasible,
    orbits,
    prove_nonexistence_by_multiplier,
    try_multipliers,
)
from nearperfect.search import SearchSpec, search, space_size
from nearperfect.sequence import is_nps


@pytest.fixture
def report(capsys):
    def emit(num, title, ok, elapsed, limit=None, detail=""):
        bound = f" (limit {limit:g} s)" if limit else ""
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'} {title} [{elapsed:.2f} s{bound}] {detail}".rstrip()
        with capsys.disabled():
            print("\n" + line)

    return emit


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_1_witnesses(report):
    def run():
        ok = is_nps(W5, 2) and is_nps(W17, 2) and is_nps(W13_ALMOST, 2) and is_nps(BINARY_2, -2)
        R5, P5 = sequence_to_dpds(W5, 2)
        R17, P17 = sequence_to_dpds(W17, 2)
        R13, P13 = sequence_to_dpds(W13_ALMOST, 2)
        ok &= P5 == pary_params(5, 3, 2) and P17 == pary_params(17, 3, 2) and P13 == almost_params(12, 3, 2)
        return ok and all(verify_dpds(R, P) for R, P in ((R5, P5), (R17, P17), (R13, P13)))

    ok, dt = timed(run)
    report(1, "witness verification", ok and dt < 1, dt, 1)
    assert ok and dt < 1


def test_criterion_2_equivalence(report):
    def run():
        bad, checked = [], 0
        # admissible: |gamma| < n and at least one out-of-phase lag
        shapes = [(n, p, PARY) for n in range(2, 7) for p in (2, 3)]
        shapes += [(n, p, ALMOST) for n in range(1, 6) for p in (2, 3)]
        for n, p, mode in shapes:
            for gamma in range(-n + 1, n):
                rep = equivalence_check(n, p, gamma, mode)
                checked += rep.checked
                bad += rep.counterexamples
        return bad, checked

    (bad, checked), dt = timed(run)
    ok = not bad and dt < 120
    report(2, "equivalence oracle", ok, dt, 120, f"{checked} sequence/type pairs, {len(bad)} counterexamples")
    assert ok


HEADLINES = [
    ((45, 23, -1, PARY), "NotExists"),
    ((77, 7, -1, ALMOST), "NotExists"),
    ((23, 3, -1, PARY), "Open"),
    ((41, 3, -1, PARY), "Open"),
]


def test_criterion_3_exclusion_sweep(report):
    def run():
        hard, rows = 0, 0
        for gamma, mode in [(-1, PARY), (-1, ALMOST), (1, ALMOST), (2, ALMOST)]:
            table = catalog.generate_table(gamma, mode, range(2, 101))
            rows += len(table)
            hard += len(catalog.diff_against_golden(table, catalog.load_golden(gamma, mode)).hard)
        heads = all(catalog.status(*cell).status == want for cell, want in HEADLINES)
        return hard, rows, heads

    (hard, rows, heads), dt = timed(run)
    ok = hard == 0 and heads and dt < 10
    report(3, "exclusion sweep", ok, dt, 10, f"{rows} rows, {hard} disagreements, headlines {'ok' if heads else 'wrong'}")
    assert ok


def test_criterion_4_certificates(report):
    def run():
        cited, failed = 0, []
        for gamma, mode in catalog.GOLDEN_FILES:
            for row in catalog.load_golden(gamma, mode):
                if parse_cited(row["reason"]) is None:
                    continue
                cited += 1
                if not check_cited(row["n"], row["p"], row["gamma"], row["mode"], row["reason"]):
                    failed.append((row["n"], row["p"], row["gamma"], row["mode"]))
        return cited, failed

    (cited, failed), dt = timed(run)
    ok = cited > 0 and not failed
    report(4, "certificate re-verification", ok, dt, None, f"{cited} cited clauses, {len(failed)} rejected")
    assert ok


def test_criterion_5_multiplier(report):
    def run():
        ok = orbits(92, 3, 13).census() == {1: 12, 11: 24}
        ok &= lemma5_rhs(91, 3) == (2821, 2730)
        ok &= not orbit_cover_feasible(orbits(92, 3, 13), 91, 3)
        cert = prove_nonexistence_by_multiplier(91, 3, 13)
        ok &= cert is not None and cert.rule == "MultiplierInfeasible"
        others = {}
        for n, p in [(63, 31), (92, 7), (93, 23)]:
            att = try_multipliers(n, p)
            others[(n, p)] = att
            # either a certificate or an explicit Open with the t-list tried
            ok &= att.certificate is not None or bool(att.tried)
        return ok, others

    (ok, others), dt = timed(run)
    decided = sum(a.certificate is not None for a in others.values())
    ok = ok and dt < 5
    report(5, "multiplier reproduction", ok, dt, 5, f"(91,3) infeasible; {decided}/3 similar cases certified")
    assert ok


SEARCH_ROWS = [
    (SearchSpec(5, 3, 2), "Witness", 3**4, 1),
    (SearchSpec(17, 3, 2), "Witness", 3**16, 600),
    (SearchSpec(9, 7, 2), "ExhaustedNone", 7**8, 300),
    (SearchSpec(8, 2, 1, 1), "ExhaustedNone", None, None),
    (SearchSpec(8, 3, 1, 1), "ExhaustedNone", None, None),
    (SearchSpec(9, 7, 1, 1), "ExhaustedNone", None, None),
    (SearchSpec(14, 3, 1, 1), "ExhaustedNone", None, None),
    (SearchSpec(18, 2, 1, 1), "ExhaustedNone", None, None),
    (SearchSpec(9, 3, 2, 1), "ExhaustedNone", None, None),
    (SearchSpec(21, 3, 2, 1), "ExhaustedNone", None, None),
]


def test_criterion_6_search(report):
    def run():
        bad = []
        for spec, want, max_space, limit in SEARCH_ROWS:
            res, dt = timed(lambda: search(spec))
            if res.outcome != want:
                bad.append((spec, res.outcome))
            if max_space is not None and space_size(spec) > max_space:
                bad.append((spec, "space"))
            if limit is not None and dt >= limit:
                bad.append((spec, f"{dt:.1f} s"))
            if want == "Witness" and not is_nps(res.witness, spec.gamma):
                bad.append((spec, "bad witness"))
        return bad

    bad, dt = timed(run)
    report(6, "search reproduction", not bad, dt, None, f"{len(SEARCH_ROWS)} rows, {len(bad)} mismatches")
    assert not bad


def test_criterion_7_properties(report):
    def run():
        props.test_ring_axioms()
        props.test_hermitian_symmetry_and_mass()
        props.test_profile_invariant_under_shift_and_scale()
        shapes = list(props._shapes())
        for n, p, s in shapes:
            props.test_pruned_search_matches_enumeration(n, p, s)
        props.test_self_conjugacy_agreement()
        props.test_orbit_partition()
        return len(shapes)

    try:
        shapes, dt = timed(run)
        ok, detail = True, f"{shapes} search spaces <= 1e5 cross-checked"
    except AssertionError as e:
        ok, dt, detail = False, 0.0, str(e)[:200]
    report(7, "property suites", ok, dt, None, detail)
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
