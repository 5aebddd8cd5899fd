"""Determinant-sign evidence and the S3 non-existence record."""

import json
from fractions import Fraction as F

import pytest

from bhkovacic.algebra import Poly, rational_roots
from bhkovacic.evidence import (
    _ratio_system_polynomial,
    cross_check_cell,
    degree_to_s,
    det_sequence,
    family_by_label,
    s3_nonexistence,
    scan,
)
from bhkovacic.master import special_frequency


def test_degree_to_s():
    assert degree_to_s("G3", 1) == 2
    assert degree_to_s("G3", 0) == F(3, 2)
    assert degree_to_s("E3", 4) == 3
    assert degree_to_s("E7", 6) == 3
    with pytest.raises(ValueError):
        degree_to_s("S3", 1)


def test_g3_example_sequence():
    seq = det_sequence("G3", 2, 1)  # s = 2
    assert seq.values[0] == 1  # empty determinant
    assert seq.values[1] == -20
    assert seq.values[2] == 420
    assert seq.sign_pattern_ok and seq.final_sign_ok


def test_sequence_matches_direct_determinants():
    # two-term recurrence vs fraction-free determinants for every n <= 12
    import math

    from bhkovacic.auxode import build_auxiliary, tridiagonal_system
    from bhkovacic.elimination import bareiss_determinant, integerize_rows
    from bhkovacic.master import ModeSpec, PerturbationKind

    kinds = {"G": PerturbationKind.GRAVITATIONAL, "E": PerturbationKind.ELECTROMAGNETIC}
    for family, l, d in (("G3", 2, 12), ("E3", 1, 12), ("E7", 1, 12), ("E7", 2, 9)):
        s = degree_to_s(family, d)
        ode = build_auxiliary(family_by_label(family), ModeSpec(kinds[family[0]], l, s))
        seq = det_sequence(family, l, d)
        for n in range(0, d + 2):
            rows = tridiagonal_system(ode, n - 1) if n else []
            if n == 0:
                assert seq.values[0] == 1
                continue
            scale = 1
            for row in rows:
                den = 1
                for v in row:
                    den = den * v.denominator // math.gcd(den, v.denominator)
                scale *= den
            det = F(bareiss_determinant(integerize_rows(rows)), scale)
            assert F(seq.values[n]) == det, (family, l, d, n)


def test_cross_check_cell_example():
    check = cross_check_cell("E7", 1, 2)
    assert check["agree"]
    assert check["recurrence_det"] == -24
    assert check["nullspace_dim"] == 0


def test_magnitude_log_matches_sequence():
    # logged observation only; the streamed index equals the stored one
    seq = det_sequence("G3", 3, 25)
    vals = seq.values
    n0 = seq.magnitudes_increasing_from
    assert all(abs(vals[k]) > abs(vals[k - 1]) for k in range(n0 + 1, len(vals)))
    assert n0 == 0 or abs(vals[n0]) <= abs(vals[n0 - 1])


def test_e7_intermediate_zero_is_flagged_not_fatal():
    # at d = l(l+1) the first minor vanishes; the full determinant decides
    seq = det_sequence("E7", 1, 2)
    assert seq.values[1] == 0
    assert not seq.sign_pattern_ok
    assert seq.final_sign_ok and seq.D_last == -24


def test_scan_small_grid():
    report = scan(l_max=4, d_max=40)
    assert report.all_final_signs_ok
    assert report.cross_checks_ok
    assert report.flags_resolved_nonzero
    assert report.cells == (3 + 4 + 4) * 41  # G3: l=2..4, E3/E7: l=1..4


def test_scan_g3_full_pattern_small():
    # G3 and E3 satisfy even the intermediate pattern on the sampled grid
    for family, lmin in (("G3", 2), ("E3", 1)):
        for l in range(lmin, 6):
            for d in (0, 1, 5, 17, 40):
                assert det_sequence(family, l, d).sign_pattern_ok, (family, l, d)


def test_g3_special_frequency_cells():
    # the algebraically special G3 cells d = 2s - 3 stay nonzero
    for l in (2, 3, 4, 5):
        s = special_frequency(l)
        d = int(2 * s - 3)
        seq = det_sequence("G3", l, d)
        assert seq.final_sign_ok and seq.D_last != 0


def test_scan_report_streaming(tmp_path):
    out = tmp_path / "cells.json"
    report = scan(families=("G3",), l_max=2, d_max=5, out=str(out))
    cells = json.loads(out.read_text())
    assert len(cells) == report.cells == 6
    seq0 = det_sequence("G3", 2, 0)
    assert cells[0] == {
        "family": "G3",
        "l": 2,
        "s": "3/2",
        "d": 0,
        "sign_ok": True,
        "final_sign_ok": True,
        "D_last": str(seq0.D_last),
        "mag_increasing_from": seq0.magnitudes_increasing_from,
    }


def test_scan_empty_family_list():
    report = scan(families=(), l_max=4, d_max=10)
    assert report.cells == 0 and report.all_final_signs_ok


def test_scan_worker_fanout_matches_serial():
    serial = scan(families=("E7",), l_max=2, d_max=30)
    fanned = scan(families=("E7",), l_max=2, d_max=30, workers=2)
    assert serial.cells == fanned.cells
    assert serial.flagged_count == fanned.flagged_count
    assert serial.final_sign_violations == fanned.final_sign_violations


def test_scan_honors_thread_env(monkeypatch, tmp_path):
    monkeypatch.setenv("BHK_THREADS", "2")
    out = tmp_path / "cells.json"
    report = scan(families=("G3",), l_max=3, d_max=10, out=str(out))
    assert report.cells == 2 * 11
    cells = json.loads(out.read_text())
    assert [c["l"] for c in cells] == [2] * 11 + [3] * 11  # deterministic merge


# ---------------------------------------------------------------------------
# S3
# ---------------------------------------------------------------------------


def test_ratio_system_polynomial():
    # matched variant: numerator 2 s^2 (1 - 2s); solution set {0, 1/2}
    for L in (0, 2, 6, 12):
        poly = _ratio_system_polynomial(L, w_denom_quadratic=True)
        assert poly == Poly([0, 0, 2, -4])
        assert rational_roots(poly) == [F(0), F(1, 2)]
        # the direct w-frame ratio makes the condition vacuous
        assert _ratio_system_polynomial(L, w_denom_quadratic=False).is_zero()


def test_s3_record_quick():
    record = s3_nonexistence(two_s_max=10, l_max=4)
    assert record.ratio_solution_set == (F(0), F(1, 2))
    assert record.matched_ratio_solution_set == (F(0), F(1, 2))
    assert record.direct_system_trivial
    assert record.half_s_degree0_fails
    assert record.oracle_all_trivial
    assert record.oracle_cells == 9 * 5
    assert record.all_ok


def test_s3_oracle_catches_planted_solution():
    # sanity for the oracle: the G8 equation at its special frequency has a
    # nontrivial nullspace, so an S3-style sweep over it would not be silent
    from bhkovacic.auxode import brute_force_polynomial_solutions, build_auxiliary
    from bhkovacic.master import ModeSpec, PerturbationKind

    g8 = family_by_label("G8")
    ode = build_auxiliary(g8, ModeSpec(PerturbationKind.GRAVITATIONAL, 2, F(4)))
    assert brute_force_polynomial_solutions(ode, 1)
