from __future__ import annotations

import json
from pathlib import Path

import pytest

from curve_obstruct.cli import (
    ALL_CHECKS,
    CAVEAT_NECESSARY,
    batch,
    canonical_json,
    main,
    render_text,
    run_pipeline,
)
from curve_obstruct.curve_model import parse_document
from curve_obstruct.lattice import INAPPLICABLE, OBSTRUCTED, PASS

INPUTS = Path(__file__).resolve().parent.parent / "inputs"


def load(name: str):
    return parse_document((INPUTS / name).read_text(encoding="utf-8"))


def record(report, name: str):
    matches = [c for c in report.checks if c.name == name]
    assert len(matches) == 1, f"expected exactly one record for {name}"
    return matches[0]


def test_fano_pipeline_has_three_independent_obstructions():
    report = run_pipeline(load("fano.json"), primes=(2, 3, 5, 7))
    assert report.summary == OBSTRUCTED
    obstructed = [c.name for c in report.checks if c.verdict == OBSTRUCTED]
    assert obstructed == [
        "realizable_primes",
        "branched_cover_b2_obstruction",
        "kervaire_milnor_check",
    ]

    primes_record = record(report, "realizable_primes")
    assert primes_record.certificate["realizable"] == [2]
    assert primes_record.certificate["witnesses"]["2"] is not None

    b2 = record(report, "branched_cover_b2_obstruction").certificate["obstruction"]
    assert b2["chi_cover"] == 12
    assert b2["b2_cover"] == 10
    assert b2["negative_lift_count"] == 10
    assert b2["transverse_lift_square"] == 2

    km = record(report, "kervaire_milnor_check").certificate
    assert (km["square"], km["signature"]) == (-14, -6)
    assert km["square_mod_16"] != km["signature_mod_16"]


def test_six_cusp_quintic_obstructed_by_projection():
    report = run_pipeline(load("quintic_six_cusps.txt"))
    assert report.summary == OBSTRUCTED
    assert record(report, "adjunction_check").verdict == PASS
    assert record(report, "rational_cuspidal_check").verdict == PASS
    projection = record(report, "best_pivot_obstruction")
    assert projection.verdict == OBSTRUCTED
    pivots = projection.certificate["pivots"]
    assert any(p["total"] == 5 and p["slack"] == 4 for p in pivots)


def test_quintic_with_t25_obstructed():
    report = run_pipeline(load("quintic_four_cusps_one_t25.txt"))
    assert report.summary == OBSTRUCTED
    pivots = record(report, "best_pivot_obstruction").certificate["pivots"]
    obstructing = [p for p in pivots if p["obstructed"]]
    assert obstructing and all(p["pivot"] == "T(2,5)" for p in obstructing)


def test_smooth_cubic_passes_with_echoed_invariants():
    report = run_pipeline(load("smooth_cubic.txt"))
    assert report.summary == PASS
    assert record(report, "complement_h1").certificate["text"] == "Z/3"
    assert record(report, "adjunction_check").certificate["forced_genus"] == 1
    assert record(report, "rational_cuspidal_check").verdict == INAPPLICABLE
    assert record(report, "best_pivot_obstruction").verdict == INAPPLICABLE


def test_cuspidal_cubic_passes_including_classification():
    report = run_pipeline(load("cuspidal_cubic.txt"))
    assert report.summary == PASS
    family = record(report, "fdblmhn_family")
    assert family.verdict == PASS
    assert family.certificate["family"] == "(a, a+1, a+1)"
    assert record(report, "best_pivot_obstruction").verdict == PASS


def test_sextic_with_six_cusps_is_not_obstructed():
    report = run_pipeline(load("sextic_six_cusps.txt"))
    assert report.summary == PASS
    adjunction = record(report, "adjunction_check")
    assert adjunction.certificate["total_chi_g"] == -6
    assert record(report, "rational_cuspidal_check").verdict == INAPPLICABLE


def test_unicuspidal_classification_obstruction():
    doc = parse_document('{"kind": "curve", "degrees": [7], "singularities": ["T(2,31)"]}')
    report = run_pipeline(doc)
    assert report.summary == OBSTRUCTED
    assert record(report, "rational_cuspidal_check").verdict == PASS
    family = record(report, "fdblmhn_family")
    assert family.verdict == OBSTRUCTED and family.certificate["family"] is None


def test_reducible_curves_through_the_pipeline():
    # Two conics crossing transversely at four double points.
    doc = parse_document(
        "kind: curve\ndegrees: 2 2\nsingularities: O(2) O(2) O(2) O(2)\n"
    )
    report = run_pipeline(doc)
    assert report.summary == PASS
    assert record(report, "complement_h1").certificate["text"] == "Z + Z/2"
    assert record(report, "adjunction_check").certificate["total_chi_g"] == 4
    assert record(report, "rational_cuspidal_check").verdict == INAPPLICABLE

    # Line plus conic: coprime degrees leave the complement homology free.
    doc = parse_document('{"kind": "curve", "degrees": [1, 2], "singularities": ["O(2)", "O(2)"]}')
    report = run_pipeline(doc)
    assert report.summary == PASS
    assert record(report, "complement_h1").certificate["text"] == "Z"


def test_arrangement_without_even_subsets_is_inapplicable():
    doc = parse_document("kind: arrangement\nlines: 3\n")
    report = run_pipeline(doc)
    b2 = record(report, "branched_cover_b2_obstruction")
    assert b2.verdict == INAPPLICABLE
    assert b2.certificate["divisible_subsets"] == []
    # Tubing gives 3h - 2(e1 + e2 + e3): even e-coordinates, not characteristic.
    km = record(report, "kervaire_milnor_check")
    assert km.verdict == INAPPLICABLE
    assert report.summary == PASS


def test_report_invariants_across_inputs():
    names = [
        "fano.json",
        "quintic_six_cusps.txt",
        "quintic_four_cusps_one_t25.txt",
        "smooth_cubic.txt",
        "cuspidal_cubic.txt",
        "sextic_six_cusps.txt",
        "six_lines_triples_sharing_a_line.txt",
        "six_lines_triples_disjoint.txt",
    ]
    for name in names:
        report = run_pipeline(load(name), primes=(2, 3, 5, 7))
        any_obstructed = any(c.verdict == OBSTRUCTED for c in report.checks)
        assert (report.summary == OBSTRUCTED) == any_obstructed
        for check in report.checks:
            assert check.verdict in (PASS, OBSTRUCTED, INAPPLICABLE)
            if check.verdict == OBSTRUCTED:
                assert check.certificate, f"{name}:{check.name} lacks a certificate"
            if check.verdict == PASS and check.name not in (
                "weak_profile",
                "arrangement_euler",
                "complement_h1",
                "fdblmhn_family",
            ):
                assert check.caveat == CAVEAT_NECESSARY


def test_report_determinism(tmp_path):
    source = (INPUTS / "fano.json").read_text(encoding="utf-8")
    copy_a = tmp_path / "a.json"
    copy_b = tmp_path / "b.json"
    copy_a.write_text(source, encoding="utf-8")
    copy_b.write_text(source, encoding="utf-8")
    first = batch([str(copy_a)], primes=(2, 3, 5))[0]
    second = batch([str(copy_b)], primes=(2, 3, 5))[0]
    assert first.report is not None and second.report is not None
    assert canonical_json(first.report) == canonical_json(second.report)


def test_batch_preserves_order_and_isolates_errors(tmp_path):
    good = INPUTS / "smooth_cubic.txt"
    bad = tmp_path / "broken.txt"
    bad.write_text("kind: curve\ndegrees: x\n", encoding="utf-8")
    results = batch([str(good), str(bad), str(INPUTS / "fano.json")], parallelism=3, primes=(2, 3))
    assert [r.path for r in results] == [str(good), str(bad), str(INPUTS / "fano.json")]
    assert results[0].report is not None and results[0].report.summary == PASS
    assert results[1].error is not None and "line 2" in results[1].error
    assert results[2].report is not None and results[2].report.summary == OBSTRUCTED
    assert batch([]) == []


def test_branch_subset_cap_is_respected_and_echoed():
    report = run_pipeline(load("fano.json"), primes=(2,), max_branch_subset=3)
    b2 = record(report, "branched_cover_b2_obstruction")
    assert b2.verdict == INAPPLICABLE
    assert b2.certificate["max_branch_subset"] == 3
    assert b2.certificate["divisible_subsets"] == []


def test_checks_filter():
    report = run_pipeline(load("fano.json"), checks=["pair_count_check", "weak_profile"])
    assert [c.name for c in report.checks] == ["pair_count_check", "weak_profile"]
    assert report.summary == PASS
    with pytest.raises(ValueError):
        run_pipeline(load("fano.json"), checks=["no_such_check"])


def test_main_exit_codes(tmp_path, capsys):
    assert main(["--input", str(INPUTS / "smooth_cubic.txt")]) == 0
    capsys.readouterr()

    assert main(["--input", str(INPUTS / "fano.json"), "--primes", "2,3"]) == 1
    capsys.readouterr()

    bad = tmp_path / "broken.txt"
    bad.write_text("nonsense\n", encoding="utf-8")
    assert main(["--input", str(bad)]) == 2
    capsys.readouterr()

    with pytest.raises(SystemExit) as info:
        main(["--input", str(INPUTS / "fano.json"), "--checks", "bogus"])
    assert info.value.code == 2
    capsys.readouterr()

    with pytest.raises(SystemExit) as info:
        main(["--input", str(INPUTS / "fano.json"), "--primes", "2,4"])
    assert info.value.code == 2
    capsys.readouterr()

    with pytest.raises(SystemExit) as info:
        main(["--input", str(INPUTS / "fano.json"), "--primes", "2,x"])
    assert info.value.code == 2
    capsys.readouterr()


def test_main_structured_output_is_json(capsys):
    code = main(
        [
            "--input",
            str(INPUTS / "smooth_cubic.txt"),
            str(INPUTS / "cuspidal_cubic.txt"),
            "--format",
            "structured",
            "--jobs",
            "2",
        ]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert [entry["path"] for entry in payload] == [
        str(INPUTS / "smooth_cubic.txt"),
        str(INPUTS / "cuspidal_cubic.txt"),
    ]
    assert payload[0]["report"]["summary"] == PASS


def test_render_text_mentions_summary():
    result = batch([str(INPUTS / "smooth_cubic.txt")])[0]
    text = render_text(result)
    assert "summary: pass" in text
    assert "complement_h1" in text


def test_all_checks_are_unique():
    assert len(set(ALL_CHECKS)) == len(ALL_CHECKS)
