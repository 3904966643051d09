import cmath
import json
import math

import numpy as np
import pytest

import fockladder as fl
from fockladder.verify import _cf_nnbs


GRID_BY_FAMILY = {family: (params, dim) for family, params, dim in fl.EXTENDED_GRID}


@pytest.mark.parametrize("family,params,dim", fl.ACCEPTANCE_GRID)
def test_acceptance_grid_suite_passes(family, params, dim):
    report = fl.run_family_suite(family, params, dim)
    assert report.passed, report.summary_line()
    assert report.family == family
    assert report.dim == dim
    assert len(report.checks) >= 10


@pytest.mark.parametrize("family", ["pacs", "intermediate"])
def test_extended_grid_suite_passes(family):
    params, dim = GRID_BY_FAMILY[family]
    report = fl.run_family_suite(family, params, dim)
    assert report.passed, report.summary_line()


def test_core_families_are_the_grid():
    assert len(fl.ACCEPTANCE_GRID) == 15
    assert tuple(f for f, _, _ in fl.ACCEPTANCE_GRID) == fl.CORE_FAMILIES
    assert fl.EXTENDED_GRID[: len(fl.ACCEPTANCE_GRID)] == fl.ACCEPTANCE_GRID
    extras = tuple(f for f, _, _ in fl.EXTENDED_GRID[len(fl.ACCEPTANCE_GRID) :])
    assert extras == ("pacs", "intermediate")


def test_suite_off_grid_parameters():
    assert fl.run_family_suite("binomial", {"eta": 0.3, "M": 10}, 32).passed
    # degenerate point: the vacuum is coherent with alpha = 0
    assert fl.run_family_suite("coherent", {"alpha": 0.0 + 0.0j}, 8).passed


def test_suite_rejects_unknown_family():
    with pytest.raises(fl.ParameterError, match="unknown family 'squeezed'"):
        fl.run_family_suite("squeezed", {"r": 0.5}, 32)


def test_suite_rejects_missing_and_stray_parameters():
    with pytest.raises(fl.ParameterError, match="requires parameter 'M'"):
        fl.run_family_suite("binomial", {"eta": 0.5}, 12)
    with pytest.raises(fl.ParameterError, match="unknown parameter 'gamma'"):
        fl.run_family_suite("binomial", {"eta": 0.5, "M": 4, "gamma": 0.1}, 12)


def test_suite_propagates_constructor_validation():
    with pytest.raises(fl.ParameterError, match=r"eta must lie in \(0,1\)"):
        fl.run_family_suite("binomial", {"eta": 1.5, "M": 4}, 12)


def test_svs_suite_covers_relation_and_disentangling():
    params, dim = GRID_BY_FAMILY["svs"]
    report = fl.run_family_suite("svs", params, dim)
    names = {c.name for c in report.checks}
    assert "pair-lowering-eigen" in names
    assert "disentangle-product-vs-exponential" in names
    assert "disentangle-exponential-vs-closed" in names
    by_name = {c.name: c for c in report.checks}
    assert "E76" in by_name["pair-lowering-eigen"].equation.split()


def test_finite_suite_check_composition():
    report = fl.run_family_suite("binomial", {"eta": 0.5, "M": 4}, 12)
    names = [c.name for c in report.checks]
    for expected in (
        "state-normalization",
        "distribution-crosscheck",
        "ladder-eigen-generic",
        "ladder-eigen-literal",
        "step-down-f",
        "step-down-g",
        "step-down-equality",
        "structure-fn-closed-form",
    ):
        assert expected in names


# --- constructor dispatch and closed-form routes ---


def test_build_state_matches_direct_constructors():
    via_registry = fl.build_state("polya", {"eta": 0.4, "gamma": 0.7, "M": 5}, 13)
    direct = fl.polya(0.4, 0.7, 5, 13)
    np.testing.assert_allclose(
        via_registry.amplitudes, direct.amplitudes, atol=1e-15
    )


def test_build_state_pbps_grid_convention():
    s = fl.build_state(
        "pegg_barnett_phase", {"theta0": 0.0, "m": 2, "M": 7}, 15
    )
    # theta_m = 0 + 2 pi 2/8; amplitudes are e^{i n theta_m}/sqrt(8)
    theta_m = math.pi / 2
    for n in range(8):
        assert s.amplitudes[n] == pytest.approx(
            cmath.exp(1j * n * theta_m) / math.sqrt(8), abs=1e-14
        )


def test_closed_form_routes_match_constructed_amplitudes():
    for family in ("binomial", "reciprocal_binomial", "generalized_geometric"):
        params, dim = GRID_BY_FAMILY[family]
        s = fl.build_state(family, params, dim)
        cf = fl.closed_form_coeffs(family, params, dim)
        window = np.array([cf(n) for n in range(dim)])
        np.testing.assert_allclose(window, s.amplitudes, atol=1e-13)


def test_nnbs_closed_form_is_normalized():
    cf = _cf_nnbs(0.3, 2)
    total = sum(abs(cf(n)) ** 2 for n in range(400))
    assert total == pytest.approx(1.0, abs=1e-13)
    assert cf(1) == 0.0


def test_build_gdo_dispatch():
    t = fl.build_gdo("binomial", {"eta": 0.5, "M": 4}, 12)
    assert t.n_min == 0
    assert t.structure_fn(1) == pytest.approx(4.0, abs=1e-12)
    t = fl.build_gdo("new_negative_binomial", {"eta": 0.3, "M": 2}, 32)
    assert t.n_min == 2
    t = fl.build_gdo("svs", {"r": 0.8, "theta": 0.5}, 64)
    assert t.dim == fl.sector_dim(64, 0)
    with pytest.raises(fl.ParameterError, match="unknown family"):
        fl.build_gdo("phase", {"theta": 0.1}, 8)


# --- derived vs printed ---


def test_errata_covers_all_six_finite_families():
    table = fl.errata_table()
    assert table["schema"] == "errata-1"
    assert [entry["family"] for entry in table["families"]] == [
        "binomial",
        "hypergeometric",
        "polya",
        "reciprocal_binomial",
        "pegg_barnett_phase",
        "generalized_geometric",
    ]
    for entry in table["families"]:
        assert len(entry["rows"]) == entry["M"] + 1
        assert "E29" in entry["equation"].split()


def test_errata_flags_mismatch_at_zero_for_real_families():
    table = fl.errata_table()
    for entry in table["families"][:3]:
        row0 = entry["rows"][0]
        assert row0["n"] == 0
        assert row0["derived"] == 0.0
        # the printed forms stay finite and nonzero where F must vanish
        assert math.isfinite(row0["printed_re"])
        assert abs(row0["printed_re"]) > 1.0
        assert not row0["match"]


def test_errata_flags_nonreal_printed_values():
    table = fl.errata_table()
    by_family = {entry["family"]: entry for entry in table["families"]}
    for family in ("reciprocal_binomial", "pegg_barnett_phase"):
        rows = by_family[family]["rows"]
        assert any(abs(r["printed_im"]) > 1e-6 for r in rows)
        assert not any(r["match"] for r in rows)


def test_errata_match_column_mechanics():
    # the printed and derived hypergeometric forms share numerator and
    # denominator and differ by a factor (M-n+1)^2/n, so they cross where
    # (M-n+1)^2 = n; M = 5 puts that at n = 4
    rows = fl.derived_vs_printed_rows(
        "hypergeometric", {"L": 40.0, "eta": 0.5, "M": 5}, 13
    )
    matches = [r["n"] for r in rows if r["match"]]
    assert matches == [4]


def test_errata_derived_column_is_oracle_consistent():
    rows = fl.derived_vs_printed_rows("binomial", {"eta": 0.5, "M": 4}, 12)
    for r in rows:
        n = r["n"]
        assert r["derived"] == pytest.approx(
            n * (4 - n + 1) * (1 - 0.5) / 0.5, abs=1e-12
        )


def test_errata_notes_quantify_the_corrections():
    notes = {note["equation"]: note for note in fl.errata_table()["notes"]}
    assert set(notes) == {"E21", "E22", "E62", "E81"}
    # corrected forms hold at working precision, printed ones fail badly
    for eq in ("E21", "E62"):
        assert notes[eq]["residual_printed"] > 1e-2
        assert notes[eq]["residual_derived"] < 1e-10
    assert notes["E22"]["printed_prefactor_norm"] == pytest.approx(
        notes["E22"]["recorded_constant"], abs=1e-12
    )
    assert notes["E22"]["printed_prefactor"] == pytest.approx(
        notes["E22"]["recorded_constant"] ** 2, abs=1e-12
    )
    assert notes["E81"]["residual_labeled_state"] > 1e-2
    assert notes["E81"]["residual_intended_state"] < 1e-10


def test_errata_table_serializes():
    text = json.dumps(fl.errata_table(), sort_keys=True)
    assert "derived" in text


# --- catalog coverage ---


def test_equation_catalog_is_fully_exercised():
    """Every cataloged identity is touched by a check or the errata."""
    used: set[str] = set()
    for family, params, dim in fl.EXTENDED_GRID:
        for check in fl.run_family_suite(family, params, dim).checks:
            used.update(check.equation.split())
    table = fl.errata_table()
    for entry in table["families"]:
        used.update(entry["equation"].split())
    for note in table["notes"]:
        used.update(note["equation"].split())
    assert used == set(fl.EQUATION_CATALOG)


def test_equation_catalog_shape():
    tags = set(fl.EQUATION_CATALOG)
    assert len(tags) == 85
    assert "E77" not in tags and "E78" not in tags
    for tag, description in fl.EQUATION_CATALOG.items():
        assert tag.startswith("E") and tag[1:].isdigit()
        assert description


# --- determinism and serialization ---


def test_reports_are_byte_identical_across_runs():
    first = fl.run_family_suite("binomial", {"eta": 0.5, "M": 4}, 12)
    second = fl.run_family_suite("binomial", {"eta": 0.5, "M": 4}, 12)
    assert first.to_json() == second.to_json()
    assert first.to_csv() == second.to_csv()


def test_errata_rows_survive_json_round_trip():
    report = fl.run_family_suite("binomial", {"eta": 0.5, "M": 4}, 12)
    rows = fl.derived_vs_printed_rows("binomial", {"eta": 0.5, "M": 4}, 12)
    tabled = report.with_table(rows)
    restored = fl.report_from_json(tabled.to_json())
    assert restored.derived_vs_printed == tabled.derived_vs_printed
    assert restored.to_json() == tabled.to_json()


def test_errata_rows_with_infinities_round_trip():
    rows = fl.derived_vs_printed_rows("reciprocal_binomial", {"theta": 0.7, "M": 4}, 12)
    assert math.isinf(rows[0]["printed_re"])
    report = fl.run_family_suite("reciprocal_binomial", {"theta": 0.7, "M": 4}, 12)
    restored = fl.report_from_json(report.with_table(rows).to_json())
    assert math.isinf(restored.derived_vs_printed[0]["printed_re"])
    assert "# derived_vs_printed" in report.with_table(rows).to_csv()


def test_grid_manifest_schema():
    manifest = fl.grid_manifest()
    assert len(manifest) == 15
    assert [entry["family"] for entry in manifest] == list(fl.CORE_FAMILIES)
    text = json.dumps(manifest)
    assert "generalized_geometric" in text
    ggs = manifest[5]
    assert isinstance(ggs["params"]["Y"], str)  # complex echoed as a+bi text
    assert ggs["dim"] == 14


def test_param_echo_formats():
    report = fl.run_family_suite("kerr", {"alpha": 1.0 + 0.0j, "theta": 0.3}, 64)
    assert report.params["alpha"] == "1.0"
    phase = fl.run_family_suite(
        "pegg_barnett_phase", {"theta0": 0.0, "m": 2, "M": 7}, 15
    )
    assert phase.params["theta_m"] == pytest.approx(math.pi / 2)
    params, dim = GRID_BY_FAMILY["intermediate"]
    echoed = fl.run_family_suite("intermediate", params, dim).params
    assert echoed["f"] == "exp(-0.2i*n)"
