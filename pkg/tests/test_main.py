import json
import os

import pytest

from hochbv.config.settings import Settings
from hochbv.core.bv_chain_ops import theta_word
from hochbv.core.exactlinalg import parse_coordinate
from hochbv.core.frobenius import algebra_from_dict
from hochbv.core.hochschild import Truncation, count_words, make_word
from hochbv.core.session import registry
from hochbv.exceptions import UnknownOperationError
from hochbv.logging_config import LoggingSettings
from hochbv.main import main
from hochbv.utils.io_utils import chain_dump, report_json

from conftest import fixture_path


def read_json(directory, name):
    with open(os.path.join(directory, name)) as f:
        return json.load(f)


def test_validate_writes_reports(tmp_path):
    out = str(tmp_path)
    assert main(["validate", fixture_path("qx3_deg2"), "--level", "commutative", "--out", out]) == 0
    report = read_json(out, "validation.json")
    assert report["passed"] is True
    assert report["level"] == "commutative"
    assert read_json(out, "propositions.json")["passed"] is True


def test_validate_reports_failed_axioms(tmp_path):
    out = str(tmp_path)
    assert main(["validate", fixture_path("broken_nonsymmetric"), "--out", out]) == 1
    report = read_json(out, "validation.json")
    assert not report["passed"]
    assert not os.path.exists(os.path.join(out, "propositions.json"))


def test_missing_algebra_file_is_a_configuration_error(tmp_path):
    assert main(["validate", str(tmp_path / "missing.json"), "--out", str(tmp_path)]) == 2


def test_homology_with_induced_ranks(tmp_path):
    out = str(tmp_path)
    assert main(["homology", fixture_path("qx3_deg2"), "--max-length", "2", "--operator", "B", "--out", out]) == 0
    profile = read_json(out, "homology.json")
    assert profile["window"]["max_length"] == 2
    assert {"degree": 0, "length": 0, "dimension": 1, "exact": True} in profile["entries"]
    assert profile["induced"]
    assert all(r["operator"] == "B" for r in profile["induced"])


def test_check_selected_identities(tmp_path):
    out = str(tmp_path)
    args = ["check", fixture_path("qx3_deg2"), "--max-length", "2", "--identities", "D_squared, cup_unit", "--out", out]
    assert main(args) == 0
    reports = read_json(out, "identities.json")
    assert [r["identity"] for r in reports] == ["D_squared", "cup_unit"]
    assert all(r["status"] == "pass" for r in reports)
    assert all("wall_time" not in r for r in reports)


def test_check_reports_are_deterministic(tmp_path):
    contents = []
    for run in ("a", "b"):
        out = str(tmp_path / run)
        main(["check", fixture_path("qx2_deg1"), "--max-length", "2", "--identities", "theta_chain_map,K_commutativity", "--out", out])
        with open(os.path.join(out, "identities.json")) as f:
            contents.append(f.read())
    assert contents[0] == contents[1]


def test_default_catalog_passes_on_a_small_window(tmp_path):
    assert main(["check", fixture_path("qx2_deg2"), "--max-length", "1", "--out", str(tmp_path)]) == 0
    names = [r["identity"] for r in read_json(str(tmp_path), "identities.json")]
    assert "bv_deviation" in names
    assert "T_commutativity" in names
    assert "cup_commutativity_homotopy" in names


def test_failed_identity_exit_code(tmp_path):
    out = str(tmp_path)
    args = ["check", fixture_path("broken_nonsymmetric"), "--max-length", "2", "--identities", "h_cocommutativity", "--out", out]
    assert main(args) == 1
    report = read_json(out, "identities.json")[0]
    assert report["status"] == "fail"
    assert report["counterexample"]


def test_codomain_overflow_exit_code(tmp_path):
    args = [
        "check", fixture_path("qx3_deg2"), "--max-length", "2", "--identities", "h_cocommutativity",
        "--codomain-length", "1", "--out", str(tmp_path),
    ]
    assert main(args) == 3
    assert read_json(str(tmp_path), "identities.json")[0]["status"] == "needs-larger-window"


def test_unknown_identity_exit_code(tmp_path):
    assert main(["check", fixture_path("qx3_deg2"), "--identities", "no_such", "--out", str(tmp_path)]) == 2


def test_window_cap_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("HOCHBV_MAX_LENGTH", "2")
    assert main(["check", fixture_path("qx3_deg2"), "--max-length", "3", "--out", str(tmp_path)]) == 2
    assert not os.path.exists(os.path.join(str(tmp_path), "identities.json"))


def test_unknown_verb_is_an_argument_error():
    with pytest.raises(SystemExit):
        main(["integrate", fixture_path("qx3_deg2")])


def test_derive_coproduct_round_trip(tmp_path):
    out = str(tmp_path)
    assert main(["derive-coproduct", fixture_path("qx2_deg1"), "--out", out]) == 0
    derived = read_json(out, "derived_algebra.json")
    assert ["1", "x", "1", "-1"] in derived["coproduct"]
    again = algebra_from_dict(derived)
    assert again.coproduct == registry.algebra(fixture_path("qx2_deg1")).coproduct


def test_export_writes_coordinate_matrix(tmp_path, qx3):
    out = str(tmp_path)
    assert main(["export", fixture_path("qx3_deg2"), "--op", "D", "--max-length", "2", "--out", out]) == 0
    with open(os.path.join(out, "D.mtx")) as f:
        matrix = parse_coordinate(f.read())
    n = count_words(qx3, 2)
    assert matrix.shape == (n, n)
    assert (matrix @ matrix).is_zero()


def test_export_of_a_tensor_valued_operator(tmp_path, qx3):
    out = str(tmp_path)
    assert main(["export", fixture_path("qx3_deg2"), "--op", "theta", "--max-length", "1", "--out", out]) == 0
    with open(os.path.join(out, "theta.mtx")) as f:
        matrix = parse_coordinate(f.read())
    assert matrix.shape == (count_words(qx3, 1) ** 2, count_words(qx3, 1))


def test_session_operator_lookup(qx3):
    session = registry.open(fixture_path("qx3_deg2"), max_length=1, output_dir="unused")
    assert session.truncation == Truncation(1)
    assert session.operator("B").degree == -1
    with pytest.raises(UnknownOperationError):
        session.operator("Q")


def test_chain_dump_records(qx3):
    records = chain_dump(qx3, theta_word(qx3, make_word(qx3, 0)))
    assert records[0] == {"coefficient": "1", "words": [["1", []], ["x2", []]]}
    assert len(records) == 3


def test_report_json_sorts_keys():
    text = report_json({"b": 1, "a": [2]})
    assert text.index('"a"') < text.index('"b"')


def test_settings_use_the_environment_prefix(monkeypatch):
    monkeypatch.setenv("HOCHBV_LOG_LEVEL", "debug")
    assert LoggingSettings.model_config["env_prefix"] == "HOCHBV_"
    assert Settings.model_config["env_prefix"] == "HOCHBV_"
    assert LoggingSettings().log_level == "debug"
    assert Settings().log_level == "debug"
