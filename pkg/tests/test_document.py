from __future__ import annotations

import json

import pytest

from conftest import FIXTURES
from morphdesign.document import parse_problem, problem_schema, serialize_problem
from morphdesign.errors import DocumentError


def test_example1_counts(example1):
    model = example1.to_model()
    assert len(model.leaves()) == 5
    assert sum(len(leaf.alternatives) for leaf in model.leaves()) == 20
    assert len(example1.compatibility) == 4  # (M,E), (W,D), (W,O), (D,O)


def test_all_fixtures_round_trip_bit_identically():
    for name in ("example1", "example2", "example3"):
        original = (FIXTURES / f"{name}.json").read_text(encoding="utf-8")
        first = serialize_problem(parse_problem(original))
        second = serialize_problem(parse_problem(first))
        assert first == second == original


def test_round_trip_preserves_every_section(example1):
    doc = parse_problem(serialize_problem(example1))
    assert doc == example1


def test_empty_file_is_a_syntax_error():
    with pytest.raises(DocumentError) as err:
        parse_problem(b"")
    assert "malformed JSON" in str(err.value)
    assert err.value.line == 1


def test_syntax_error_reports_line():
    with pytest.raises(DocumentError) as err:
        parse_problem('{\n"name": }')
    assert err.value.line == 2


def test_unknown_fields_are_rejected(example1):
    raw = json.loads(serialize_problem(example1))
    raw["favourite_color"] = "blue"
    with pytest.raises(DocumentError) as err:
        parse_problem(json.dumps(raw))
    assert "schema violation" in str(err.value)


def test_out_of_scale_estimate_names_the_alternative(example1):
    raw = json.loads(serialize_problem(example1))
    raw["tree"]["children"][0]["children"][0]["alternatives"][0]["estimates"][0] = 9
    with pytest.raises(DocumentError) as err:
        parse_problem(json.dumps(raw))
    assert "M/M1" in str(err.value)
    assert "9" in str(err.value)


def test_unknown_scenario_reference_in_stages(example1):
    raw = json.loads(serialize_problem(example1))
    raw["stages"][0]["scenario"] = "wishful"
    with pytest.raises(DocumentError) as err:
        parse_problem(json.dumps(raw))
    assert "unknown scenario" in str(err.value)


def test_partial_scenario_priorities_are_rejected(example1):
    raw = json.loads(serialize_problem(example1))
    del raw["scenarios"]["provider"]["priorities"]["M"]["M1"]
    with pytest.raises(DocumentError) as err:
        parse_problem(json.dumps(raw))
    assert "missing alternatives" in str(err.value)


def test_weights_arity_checked(example1):
    raw = json.loads(serialize_problem(example1))
    raw["scenarios"]["provider"]["weights"] = [-1, 1]
    with pytest.raises(DocumentError):
        parse_problem(json.dumps(raw))


def test_knapsack_cost_criterion_range(example1):
    raw = json.loads(serialize_problem(example1))
    raw["knapsack"]["cost_criterion"] = 7
    with pytest.raises(DocumentError):
        parse_problem(json.dumps(raw))


def test_format_version_is_pinned(example1):
    raw = json.loads(serialize_problem(example1))
    raw["format_version"] = "2"
    with pytest.raises(DocumentError):
        parse_problem(json.dumps(raw))


def test_non_utf8_is_rejected():
    with pytest.raises(DocumentError):
        parse_problem(b"\xff\xfe{}")


def test_scenario_weights_reorient_criteria(example1):
    base = example1.to_model()
    stage2 = example1.to_model("stage2")
    assert [c.weight for c in base.criteria] == [-1, 1, -1, 1]
    assert [c.weight for c in stage2.criteria] == [-1, 3, -1, 3]
    # same tree and compatibilities either way
    assert stage2.root == base.root
    assert stage2.compat == base.compat


def test_schema_is_valid_jsonschema():
    import jsonschema

    jsonschema.Draft202012Validator.check_schema(problem_schema())


def test_fixture_compatibility_values_spot_checks(example1, example2, example3):
    # the two reconciled entries differ between fixtures; everything else
    # matches the shared tables
    m1 = example1.to_model()
    m2 = example2.to_model()
    m3 = example3.to_model()
    assert m1.pair_value("D", "D2", "O", "O3") == 0
    assert m3.pair_value("D", "D2", "O", "O3") == 3
    assert m1.pair_value("D", "D3", "O", "O5") == 2
    assert m2.pair_value("D", "D3", "O", "O5") == 3
    for model in (m1, m2, m3):
        assert model.pair_value("D", "D2", "O", "O5") == 1
        assert model.pair_value("W", "W2", "O", "O3") == 0
        assert model.pair_value("W", "W1", "D", "D3") == 3
        assert model.pair_value("M", "M2", "E", "E2") == 3
