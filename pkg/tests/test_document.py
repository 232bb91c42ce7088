"""JSON task documents: scalar grammar, round trips, task dispatch."""

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weightfilt.document import (
    FORMAT_TAG,
    Document,
    DocumentError,
    KNOWN_TASKS,
    centered_filtration_from_json,
    centered_filtration_to_json,
    emit_report,
    filtration_from_json,
    filtration_to_json,
    matrix_from_json,
    matrix_to_json,
    parse,
    parse_scalar,
    run_task,
    scalar_to_str,
    subspace_from_json,
    subspace_to_json,
    vector_from_json,
    vector_to_json,
)
from weightfilt.exact import GaussianRational, Matrix, Subspace

from strategies import small_fractions

import strategies as strat


class TestScalarGrammar:
    @given(x=small_fractions)
    def test_rational_round_trip(self, x):
        assert parse_scalar(scalar_to_str(x)) == x

    @given(a=small_fractions, b=small_fractions)
    def test_gaussian_round_trip(self, a, b):
        z = GaussianRational(a, b)
        back = parse_scalar(scalar_to_str(z))
        if b == 0:
            assert back == a  # canonical form drops the vanishing imaginary part
        else:
            assert back == z

    @pytest.mark.parametrize(
        "text",
        [
            "2/4",      # not reduced
            "3/1",      # redundant denominator
            "1/0",      # zero denominator
            "-0",       # negative zero
            "0/2",      # unreduced zero
            "1/-2",     # sign in the denominator
            "1+0i",     # vanishing imaginary part must be dropped
            "1+-2i",    # sign belongs to the separator only
            "i",        # bare imaginary unit is not in the grammar
            "1.5",      # decimals are out
            " 1",       # whitespace is significant
            "",
            "+1",
        ],
    )
    def test_rejected_forms(self, text):
        with pytest.raises(DocumentError):
            parse_scalar(text)

    def test_rejection_carries_the_path(self):
        with pytest.raises(DocumentError) as exc:
            parse_scalar("2/4", "$.payload.matrix[0][1]")
        assert "$.payload.matrix[0][1]" in str(exc.value)

    def test_accepted_forms(self):
        assert parse_scalar("0") == Fraction(0)
        assert parse_scalar("-7/3") == Fraction(-7, 3)
        assert parse_scalar("2-3i") == GaussianRational(2, -3)
        assert parse_scalar("0+1/2i") == GaussianRational(0, Fraction(1, 2))

    def test_non_string_rejected(self):
        with pytest.raises(DocumentError):
            parse_scalar(1.5)


class TestContainerRoundTrips:
    @given(data=st.data())
    def test_matrix_round_trip(self, data):
        m = data.draw(strat.matrices(3, 2))
        assert matrix_from_json(matrix_to_json(m), "$") == m

    def test_vector_round_trip(self):
        v = (Fraction(1, 2), GaussianRational(0, -2), Fraction(0))
        assert vector_from_json(vector_to_json(v), "$") == v

    def test_ragged_matrix_rejected(self):
        with pytest.raises(DocumentError) as exc:
            matrix_from_json([["1", "2"], ["3"]], "$.m")
        assert "$.m" in str(exc.value)

    @given(data=st.data())
    def test_subspace_round_trip(self, data):
        s = data.draw(strat.subspaces(4))
        assert subspace_from_json(subspace_to_json(s), 4, "$") == s

    @given(data=st.data())
    def test_filtration_round_trip(self, data):
        f = data.draw(strat.filtrations(3, fractional=True))
        assert filtration_from_json(filtration_to_json(f), "$") == f

    def test_centered_filtration_round_trip(self):
        from weightfilt.fixtures import fixture_Vk

        w = fixture_Vk(2).weight_filtration()
        assert centered_filtration_from_json(centered_filtration_to_json(w), "$") == w

    def test_filtration_requires_spans(self):
        with pytest.raises(DocumentError):
            filtration_from_json(
                {"ambient_dim": 2, "steps": [{"index": "0", "basis": "nope"}]}, "$"
            )

    def test_gaussian_filtration_index_rejected(self):
        with pytest.raises(DocumentError) as exc:
            filtration_from_json(
                {"ambient_dim": 1, "steps": [{"index": "1+2i", "basis": [["1"]]}]}, "$.f"
            )
        assert "index" in str(exc.value)


class TestDocumentParsing:
    def test_parse_round_trip(self):
        doc = Document("fixture-info", {"name": "V2"})
        assert parse(doc.to_json()) == doc

    def test_known_tasks_are_fixed(self):
        assert len(KNOWN_TASKS) == 9
        with pytest.raises(DocumentError):
            Document("check-everything", {})

    def test_format_tag_enforced(self):
        bad = json.dumps({"format": "weightfilt.v0", "task": "fixture-info", "payload": {}})
        with pytest.raises(DocumentError) as exc:
            parse(bad)
        assert "$.format" in str(exc.value)

    def test_invalid_json_is_a_document_error(self):
        with pytest.raises(DocumentError):
            parse("{not json")

    def test_missing_payload(self):
        with pytest.raises(DocumentError):
            parse(json.dumps({"format": FORMAT_TAG, "task": "fixture-info"}))


def _monodromy_doc(matrix_rows, center=0):
    return Document(
        "check-monodromy",
        {"operator": matrix_rows, "center": center},
    )


class TestRunTask:
    def test_monodromy_report_shape(self):
        rep = run_task(_monodromy_doc([["0", "1"], ["0", "0"]]))
        assert rep["format"] == FORMAT_TAG
        assert rep["task"] == "check-monodromy"
        assert rep["verdict"] is True
        assert rep["details"]["filtration"]["graded_dims"] == {"-1": 1, "1": 1}

    def test_monodromy_rejects_non_nilpotent(self):
        with pytest.raises(DocumentError):
            run_task(_monodromy_doc([["1", "0"], ["0", "1"]]))

    def test_compat_reports_both_routes(self):
        e1, e2, diag = ["1", "0"], ["0", "1"], ["1", "1"]
        full = [["1", "0"], ["0", "1"]]
        payload = {
            "filtrations": [
                {
                    "ambient_dim": 2,
                    "steps": [
                        {"index": "0", "basis": [line]},
                        {"index": "1", "basis": full},
                    ],
                }
                for line in (e1, e2, diag)
            ],
        }
        rep = run_task(Document("check-compat", payload))
        assert rep["verdict"] is False
        d = rep["details"]
        assert d["subquotient_route"] == d["flatness_route"] == False
        assert d["agreement"] is True
        assert d["witness"] is not None

    def test_compat_positive_on_two_filtrations(self):
        full = [["1", "0"], ["0", "1"]]
        payload = {
            "filtrations": [
                {
                    "ambient_dim": 2,
                    "steps": [
                        {"index": "0", "basis": [line]},
                        {"index": "1", "basis": full},
                    ],
                }
                for line in (["1", "0"], ["0", "1"])
            ],
        }
        rep = run_task(Document("check-compat", payload))
        assert rep["verdict"] is True
        assert rep["details"]["agreement"] is True

    def test_fixture_info_dispatch(self):
        rep = run_task(Document("fixture-info", {"name": "tensor-2-2"}))
        assert rep["verdict"] is True
        assert rep["details"]["dim"] == 4

    def test_unknown_fixture_is_an_input_error(self):
        with pytest.raises(DocumentError):
            run_task(Document("fixture-info", {"name": "garbage"}))


class TestEmitReport:
    def test_structured_output_is_stable_json(self):
        rep = run_task(_monodromy_doc([["0", "1"], ["0", "0"]]))
        out1 = emit_report(rep, "structured")
        out2 = emit_report(rep, "structured")
        assert out1 == out2
        assert json.loads(out1) == rep
        assert out1.endswith("\n")
        # keys are sorted, so serialization order cannot drift
        assert out1 == json.dumps(rep, sort_keys=True, indent=2) + "\n"

    def test_text_output_has_verdict_line(self):
        rep = run_task(_monodromy_doc([["0", "1"], ["0", "0"]]))
        text = emit_report(rep, "text")
        assert "pass" in text
        assert "check-monodromy" in text

    def test_unknown_format_rejected(self):
        rep = run_task(_monodromy_doc([["0", "1"], ["0", "0"]]))
        with pytest.raises(ValueError):
            emit_report(rep, "yaml")
