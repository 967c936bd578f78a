"""The identity registry, the runner, and the suite."""

import json

import pytest

from psipascal import (
    EXPECTED_FAIL,
    MUST_PASS,
    InvalidParamsError,
    UnknownIdentityError,
    custom,
    list_identities,
    run_identity,
    run_suite,
)

EXPECTED_IDS = [
    "eq4",
    "eq5",
    "eq6",
    "eq8",
    "eq9",
    "eq10",
    "eq11-basic",
    "semigroup",
    "exp-vs-closed",
    "nilpotent",
    "odd-cancel",
    "normality",
]


class TestRegistry:
    def test_all_ids_present_in_order(self):
        assert [spec.id for spec in list_identities()] == EXPECTED_IDS

    def test_count(self):
        assert len(list_identities()) >= 11

    def test_contains_eq8(self):
        assert any(spec.id == "eq8" for spec in list_identities())

    def test_ordering_is_stable(self):
        assert [s.id for s in list_identities()] == [s.id for s in list_identities()]

    def test_expectations(self):
        by_id = {spec.id: spec for spec in list_identities()}
        assert by_id["eq6"].expectation("classical") == MUST_PASS
        assert by_id["eq6"].expectation("fibonomial") == EXPECTED_FAIL
        assert by_id["normality"].expectation("q-symbolic") == EXPECTED_FAIL
        assert by_id["eq4"].expectation("fibonomial") == MUST_PASS


class TestRunIdentity:
    def test_eq4_classical(self):
        report = run_identity("eq4", {"sequence": "classical", "n": 8})
        assert report.passed
        assert report.params == {"sequence": "classical", "n": "8"}

    def test_eq6_q_counterexample_strings(self):
        report = run_identity("eq6", {"sequence": "q", "n": 2})
        assert not report.passed
        assert report.counterexample.location == (1, 1)
        assert report.counterexample.lhs == "2"
        assert report.counterexample.rhs == "(1 + q)/(1)"

    def test_eq8_power(self):
        report = run_identity("eq8", {"operator": "qhat-power:q", "i": 3, "j": 3, "m": 2})
        assert report.passed

    def test_defaults_fill_in(self):
        report = run_identity("nilpotent", {"sequence": "fibonomial"})
        assert report.passed
        assert report.params["n"] == "8"

    def test_unknown_identity(self):
        with pytest.raises(UnknownIdentityError) as err:
            run_identity("no-such-id")
        assert "eq4" in str(err.value)

    def test_unknown_parameter(self):
        with pytest.raises(InvalidParamsError) as err:
            run_identity("eq4", {"sequence": "classical", "bogus": 1})
        assert "bogus" in str(err.value)

    def test_bad_selector(self):
        with pytest.raises(InvalidParamsError):
            run_identity("eq4", {"sequence": "no-such-sequence"})

    def test_bad_bound(self):
        with pytest.raises(InvalidParamsError):
            run_identity("eq4", {"sequence": "classical", "n": -3})
        with pytest.raises(InvalidParamsError):
            run_identity("eq4", {"sequence": "classical", "n": "six"})

    def test_q_only_identities_reject_other_sequences(self):
        with pytest.raises(InvalidParamsError):
            run_identity("eq9", {"sequence": "classical"})
        with pytest.raises(InvalidParamsError):
            run_identity("eq10", {"sequence": "fibonomial"})

    def test_eq8_needs_an_operator(self):
        with pytest.raises(InvalidParamsError):
            run_identity("eq8", {})

    def test_scalar_parameters_parse_in_the_sequence_domain(self):
        report = run_identity("eq11-basic", {"sequence": "q", "n": 5, "x": "q", "y": "1"})
        assert report.passed
        assert report.params["x"] == "(q)/(1)"

    def test_reports_are_reproducible(self):
        first = run_identity("eq6", {"sequence": "fibonomial", "n": 4})
        second = run_identity("eq6", {"sequence": "fibonomial", "n": 4})
        assert first.to_json_obj() == second.to_json_obj()


@pytest.fixture(scope="module")
def quick():
    return run_suite("quick")


class TestSuite:
    def test_healthy(self, quick):
        assert quick.healthy
        summary = quick.summary()
        assert summary["unexpected"] == []
        assert summary["total"] == len(quick.entries)

    def test_every_must_pass_passed(self, quick):
        for entry in quick.entries:
            if entry.expected == MUST_PASS:
                assert entry.report.passed, entry.report.one_line()

    def test_every_expected_fail_failed(self, quick):
        failures = [e for e in quick.entries if e.expected == EXPECTED_FAIL]
        assert failures, "the suite must contain expected failures"
        for entry in failures:
            assert not entry.report.passed, entry.report.one_line()

    def test_eq6_fibonomial_is_a_confirmed_finding(self, quick):
        entries = [
            e
            for e in quick.entries
            if e.report.identity == "eq6" and e.family == "fibonomial"
        ]
        assert len(entries) == 1
        entry = entries[0]
        assert entry.expected == EXPECTED_FAIL
        assert not entry.report.passed
        assert entry.as_expected

    def test_normality_records_the_failure_values(self, quick):
        values = {
            e.family: e.report.counterexample
            for e in quick.entries
            if e.report.identity == "normality" and e.report.counterexample
        }
        assert values["q-symbolic"].lhs == "(1 - q)/(1)"
        assert values["q-numeric"].lhs == "-1"
        assert values["fibonomial"].lhs == "1"
        assert all(ce.location == (2,) for ce in values.values())

    def test_eq8_includes_the_power_convention(self, quick):
        operators = [
            e.report.params["operator"] for e in quick.entries if e.report.identity == "eq8"
        ]
        assert "qhat-power:q" in operators
        assert "qhat-paper:fibonomial" in operators

    def test_json_lines_are_deterministic(self, quick):
        again = run_suite("quick")
        assert quick.to_json_lines() == again.to_json_lines()

    def test_json_lines_shape(self, quick):
        lines = quick.to_json_lines().splitlines()
        for line in lines[:-1]:
            obj = json.loads(line)
            assert set(obj) == {
                "identity",
                "params",
                "status",
                "counterexample",
                "family",
                "expected",
                "as_expected",
            }
        summary = json.loads(lines[-1])
        assert set(summary) == {"summary"}
        assert summary["summary"]["healthy"] is True

    def test_unknown_profile(self):
        with pytest.raises(InvalidParamsError):
            run_suite("exhaustive")


class TestFullSuiteCompleteness:
    def test_full_profile_covers_every_identity_and_family(self):
        result = run_suite("full")
        assert result.healthy
        seen = {}
        for entry in result.entries:
            seen.setdefault(entry.report.identity, set()).add(entry.family)
        assert set(seen) == set(EXPECTED_IDS)
        q_only = {"eq9", "eq10"}
        everywhere = {"classical", "q-symbolic", "q-numeric", "fibonomial"}
        for identity, families in seen.items():
            if identity in q_only:
                assert families == {"q-symbolic", "q-numeric"}
            else:
                assert families == everywhere
        # eq8 runs the ratio convention on all four plus the symbolic power base
        eq8_ops = [
            e.report.params["operator"] for e in result.entries if e.report.identity == "eq8"
        ]
        assert len(eq8_ops) == 5
        assert "qhat-power:q" in eq8_ops


class TestMutation:
    def test_corrupted_factorial_trips_a_must_pass(self):
        seq = custom([1, 1, 2, 3, 5, 8, 13, 21])
        seq.factorial(8)  # fill the cache, then corrupt one entry
        seq._facts[3] = seq.field.coerce(99)
        seq._binoms.clear()
        report = run_identity("exp-vs-closed", {"sequence": seq, "n": 6, "x": "1"})
        assert not report.passed

    def test_intact_custom_sequence_passes(self):
        seq = custom([1, 1, 2, 3, 5, 8, 13, 21])
        report = run_identity("exp-vs-closed", {"sequence": seq, "n": 6, "x": "1"})
        assert report.passed
