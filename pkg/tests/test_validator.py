import random
import re
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from daml_kit import corpus, parse, validate
from daml_kit.diagnostics import Severity
from daml_kit.model import (
    DataRepresentation,
    Format,
    GenerateAction,
    Link,
    NodeBehavior,
    Processing,
    ProcessAction,
    ReceiveEvent,
    SendAction,
)
from daml_kit.validator import (
    MODEL_RULES,
    ValidationReport,
    behavior_cycles,
    check_behavior_graph,
    check_connections,
    rule_catalog,
    unreachable_elements,
)

from support import (
    FIXTURES,
    check_lines,
    oracle_cycles,
    oracle_e008_lines,
    oracle_unreachable,
    random_architecture,
    random_behavior,
)

RULES = FIXTURES / "rules"


def _p(name):
    return ProcessAction(name, Processing.BATCH)


def codes(diags):
    return [d.code for d in diags]


class TestCatalog:
    def test_contains_spec_rules(self):
        cat = rule_catalog()
        assert ("E011", Severity.ERROR, "LLA node missing behavior") in cat
        assert ("W102", Severity.WARNING, "out port never used by a send") in cat
        assert len(cat) >= 16

    def test_codes_well_formed_and_unique(self):
        cat = rule_catalog()
        assert len({r.code for r in cat}) == len(cat)
        for r in cat:
            assert re.fullmatch(r"[EW]\d{3}", r.code)
            assert (r.code[0] == "E") == (r.severity is Severity.ERROR)

    def test_stable(self):
        assert rule_catalog() == rule_catalog()

    def test_model_rules(self):
        assert len(MODEL_RULES) == 18


class TestBehaviorGraph:
    def test_chain_is_clean(self):
        b = NodeBehavior((ReceiveEvent("r"), _p("p"), _p("s")), (Link("r", "p"), Link("p", "s")))
        assert check_behavior_graph(b) == []

    def test_two_cycle_reported_once(self):
        b = NodeBehavior((_p("p"), _p("q")), (Link("p", "q"), Link("q", "p")))
        assert codes(check_behavior_graph(b)).count("E008") == 1

    def test_self_link_is_a_cycle(self):
        b = NodeBehavior((ReceiveEvent("r"), _p("p")), (Link("r", "p"), Link("p", "p")))
        assert codes(check_behavior_graph(b)) == ["E008"]

    def test_two_separate_cycles(self):
        b = NodeBehavior(
            (ReceiveEvent("r"), _p("a"), _p("b"), _p("c"), _p("d")),
            (Link("r", "a"), Link("a", "b"), Link("b", "a"), Link("r", "c"), Link("c", "d"), Link("d", "c")),
        )
        assert behavior_cycles(b) == [frozenset("ab"), frozenset("cd")]

    def test_unknown_endpoint_and_event_target(self):
        b = NodeBehavior((ReceiveEvent("r"), _p("p")), (Link("r", "x"), Link("p", "r")))
        # r has an incoming link, so neither element is reachable from a trigger
        assert codes(check_behavior_graph(b)) == ["E006", "E007", "W101", "W101"]

    def test_unreachable_without_trigger(self):
        b = NodeBehavior((_p("p"), _p("q")), (Link("p", "q"),))
        assert unreachable_elements(b) == ["p", "q"]

    def test_hydre_streaming_etl_clean(self, hydre):
        b = hydre.node("StreamingEtl").behavior
        assert check_behavior_graph(b) == []
        assert oracle_cycles(b) == set() and oracle_unreachable(b) == set()


def test_check_connections_isolated_nodes():
    model = parse('architecture "A" { level HLA node A {} node B {} }').model
    assert codes(check_connections(model)) == ["W104", "W104"]


def test_check_connections_unknown_target():
    model = parse('architecture "A" { level HLA node A { out port p } connect A.p -> Z.q }').model
    assert codes(check_connections(model)) == ["E004"]


def test_direction_mismatch_is_e005():
    model = parse('architecture "A" { level HLA node A { out port p } node B { out port q } connect A.p -> B.q }').model
    assert "E005" in codes(validate(model).diagnostics)


def test_hla_with_behavior_is_e012():
    model = parse('architecture "A" { level HLA node N { behavior { consume c {} } } }').model
    assert "E012" in codes(validate(model).diagnostics)


def test_unqualified_receive_covers_all_in_ports():
    text = '''architecture "A" { level LLA
      node N { in port a in port b behavior { on receive r } } }'''
    assert codes(validate(parse(text).model).diagnostics) == ["W105", "W105"]


def test_w106_uses_store_and_process_outputs():
    b = NodeBehavior(
        (
            GenerateAction("g", DataRepresentation(format=Format.JSON)),
            ProcessAction("p", Processing.BATCH, from_format=Format.JSON, to_format=Format.CSV),
            ProcessAction("q", Processing.BATCH, from_format=Format.AVRO),
        ),
        (Link("g", "p"), Link("p", "q")),
    )
    text = 'architecture "A" { level LLA node N { behavior { } } }'
    model = parse(text).model
    model = replace(model, nodes=(replace(model.nodes[0], behavior=b),))
    diags = validate(model).diagnostics
    assert codes(diags) == ["W106"]
    assert "'q'" in diags[0].message and "csv" in diags[0].message


@pytest.mark.parametrize("entry", ["errors_pipeline", "odw", "hydre", "aqss_lla", "aqss_hla"])
def test_corpus_has_no_errors(entry):
    assert validate(corpus.load(entry)).error_count == 0


@pytest.mark.parametrize("code", MODEL_RULES)
def test_minimal_fixture_triggers_exactly_its_rule(code):
    lines = check_lines(RULES / f"{code}.daml")
    assert lines
    assert all(f"[{code}]" in l for l in lines)


@pytest.mark.parametrize("path", sorted(RULES.glob("*.daml")), ids=lambda p: p.stem)
def test_fixture_output_matches_golden(path):
    expected = path.with_suffix(".expected").read_text(encoding="utf-8")
    assert "".join(l + "\n" for l in check_lines(path)) == expected


def test_report_counts_and_sorting():
    text = 'architecture "A" {\n  level HLA\n  node A { in port q }\n  node B {}\n  connect A.p -> C.q\n}\n'
    model = parse(text, "mixed.daml").model
    report = validate(model)
    assert (report.error_count, report.warning_count) == (2, 2)
    keys = [d.sort_key() for d in report.diagnostics]
    assert keys == sorted(keys)
    assert validate(model) == report


def test_report_counts_tally():
    r = ValidationReport(())
    assert r.error_count == r.warning_count == 0 and r.ok


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_graph_findings_match_oracle(seed):
    b = random_behavior(random.Random(seed))
    diags = check_behavior_graph(b)
    assert {d.span.start_line for d in diags if d.code == "E008"} == oracle_e008_lines(b)
    assert codes(diags).count("E008") == len(oracle_cycles(b))
    unreachable = {f"e{d.span.start_line - 1}" for d in diags if d.code == "W101"}
    assert unreachable == oracle_unreachable(b)
    assert set(map(frozenset, behavior_cycles(b))) == oracle_cycles(b)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_generated_models_have_no_errors_and_stable_reports(seed):
    model = random_architecture(random.Random(seed))
    first = validate(model)
    assert first.error_count == 0, first.diagnostics
    assert [d.render() for d in first.diagnostics] == [d.render() for d in validate(model).diagnostics]
