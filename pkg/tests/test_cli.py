from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from jsonschema import Draft202012Validator

from ospchar import cli
from ospchar.cli import CommandRequest, dumps, main, run

SCHEMA = json.loads(resources.files("ospchar").joinpath("schema.json").read_text(encoding="utf-8"))
VALIDATOR = Draft202012Validator(SCHEMA)
RATIONAL = re.compile(r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$")


def invoke(argv, capsys):
    status = main(argv)
    out, err = capsys.readouterr()
    return status, (json.loads(out) if out else None), err


def test_schema_is_valid():
    Draft202012Validator.check_schema(SCHEMA)


def test_roots_example(capsys):
    status, doc, _ = invoke(["roots", "--m", "3", "--n", "2", "--weight", "even:1;odd:2"], capsys)
    assert status == 0
    assert doc["alpha_even"] == ["1", "-1/2", "-2"]
    assert doc["alpha_odd"] == ["-1", "2"]
    assert doc["schema"] == cli.SCHEMA and doc["command"] == "roots"


def test_verify_example(capsys):
    status, doc, err = invoke(["verify", "--m", "2", "--n", "2", "--suite", "all"], capsys)
    assert status == 0 and doc["ok"]
    assert "suite" in err and "pass" in err
    assert all(c["status"] in ("pass", "skip") for c in doc["checks"])


def test_verify_single_suite_and_verbosity(capsys, monkeypatch):
    monkeypatch.setenv("OSPCHAR_COLOR", "1")
    status, doc, err = invoke(["verify", "--m", "1", "--n", "2", "--suite", "structure", "-vv"], capsys)
    assert status == 0 and set(doc["summary"]) == {"structure"}
    assert "\033[32m" in err and "  pass structure:" in err


def test_branch_and_invariants(capsys):
    status, doc, _ = invoke(["branch", "--m", "3", "--n", "2", "--weight", "even:1;odd:2"], capsys)
    assert status == 0 and doc["count"] == 6 and doc["child_signature"] == {"m": 2, "n": 2}
    status, doc, _ = invoke(["invariants", "--m", "1", "--n", "2", "--weight", "odd:1", "--child-weight", "odd:1"], capsys)
    assert status == 0
    assert doc["C"] == {"0": "3/5", "O2": "2/5"}
    assert doc["gamma_p"] == {"O2": "3/2"}
    assert doc["omega"]["O2,O2"] == "1"


def test_matrep_entries(capsys):
    status, doc, _ = invoke(["matrep", "--m", "2", "--n", "2", "--basis", "cartan-weyl"], capsys)
    assert status == 0 and doc["indices"] == ["E1", "E2", "O1", "O2"]
    assert len(doc["generators"]) == 16
    assert any("i" in x for g in doc["generators"] for row in g["entries"] for x in row)


@pytest.mark.parametrize(
    "argv,status",
    [
        (["roots", "--m", "3", "--n", "2", "--weight", "even:1,2;odd:2"], 2),  # wrong shape
        (["roots", "--m", "3", "--n", "2"], 1),  # missing weight
        (["roots", "--m", "3"], 1),  # missing --n
        (["roots", "--m", "3", "--n", "3", "--weight", "even:1;odd:2"], 1),  # odd n
        (["rho", "--m", "3", "--n", "2", "--convention", "distinguished"], 1),
        (["branch", "--m", "0", "--n", "2", "--weight", "odd:1"], 1),
        (["invariants", "--m", "1", "--n", "2", "--weight", "odd:2", "--child-weight", "odd:0"], 2),
        (["frobnicate", "--m", "1", "--n", "2"], 1),
    ],
)
def test_exit_codes(argv, status, capsys):
    got, doc, err = invoke(argv, capsys)
    assert got == status
    assert err.startswith("ospchar:")
    if doc is not None:
        assert "error" in doc and VALIDATOR.is_valid(doc)


def test_roots_only_need_shape(capsys):
    status, doc, _ = invoke(["roots", "--m", "3", "--n", "2", "--weight", "even:1;odd:-1"], capsys)
    assert status == 0 and doc["class"] == "invalid"


def test_verify_failure_exits_3(capsys):
    # the formula rule breaks the identity for osp(1|2)
    status, doc, _ = invoke(["verify", "--m", "1", "--n", "2", "--suite", "identity"], capsys)
    assert status == 3 and not doc["ok"]
    status, _, _ = invoke(["verify", "--m", "1", "--n", "2", "--suite", "identity", "--middle-root", "casimir"], capsys)
    assert status == 0


REQUESTS = [
    CommandRequest("roots", 3, 2, "even:1;odd:2"),
    CommandRequest("roots", 2, 2, "even:-1/2;odd:2", middle_root="casimir"),
    CommandRequest("rho", 2, 4, convention="distinguished"),
    CommandRequest("rho", 5, 2),
    CommandRequest("casimir", 3, 2, "even:1;odd:2"),
    CommandRequest("branch", 2, 2, "even:1;odd:1"),
    CommandRequest("invariants", 1, 2, "odd:1", "odd:1"),
    CommandRequest("invariants", 1, 4, "odd:1,1", "odd:1,0", limit=True),
    CommandRequest("matrep", 1, 2),
    CommandRequest("matrep", 3, 2, basis="cartan-weyl"),
    CommandRequest("verify", 0, 2, suite="oracle"),
]


@pytest.mark.parametrize("req", REQUESTS, ids=lambda r: " ".join(r.to_argv()[:5]))
def test_documents_validate(req):
    status, doc = run(req)
    assert status in (0, 3)
    errors = sorted(VALIDATOR.iter_errors(doc), key=str)
    assert not errors, errors[0].message


def _rationals(node):
    if isinstance(node, dict):
        for k, v in node.items():
            if k not in ("text", "entries", "message", "detail", "expected", "observed", "name", "kind"):
                yield from _rationals(v)
    elif isinstance(node, list):
        for v in node:
            yield from _rationals(v)
    elif isinstance(node, str) and re.fullmatch(r"-?[0-9/]+", node):
        yield node


@pytest.mark.parametrize("req", REQUESTS[:8], ids=lambda r: " ".join(r.to_argv()[:5]))
def test_rationals_reduced(req):
    _, doc = run(req)
    for text in _rationals(doc):
        assert RATIONAL.match(text)
        assert str(Fraction(text)) == text


@pytest.mark.parametrize("req", REQUESTS[:6], ids=lambda r: " ".join(r.to_argv()[:5]))
def test_output_is_deterministic(req):
    assert dumps(run(req)[1]) == dumps(run(req)[1])


def test_output_file(tmp_path, capsys):
    target = tmp_path / "roots.json"
    status = main(["roots", "--m", "3", "--n", "2", "--weight", "even:1;odd:2", "-o", str(target)])
    assert status == 0 and capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["alpha_odd"] == ["-1", "2"]


requests = st.builds(
    CommandRequest,
    subcommand=st.sampled_from(cli.SUBCOMMANDS),
    m=st.integers(0, 6),
    n=st.sampled_from([0, 2, 4]),
    weight=st.one_of(st.none(), st.sampled_from(["even:1;odd:2", "odd:1", "even:3/2,1/2;odd:2,1"])),
    child_weight=st.one_of(st.none(), st.just("odd:0")),
    convention=st.sampled_from(["canonical", "distinguished"]),
    middle_root=st.sampled_from(["formula", "casimir"]),
    basis=st.sampled_from(cli.BASES),
    limit=st.booleans(),
    suite=st.sampled_from(["all", "structure", "oracle"]),
    output=st.one_of(st.none(), st.just("out.json")),
    verbosity=st.integers(0, 2),
)


@settings(max_examples=50)
@given(requests)
def test_request_round_trip(req):
    assert CommandRequest.from_argv(req.to_argv()) == req
