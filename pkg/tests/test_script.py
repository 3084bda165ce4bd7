import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latsub.dyadic import DyadicValue
from latsub.errors import (
    MalformedConstraint,
    ScriptError,
    SizeMismatch,
    UnknownCommand,
    UnknownLabel,
    UnterminatedJob,
)
from latsub.script import (
    Settings,
    format_report,
    parse_script,
    render_script,
    results_to_json,
    run_script,
    verify_script,
)

FIXTURES = Path(__file__).parent / "fixtures"
FIXTURE_NAMES = sorted(p.stem for p in FIXTURES.glob("*.sub"))

WITHOUT_X = r"""
\subtrahend-in-exponent=8
\operationsymbols=+*
\beginjob
\name
without x
\size
7
\elements
cdefgoi
\constraints
c+e=g, f*g=d   \w comment
\endofjob
\enddata
"""


def job_text(name="j", size=3, elements="abc", constraints="a+b=c"):
    return "\\beginjob\n\\name\n{}\n\\size\n{}\n\\elements\n{}\n\\constraints\n{}\n\\endofjob\n".format(
        name, size, elements, constraints
    )


def test_fixture_set_is_complete():
    assert len(FIXTURE_NAMES) == 14


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_replays_byte_exact(name):
    script = parse_script((FIXTURES / f"{name}.sub").read_bytes())
    expected = (FIXTURES / f"{name}.expected").read_text()
    assert format_report(run_script(script)) == expected


def test_minimal_job():
    script = parse_script(WITHOUT_X)
    (job,) = script.jobs
    assert job.name == "without x"
    assert job.element_line == "cdefgoi"
    assert job.constraint_tokens() == ["c+e=g", "f*g=d"]
    (result,) = run_script(script)
    assert result.sub_count == 96
    assert result.sigma == 192


def test_case_labels_comments_and_separators():
    text = job_text(
        size=5,
        elements="abcde",
        constraints="(C1) a+b=c,a*b=d ; tail words a+c=e\n  (also) b+c=e   % percent comment\n\n",
    )
    (job,) = parse_script(text).jobs
    assert job.case_labels == ("C1", "also")
    assert job.constraint_tokens() == ["a+b=c", "a*b=d", "b+c=e"]


def test_crlf_and_p_lines():
    text = "\\P a paragraph line\r\n" + job_text().replace("\n", "\r\n") + "\\enddata\r\ntrailing junk"
    (job,) = parse_script(text).jobs
    assert job.constraint_tokens() == ["a+b=c"]


def test_values_on_the_command_line():
    text = "\\beginjob\n\\name  N_5\n\\size 5\n\\elements oabci\n\\constraints a+b=i\n\\endofjob\n"
    (job,) = parse_script(text).jobs
    assert (job.name, job.declared_size, job.element_line) == ("N_5", 5, "oabci")


def test_settings():
    script = parse_script("\\verbose=true\n\\subtrahend-in-exponent=10\n\\operationsymbols=+*-\n")
    assert script.settings == Settings(True, 10, "+*-")
    assert script.jobs == ()


def test_empty_script():
    assert parse_script("").jobs == ()
    assert format_report(run_script(parse_script(""))) == ""


@pytest.mark.parametrize(
    "text, error, line",
    [
        (job_text(size=4), SizeMismatch, 5),
        (job_text(constraints="a+b=x"), UnknownLabel, 9),
        (job_text(constraints="a+bb=c"), MalformedConstraint, 9),
        (job_text(constraints="a-b=c"), MalformedConstraint, 9),
        (job_text(constraints="(C1 a+b=c"), MalformedConstraint, 9),
        (job_text().replace("\\endofjob\n", ""), UnterminatedJob, 1),
        (job_text() + job_text().replace("\\endofjob\n", "") + job_text(), UnterminatedJob, 20),
        ("\\frobnicate\n", UnknownCommand, 1),
        ("stray text\n", UnknownCommand, 1),
        ("\\verbose=maybe\n", ScriptError, 1),
        (job_text(elements="aab"), ScriptError, 7),
        ("\\name\nx\n", ScriptError, 1),
    ],
)
def test_parse_errors_carry_location(text, error, line):
    with pytest.raises(error) as info:
        parse_script(text)
    assert info.value.line == line


def test_error_message_mentions_location():
    with pytest.raises(UnknownLabel) as info:
        parse_script(job_text(constraints="a+b=c  a*b=z"))
    assert str(info.value).startswith("line 9, column 12:")


def test_subtrahend_changes_sigma_only():
    base = parse_script(WITHOUT_X)
    other = parse_script(WITHOUT_X.replace("=8", "=10"))
    (r0,), (r1,) = run_script(base), run_script(other)
    assert r0.sub_count == r1.sub_count
    assert r1.sigma == r0.sigma * 4
    assert "2^(10-|A|)" in r1.formatted


def test_verbose_lists_subuniverses():
    text = "\\verbose=true\n" + job_text()
    (result,) = run_script(parse_script(text))
    assert len(result.listing) == result.sub_count == 7
    assert result.listing[0] == "{}" and result.listing[-1] == "{abc}"
    assert format_report([result]).splitlines()[-2].startswith("Result for A=j:")


def test_timing_line_and_json():
    results = run_script(parse_script(WITHOUT_X))
    assert format_report(results, 0.0784).endswith("\n\nThe computation took 78/1000 seconds.\n")
    (record,) = json.loads(results_to_json(results))
    assert record == {
        "name": "without x",
        "n": 7,
        "sub_count": 96,
        "sigma": "96*2^1",
        "decimal": "192.0000000000000000",
    }


def test_verify_summary():
    k5 = verify_script(parse_script((FIXTURES / "K5.sub").read_text()))
    assert k5.job_count == 3 and not k5.all_excluded
    assert k5.offenders == ("K_5",)
    assert k5.max_sigma == DyadicValue.parse("97.375")
    f0 = verify_script(parse_script((FIXTURES / "F0.sub").read_text()))
    assert f0.all_excluded and f0.max_sigma == 83
    # equality with the threshold still counts as excluded
    assert not verify_script(parse_script((FIXTURES / "F0.sub").read_text()), threshold=82).all_excluded


def test_parallel_run_preserves_order():
    script = parse_script((FIXTURES / "H0.sub").read_text())
    assert run_script(script, workers=4) == run_script(script)


labels = st.text(alphabet="abcdefghjkmnopqrstuvwxyzABCDEFG0123456789", min_size=1, max_size=10, ).filter(
    lambda s: len(set(s)) == len(s)
)


@st.composite
def scripts(draw):
    jobs = []
    for k in range(draw(st.integers(0, 4))):
        elems = draw(labels)
        pick = st.sampled_from(elems)
        cons = draw(st.lists(st.tuples(pick, st.sampled_from("+*"), pick, pick), max_size=12))
        tokens = " ".join(f"{x}{o}{y}={z}" for x, o, y, z in cons)
        name = draw(st.text(alphabet="abcXYZ_019 ", min_size=1, max_size=8).map(str.strip).filter(bool))
        jobs.append(job_text(name, len(elems), elems, tokens))
    return "\\subtrahend-in-exponent=8\n" + "".join(jobs) + "\\enddata\n"


@given(scripts())
def test_render_parse_round_trip(text):
    script = parse_script(text)
    again = parse_script(render_script(script))
    assert [j.constraint_tokens() for j in again.jobs] == [j.constraint_tokens() for j in script.jobs]
    assert [(j.name, j.element_line) for j in again.jobs] == [(j.name, j.element_line) for j in script.jobs]
    assert run_script(again) == run_script(script)
