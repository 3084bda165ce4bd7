"""Batch scripts in the subsize text format: parse, run, report, verify.

A script is a sequence of settings commands and jobs::

    \\subtrahend-in-exponent=8
    \\operationsymbols=+*
    \\beginjob
    \\name
    without x
    \\size
    7
    \\elements
    cdefgoi
    \\constraints
    (C1) c+e=g, f*g=d   \\w comment to end of line
    \\endofjob
    \\enddata

``\\P`` lines and ``%``-to-end-of-line text are ignored everywhere.  Inside a
constraint block ``\\w`` and ``;`` start a comment, parenthesized text is a case
label, and constraints are 5-character tokens ``x*y=z`` separated by commas or
whitespace.  Nothing after ``\\enddata`` is read.
"""

from __future__ import annotations

import json
import re
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .algebra import (
    MAX_COUNT,
    MAX_ENUMERATE,
    RESERVED,
    Constraint,
    PartialAlgebra,
    Universe,
    count_subuniverses,
    enumerate_subuniverses,
)
from .dyadic import DyadicValue
from .errors import (
    MalformedConstraint,
    ScriptError,
    SizeMismatch,
    UniverseTooLarge,
    UnknownCommand,
    UnknownLabel,
    UnterminatedJob,
)

_COMMAND_RE = re.compile(r"\\([A-Za-z-]+)")


@dataclass(frozen=True)
class Settings:
    verbose: bool = False
    subtrahend: int = 8
    op_symbols: str = "+*"

    def __post_init__(self) -> None:
        ops = self.op_symbols
        if not ops or len(set(ops)) != len(ops) or any(c in RESERVED or c.isspace() for c in ops):
            raise ValueError(f"invalid operation symbols {ops!r}")


@dataclass(frozen=True)
class Job:
    name: str
    declared_size: int
    element_line: str
    constraints: tuple[Constraint, ...] = ()
    case_labels: tuple[str, ...] = ()
    source_span: tuple[int, int] = (0, 0)
    op_symbols: str = "+*"

    @property
    def n(self) -> int:
        return len(self.element_line)

    @property
    def algebra(self) -> PartialAlgebra:
        return PartialAlgebra(Universe(tuple(self.element_line)), self.constraints, self.op_symbols)

    def constraint_tokens(self) -> list[str]:
        lab = self.element_line
        return [f"{lab[c.x]}{c.op}{lab[c.y]}={lab[c.z]}" for c in self.constraints]


@dataclass(frozen=True)
class Script:
    settings: Settings = field(default_factory=Settings)
    jobs: tuple[Job, ...] = ()


@dataclass(frozen=True)
class JobResult:
    job_name: str
    n: int
    sub_count: int
    sigma: DyadicValue
    formatted: str
    listing: tuple[str, ...] = ()


@dataclass(frozen=True)
class VerificationSummary:
    job_count: int
    max_sigma: DyadicValue | None
    all_excluded: bool
    offenders: tuple[str, ...]
    results: tuple[JobResult, ...] = ()


# ---------------------------------------------------------------------------
# parsing


class _JobBuilder:
    def __init__(self, start: int, op_symbols: str) -> None:
        self.start = start
        self.op_symbols = op_symbols
        self.name: str | None = None
        self.size: int | None = None
        self.size_line = start
        self.elements: str | None = None
        self.index: dict[str, int] = {}
        self.constraints: list[Constraint] = []
        self.case_labels: list[str] = []

    def set_elements(self, text: str, lineno: int) -> None:
        labels = "".join(text.split())
        for col, ch in enumerate(labels, 1):
            if ch in RESERVED or ch in self.op_symbols or not ch.isprintable():
                raise ScriptError(f"invalid element label {ch!r}", lineno, col)
        if len(set(labels)) != len(labels):
            raise ScriptError(f"duplicate element labels in {labels!r}", lineno)
        if not labels:
            raise ScriptError("empty element list", lineno)
        self.elements = labels
        self.index = {ch: i for i, ch in enumerate(labels)}

    def add_constraint_line(self, line: str, lineno: int) -> None:
        if self.elements is None:
            raise ScriptError("\\constraints before \\elements", lineno)
        cut = len(line)
        for marker in ("\\w", ";"):
            pos = line.find(marker)
            if pos != -1:
                cut = min(cut, pos)
        text = line[:cut]
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace() or ch == ",":
                i += 1
            elif ch == "(":
                close = text.find(")", i)
                if close == -1:
                    raise MalformedConstraint("unclosed '(' in case label", lineno, i + 1)
                self.case_labels.append(text[i + 1 : close].strip())
                i = close + 1
            else:
                j = i
                while j < len(text) and not (text[j].isspace() or text[j] in ",("):
                    j += 1
                self._add_token(text[i:j], lineno, i + 1)
                i = j

    def _add_token(self, tok: str, lineno: int, col: int) -> None:
        if len(tok) != 5 or tok[3] != "=":
            raise MalformedConstraint(f"constraint {tok!r} is not of the form x*y=z", lineno, col)
        if tok[1] not in self.op_symbols:
            raise MalformedConstraint(
                f"operation symbol {tok[1]!r} in {tok!r} is not declared ({self.op_symbols!r})",
                lineno,
                col + 1,
            )
        idx = []
        for off in (0, 2, 4):
            ch = tok[off]
            if ch not in self.index:
                raise UnknownLabel(f"element {ch!r} in {tok!r} is not in {self.elements!r}", lineno, col + off)
            idx.append(self.index[ch])
        self.constraints.append(Constraint(idx[0], tok[1], idx[1], idx[2]))

    def finish(self, end: int) -> Job:
        if self.name is None:
            raise ScriptError("job has no \\name", self.start)
        if self.size is None:
            raise ScriptError(f"job {self.name!r} has no \\size", self.start)
        if self.elements is None:
            raise ScriptError(f"job {self.name!r} has no \\elements", self.start)
        if self.size != len(self.elements):
            raise SizeMismatch(
                f"job {self.name!r} declares size {self.size} but lists {len(self.elements)} elements",
                self.size_line,
            )
        return Job(
            name=self.name,
            declared_size=self.size,
            element_line=self.elements,
            constraints=tuple(self.constraints),
            case_labels=tuple(self.case_labels),
            source_span=(self.start, end),
            op_symbols=self.op_symbols,
        )


def _parse_bool(value: str, lineno: int) -> bool:
    v = value.strip().lower()
    if v in ("true", "1", "yes"):
        return True
    if v in ("false", "0", "no"):
        return False
    raise ScriptError(f"expected true or false, got {value.strip()!r}", lineno)


def parse_script(text: str | bytes) -> Script:
    """Parse a whole script; raises a :class:`ScriptError` subclass on bad input."""
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    settings = Settings()
    jobs: list[Job] = []
    job: _JobBuilder | None = None
    pending: str | None = None  # job field whose value is on a following line
    in_constraints = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        pct = raw.find("%")
        line = raw if pct == -1 else raw[:pct]
        stripped = line.strip()
        if stripped.startswith("\\P"):
            continue
        cmd = _COMMAND_RE.match(stripped) if stripped.startswith("\\") else None

        if cmd is None or cmd[1] == "w":
            if not stripped or cmd is not None:
                continue
            if job is None:
                raise UnknownCommand(f"unexpected text outside a job: {stripped!r}", lineno, 1)
            if pending is not None:
                _set_field(job, pending, stripped, lineno)
                pending = None
            elif in_constraints:
                job.add_constraint_line(line, lineno)
            else:
                raise UnknownCommand(f"unexpected text in job: {stripped!r}", lineno, 1)
            continue

        word = cmd[1]
        rest = stripped[cmd.end():]
        if pending is not None:
            raise ScriptError(f"missing value for \\{pending}", lineno)

        if word == "enddata":
            break
        if word == "beginjob":
            if job is not None:
                raise UnterminatedJob(f"\\beginjob inside job started at line {job.start}", lineno)
            job = _JobBuilder(lineno, settings.op_symbols)
            in_constraints = False
        elif word in ("verbose", "subtrahend-in-exponent", "operationsymbols"):
            if not rest.startswith("="):
                raise ScriptError(f"\\{word} needs '=value'", lineno)
            value = rest[1:].strip()
            try:
                if word == "verbose":
                    settings = replace(settings, verbose=_parse_bool(value, lineno))
                elif word == "subtrahend-in-exponent":
                    settings = replace(settings, subtrahend=int(value))
                else:
                    settings = replace(settings, op_symbols=value)
            except ValueError as exc:
                if isinstance(exc, ScriptError):
                    raise
                raise ScriptError(str(exc), lineno) from None
            if job is not None and word == "operationsymbols":
                job.op_symbols = settings.op_symbols
        elif word in ("name", "size", "elements", "constraints", "endofjob"):
            if job is None:
                raise ScriptError(f"\\{word} outside a job", lineno)
            in_constraints = False
            if word == "endofjob":
                jobs.append(job.finish(lineno))
                job = None
            elif word == "constraints":
                if job.elements is None:
                    raise ScriptError("\\constraints before \\elements", lineno)
                in_constraints = True
                if rest.strip():
                    job.add_constraint_line(rest, lineno)
            elif rest.strip():
                _set_field(job, word, rest.strip(), lineno)
            else:
                pending = word
        else:
            raise UnknownCommand(f"unknown command \\{word}", lineno, 1)

    if job is not None:
        raise UnterminatedJob(f"job started at line {job.start} has no \\endofjob", job.start)
    return Script(settings, tuple(jobs))


def _set_field(job: _JobBuilder, word: str, value: str, lineno: int) -> None:
    if word == "name":
        job.name = value
    elif word == "size":
        try:
            job.size = int(value)
        except ValueError:
            raise ScriptError(f"\\size needs an integer, got {value!r}", lineno) from None
        job.size_line = lineno
    else:
        job.set_elements(value, lineno)


def render_script(script: Script) -> str:
    """Write ``script`` back in the input format (case labels go on their own line)."""
    s = script.settings
    out = [
        f"\\verbose={'true' if s.verbose else 'false'}",
        f"\\subtrahend-in-exponent={s.subtrahend}",
        f"\\operationsymbols={s.op_symbols}",
        "",
    ]
    for job in script.jobs:
        out += ["\\beginjob", "\\name", job.name, "\\size", str(job.declared_size)]
        out += ["\\elements", job.element_line, "\\constraints"]
        if job.case_labels:
            out.append(" ".join(f"({c})" for c in job.case_labels))
        tokens = job.constraint_tokens()
        for k in range(0, len(tokens), 8):
            out.append(" ".join(tokens[k : k + 8]))
        out += ["\\endofjob", ""]
    out.append("\\enddata")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# running and reporting


def format_result(result: JobResult, settings: Settings) -> str:
    return (
        f"Result for A={result.job_name}:  |Sub(A)| = {result.sub_count}, that is,\n"
        f"sigma(A) = |Sub(A)|*2^({settings.subtrahend}-|A|) =  {result.sigma.to_decimal()} ."
    )


def run_job(job: Job, settings: Settings, workers: int = 1) -> JobResult:
    alg = job.algebra
    try:
        count = count_subuniverses(alg, workers=workers)
    except UniverseTooLarge as exc:
        raise UniverseTooLarge(exc.n, exc.limit, job.name) from None
    value = DyadicValue(count, settings.subtrahend - job.n)
    listing: tuple[str, ...] = ()
    if settings.verbose:
        if job.n <= MAX_ENUMERATE:
            listing = tuple("{" + alg.universe.labels_of(s) + "}" for s in enumerate_subuniverses(alg))
        else:
            listing = (f"(subuniverse listing skipped: |A| > {MAX_ENUMERATE})",)
    partial = JobResult(job.name, job.n, count, value, "", listing)
    return replace(partial, formatted=format_result(partial, settings))


def run_script(script: Script, workers: int = 1) -> list[JobResult]:
    """One result per job, in input order; jobs may run on ``workers`` threads."""
    for job in script.jobs:
        if job.n > MAX_COUNT:
            raise UniverseTooLarge(job.n, MAX_COUNT, job.name)
    if workers <= 1 or len(script.jobs) < 2:
        return [run_job(job, script.settings) for job in script.jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda j: run_job(j, script.settings), script.jobs))


def format_report(results: Sequence[JobResult], elapsed: float | None = None) -> str:
    """Result blocks separated by blank lines; a timing line only if ``elapsed`` is given."""
    blocks = []
    for r in results:
        blocks.append("\n".join((*r.listing, r.formatted)))
    text = "\n\n".join(blocks)
    if text:
        text += "\n"
    if elapsed is not None:
        text += ("\n" if text else "") + f"The computation took {round(elapsed * 1000)}/1000 seconds.\n"
    return text


def results_to_json(results: Iterable[JobResult]) -> str:
    records = [
        {
            "name": r.job_name,
            "n": r.n,
            "sub_count": r.sub_count,
            "sigma": r.sigma.power_form(),
            "decimal": r.sigma.to_decimal(),
        }
        for r in results
    ]
    return json.dumps(records, indent=2)


def verify_script(
    script: Script, threshold: DyadicValue | Fraction | int = 83, workers: int = 1
) -> VerificationSummary:
    """Run every job and check that each sigma is at most ``threshold``."""
    results = run_script(script, workers=workers)
    offenders = tuple(r.job_name for r in results if r.sigma > threshold)
    max_sigma = max((r.sigma for r in results), default=None)
    return VerificationSummary(
        job_count=len(results),
        max_sigma=max_sigma,
        all_excluded=not offenders,
        offenders=offenders,
        results=tuple(results),
    )


def timed_run(script: Script, workers: int = 1) -> tuple[list[JobResult], float]:
    t0 = time.perf_counter()
    results = run_script(script, workers=workers)
    return results, time.perf_counter() - t0
