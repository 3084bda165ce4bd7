"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class LatsubError(Exception):
    """Base class for all library errors."""


class UniverseTooLarge(LatsubError):
    def __init__(self, n: int, limit: int, job: str | None = None) -> None:
        self.n, self.limit, self.job = n, limit, job
        where = f" in job {job!r}" if job is not None else ""
        super().__init__(f"universe of {n} elements exceeds the limit of {limit}{where}")


class EmptySubset(LatsubError):
    pass


class ScriptError(LatsubError, ValueError):
    """Parse failure in a subsize script, carrying a 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.message, self.line, self.column = message, line, column
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)


class SizeMismatch(ScriptError):
    pass


class UnknownLabel(ScriptError):
    pass


class MalformedConstraint(ScriptError):
    pass


class UnterminatedJob(ScriptError):
    pass


class UnknownCommand(ScriptError):
    pass


class NotALattice(LatsubError, ValueError):
    """Raised with a witness pair of labels that lacks a join or a meet."""

    def __init__(self, pair: tuple[str, str], missing: str) -> None:
        self.pair, self.missing = pair, missing
        super().__init__(f"{pair[0]} and {pair[1]} have no {missing}")


class CyclicCovers(LatsubError, ValueError):
    pass


class NotTranscribed(LatsubError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "member not transcribed"


class CatalogIncomplete(LatsubError):
    def __init__(self, size: int, missing: list[str]) -> None:
        self.size, self.missing = size, missing
        super().__init__(
            f"cannot decide planarity for {size} elements: "
            f"catalog lacks {', '.join(missing)}"
        )


class TooLarge(LatsubError):
    pass
