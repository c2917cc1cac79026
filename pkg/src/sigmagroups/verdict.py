"""Three-valued verdicts, cap configuration and the shared exception types."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

YES = "yes"
NO = "no"
UNDECIDED = "undecided"


class CapExceeded(Exception):
    """A computation would exceed one of the configured caps."""

    def __init__(self, cap: str, needed=None, limit=None):
        self.cap = cap
        self.needed = needed
        self.limit = limit
        msg = cap if needed is None else f"{cap}: need {needed}, limit {limit}"
        super().__init__(msg)

    @property
    def reason(self) -> str:
        return f"capExceeded({self})"


class InconsistencyError(Exception):
    """Two independent routes disagreed on a decidable question."""


class DimensionError(ValueError):
    pass


class NormalityError(ValueError):
    pass


class ParseError(ValueError):
    """Malformed textual input. ``pos`` is a 0-based offset when known."""

    def __init__(self, message: str, pos: int | None = None, token: str | None = None):
        self.pos = pos
        self.token = token
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


@dataclass(frozen=True)
class Caps:
    subgroup_cap: int = 5000
    element_cap: int = 2_000_000
    index_cap: int = 200_000
    node_budget: int = 10_000_000
    kmax: int = 6
    max_degree: int = 4096
    seed: int = 0   # order of random sampling only

    def with_(self, **kw) -> "Caps":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class Verdict:
    """Result of a decision procedure that may run out of budget.

    Truth-testing a verdict raises, so an Undecided can never be silently
    read as False.
    """

    value: str
    reason: str = ""
    witness: Any = field(default=None, compare=False)

    @classmethod
    def yes(cls, witness=None, reason=""):
        return cls(YES, reason, witness)

    @classmethod
    def no(cls, witness=None, reason=""):
        return cls(NO, reason, witness)

    @classmethod
    def undecided(cls, reason, witness=None):
        return cls(UNDECIDED, str(reason), witness)

    @classmethod
    def of(cls, flag: bool, witness=None, reason=""):
        return cls(YES if flag else NO, reason, witness)

    @property
    def is_yes(self):
        return self.value == YES

    @property
    def is_no(self):
        return self.value == NO

    @property
    def decided(self):
        return self.value != UNDECIDED

    def __bool__(self):
        raise TypeError("use .is_yes / .is_no on a Verdict")

    def to_json(self):
        if self.value == UNDECIDED:
            return {"undecided": self.reason}
        return self.value

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, dict):
            return cls.undecided(obj["undecided"])
        if obj not in (YES, NO):
            raise ValueError(f"not a verdict: {obj!r}")
        return cls(obj)


def conjoin(items) -> Verdict:
    """Overall verdict of a list of verdicts: any No wins, then any Undecided."""
    items = list(items)
    for v in items:
        if v.is_no:
            return Verdict.no(reason=v.reason)
    for v in items:
        if not v.decided:
            return Verdict.undecided(v.reason)
    return Verdict.yes()


def decide(fn, *args, **kwargs) -> Verdict:
    """Run a computation returning a bool or a Verdict, mapping
    CapExceeded to Undecided."""
    try:
        r = fn(*args, **kwargs)
        return r if isinstance(r, Verdict) else Verdict.of(bool(r))
    except CapExceeded as exc:
        return Verdict.undecided(exc.reason)
