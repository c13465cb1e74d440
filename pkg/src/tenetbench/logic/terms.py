"""First-order terms: variables, constants, numbers with time units, compounds.

Variables start with an uppercase letter; constants and functors start
lowercase (or are quoted).  Numbers may carry a time unit and are compared
in canonical minutes (1h = 60m, 1d = 1440m).
"""

from __future__ import annotations

from dataclasses import dataclass


MINUTES_PER_UNIT = {"m": 1, "h": 60, "d": 1440}


@dataclass(frozen=True)
class Duration:
    """A non-negative time span; canonical value is minutes."""

    magnitude: int
    unit: str = "m"

    def __post_init__(self) -> None:
        if self.magnitude < 0:
            raise ValueError(f"negative duration: {self.magnitude}")
        if self.unit not in MINUTES_PER_UNIT:
            raise ValueError(f"unknown duration unit: {self.unit!r}")

    @property
    def minutes(self) -> int:
        return self.magnitude * MINUTES_PER_UNIT[self.unit]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Duration):
            return NotImplemented
        return self.minutes == other.minutes

    def __hash__(self) -> int:
        return hash(("Duration", self.minutes))

    def __str__(self) -> str:
        return f"{self.magnitude}{self.unit}"


class Term:
    """Base class for term nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __post_init__(self) -> None:
        if not self.name or not self.name[0].isupper():
            raise ValueError(f"variable names start uppercase: {self.name!r}")


@dataclass(frozen=True)
class Const(Term):
    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("empty constant name")


@dataclass(frozen=True, eq=False)
class Num(Term):
    """Integer literal, optionally with a time unit (`15m`, `2h`, `1d`)."""

    value: int
    unit: str | None = None

    def __post_init__(self) -> None:
        if self.unit is not None and self.unit not in MINUTES_PER_UNIT:
            raise ValueError(f"unknown duration unit: {self.unit!r}")
        if self.unit is not None and self.value < 0:
            raise ValueError("negative duration literal")

    @property
    def minutes(self) -> int:
        """Canonical integer value (minutes when a unit is present)."""
        if self.unit is None:
            return self.value
        return self.value * MINUTES_PER_UNIT[self.unit]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Num):
            return NotImplemented
        return self.minutes == other.minutes

    def __hash__(self) -> int:
        return hash(("Num", self.minutes))


@dataclass(frozen=True)
class Compound(Term):
    functor: str
    args: tuple[Term, ...]

    def __post_init__(self) -> None:
        if not self.args:
            raise ValueError(f"compound term {self.functor!r} needs arguments")


def term_vars(t: Term) -> set[str]:
    """Names of all variables occurring in `t`."""
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Compound):
        out: set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()
