"""Tri-state answers for semi-decidable questions.

Language- and graph-theoretic predicates in this package are often only
semi-decidable within a finite search budget.  Rather than collapsing to a
boolean, such predicates return a :class:`Verdict`: ``yes``, ``no`` (with a
finite witness of failure), or ``unknown`` (budget exhausted, with a note
saying which bound was hit).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: Any = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.kind not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad verdict kind: {self.kind!r}")

    @staticmethod
    def yes(note: str = "", witness: Any = None) -> "Verdict":
        return Verdict(YES, witness=witness, note=note)

    @staticmethod
    def no(witness: Any = None, note: str = "") -> "Verdict":
        return Verdict(NO, witness=witness, note=note)

    @staticmethod
    def unknown(note: str = "", witness: Any = None) -> "Verdict":
        return Verdict(UNKNOWN, witness=witness, note=note)

    @property
    def is_yes(self) -> bool:
        return self.kind == YES

    @property
    def is_no(self) -> bool:
        return self.kind == NO

    @property
    def is_unknown(self) -> bool:
        return self.kind == UNKNOWN

    def __str__(self) -> str:
        parts = [self.kind]
        if self.witness is not None:
            parts.append(f"witness={self.witness!r}")
        if self.note:
            parts.append(self.note)
        return " ".join(parts)
