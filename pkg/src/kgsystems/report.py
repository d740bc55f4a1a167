"""Pass/fail records for identity checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional

from .matrix import ExactMatrix


class IdentityError(ArithmeticError):
    """An exact identity that must hold by construction did not."""


@dataclass
class Check:
    name: str
    passed: Optional[bool]  # None: not applicable to this input
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class Report:
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.passed is False]

    def add(self, name: str, passed: Optional[bool], detail: str = "") -> Check:
        c = Check(name, passed, detail)
        self.checks.append(c)
        return c

    def extend(self, checks: Iterable[Check]) -> None:
        self.checks.extend(checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"checks": [c.to_json() for c in self.checks]}


def compare(name: str, got: ExactMatrix, expected: ExactMatrix) -> Check:
    """Exact matrix comparison, reporting the first mismatching entry."""
    if got.shape != expected.shape:
        return Check(name, False, f"shape {got.shape} != {expected.shape}")
    diff = got.first_difference(expected)
    if diff is None:
        return Check(name, True, "exact")
    i, j, a, b = diff
    return Check(name, False, f"first mismatch at ({i}, {j}): got {a}, expected {b}")


def mismatch_positions(got: ExactMatrix, expected: ExactMatrix) -> list:
    return [
        (i, j)
        for i, (r, s) in enumerate(zip(got.rows, expected.rows))
        for j, (a, b) in enumerate(zip(r, s))
        if a != b
    ]


def common_index(positions: list) -> Optional[int]:
    """The single index shared by every ``(i, j)`` pair, if there is exactly one."""
    if not positions:
        return None
    candidates = set(positions[0])
    for p in positions[1:]:
        candidates &= set(p)
    return candidates.pop() if len(candidates) == 1 else None
