"""Verification reports shared by every checker and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = 1


def jsonable(value: Any):
    """Best-effort conversion to plain JSON values (deterministic)."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if hasattr(value, "item") and callable(value.item) and getattr(value, "shape", None) == ():
        return value.item()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        items = [jsonable(v) for v in value]
        try:
            return sorted(items)
        except TypeError:
            return sorted(items, key=repr)
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "tolist"):
        return value.tolist()
    return str(value)


@dataclass
class Case:
    law: str
    input: Any = None
    expected: Any = None
    got: Any = None
    passed: bool = True

    def to_json(self):
        return {
            "law": self.law,
            "input": jsonable(self.input),
            "expected": jsonable(self.expected),
            "got": jsonable(self.got),
            "pass": bool(self.passed),
        }


@dataclass
class Report:
    title: str
    cases: list = field(default_factory=list)
    seed: int | None = None

    def add(self, law, input=None, expected=None, got=None, passed=None) -> Case:
        if passed is None:
            passed = expected == got
        case = Case(law, input, expected, got, bool(passed))
        self.cases.append(case)
        return case

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.cases:
            self.cases.append(Case(prefix + c.law, c.input, c.expected, c.got, c.passed))
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def __bool__(self):
        return self.passed

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    def summary(self) -> dict:
        n_pass = sum(c.passed for c in self.cases)
        return {"total": len(self.cases), "passed": n_pass, "failed": len(self.cases) - n_pass}

    def to_json(self) -> list:
        return [c.to_json() for c in self.cases]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def __repr__(self):
        s = self.summary()
        return f"Report({self.title!r}, {s['passed']}/{s['total']} passed)"
