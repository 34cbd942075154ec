"""Machine-readable verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, List, Optional


@dataclass(frozen=True)
class Check:
    label: str
    source: str
    passed: bool
    counterexample: Optional[str] = None

    def to_json(self) -> dict:
        out = {"label": self.label, "source": self.source, "status": "pass" if self.passed else "fail"}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class VerificationReport:
    suite: str
    n: int
    seed: Optional[int] = None
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def overall(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, label: str, source: str, passed: bool, counterexample: str | None = None) -> bool:
        self.checks.append(Check(label, source, bool(passed), None if passed else counterexample))
        return bool(passed)

    def run(self, label: str, source: str, fn: Callable[[], object]) -> bool:
        """Record ``fn()``; a falsy return or a raised exception both count as failure.

        ``fn`` may return ``(ok, counterexample)`` or a bare truth value.
        """
        try:
            result = fn()
        except Exception as exc:  # a crash inside a check is a failed check, not a crashed suite
            return self.add(label, source, False, f"{type(exc).__name__}: {exc}")
        if isinstance(result, tuple):
            ok, where = result
        else:
            ok, where = result, None
        return self.add(label, source, ok, where or "identity does not hold")

    def extend(self, other: VerificationReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.label, c.source, c.passed, c.counterexample))

    def sorted(self) -> VerificationReport:
        """Checks ordered by label, so output never depends on evaluation order."""
        return VerificationReport(self.suite, self.n, self.seed, sorted(self.checks, key=lambda c: c.label))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "seed": self.seed,
            "overall": self.overall,
            "checks": [c.to_json() for c in self.checks],
        }

    def to_text(self) -> str:
        head = f"suite={self.suite} n={self.n} seed={self.seed} overall={self.overall.upper()}"
        lines = [head]
        for c in self.checks:
            line = f"  [{'PASS' if c.passed else 'FAIL'}] {c.label}"
            if c.counterexample:
                line += f"  -- {c.counterexample}"
            lines.append(line)
        return "\n".join(lines)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)
