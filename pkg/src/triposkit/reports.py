"""Law reports shared by every checker and by the command line."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class LawEntry:
    check_id: str
    passed: bool
    witness: str = ""

    def to_json(self, suite: str, seed) -> str:
        rec = {"suite": suite, "check": self.check_id, "passed": self.passed,
               "witness": self.witness, "seed": seed}
        return json.dumps(rec, sort_keys=True)


@dataclass
class LawReport:
    """A list of named pass/fail checks; failures always carry a witness."""

    suite: str
    entries: list[LawEntry] = field(default_factory=list)
    seed: int | None = None

    def add(self, check_id: str, passed: bool, witness: str = "") -> bool:
        passed = bool(passed)
        if not passed and not witness:
            witness = "no witness recorded"
        self.entries.append(LawEntry(check_id, passed, witness if not passed else witness))
        return passed

    def extend(self, other: "LawReport", prefix: str = "") -> None:
        for e in other.entries:
            self.entries.append(LawEntry(prefix + e.check_id, e.passed, e.witness))

    @property
    def counts(self) -> dict[str, int]:
        npass = sum(e.passed for e in self.entries)
        return {"passed": npass, "failed": len(self.entries) - npass,
                "total": len(self.entries)}

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[LawEntry]:
        return [e for e in self.entries if not e.passed]

    def sorted_entries(self) -> list[LawEntry]:
        return sorted(self.entries, key=lambda e: e.check_id)

    def to_jsonl(self) -> str:
        return "".join(e.to_json(self.suite, self.seed) + "\n"
                       for e in self.sorted_entries())

    def to_human(self) -> str:
        lines = []
        width = max([len(e.check_id) for e in self.entries] + [10])
        for e in self.sorted_entries():
            mark = "PASS" if e.passed else "FAIL"
            extra = f"  {e.witness}" if e.witness else ""
            lines.append(f"{mark}  {e.check_id:<{width}}{extra}")
        c = self.counts
        lines.append(f"{self.suite}: {c['passed']}/{c['total']} passed"
                     + (f" (seed {self.seed})" if self.seed is not None else ""))
        return "\n".join(lines) + "\n"
