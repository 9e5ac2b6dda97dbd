"""Failure records shared by the validators and the axiom verifier."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Failure:
    axiom: str
    witness: tuple
    detail: str = ""

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "detail": self.detail}

    def __str__(self) -> str:
        s = f"{self.axiom}: witness {self.witness}"
        return f"{s} ({self.detail})" if self.detail else s


@dataclass
class ValidationReport:
    structural: list[Failure] = field(default_factory=list)
    failures: list[Failure] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.structural and not self.failures

    def axioms_failed(self) -> set[str]:
        return {f.axiom for f in self.structural + self.failures}

    def fail(self, axiom: str, *witness, detail: str = "") -> None:
        self.failures.append(Failure(axiom, tuple(witness), detail))

    def broken(self, axiom: str, *witness, detail: str = "") -> None:
        self.structural.append(Failure(axiom, tuple(witness), detail))

    def count(self, axiom: str, n: int = 1) -> None:
        self.checked[axiom] = self.checked.get(axiom, 0) + n

    def merge(self, other: "ValidationReport", prefix: str = "") -> None:
        for f in other.structural:
            self.structural.append(Failure(prefix + f.axiom, f.witness, f.detail))
        for f in other.failures:
            self.failures.append(Failure(prefix + f.axiom, f.witness, f.detail))
        for k, v in other.checked.items():
            self.count(prefix + k, v)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "structural": [f.to_dict() for f in self.structural],
            "failures": [f.to_dict() for f in self.failures],
            "checked": dict(sorted(self.checked.items())),
        }

    def __str__(self) -> str:
        if self.ok:
            return "valid (" + ", ".join(f"{k}: {v}" for k, v in sorted(self.checked.items())) + ")"
        lines = [f"structural error {f}" for f in self.structural]
        lines += [f"axiom failure {f}" for f in self.failures]
        return "\n".join(lines)
