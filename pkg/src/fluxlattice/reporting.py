"""Line-oriented pass/fail reports shared by the relation and Landau checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class RelationCheck:
    name: str
    holds: bool
    witness_site: tuple | None = None
    detail: str = ""


@dataclass
class RelationReport:
    checks: list[RelationCheck] = field(default_factory=list)

    def add(self, name: str, holds: bool, witness_site: tuple | None = None,
            detail: str = "") -> None:
        self.checks.append(RelationCheck(name, holds, witness_site, detail))

    @property
    def all_pass(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.holds else "FAIL"
            detail = c.detail
            if not c.holds and c.witness_site is not None:
                detail = (detail + " " if detail else "") + f"witness_site={list(c.witness_site)}"
            lines.append(f"RELATION {c.name}: {status}" + (f" {detail}" if detail else ""))
        return "\n".join(lines)

    def to_json_dict(self) -> list[dict]:
        return [
            {
                "relation": c.name,
                "holds": c.holds,
                "witness_site": list(c.witness_site) if c.witness_site is not None else None,
            }
            for c in self.checks
        ]
