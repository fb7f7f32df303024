import json
from dataclasses import dataclass, field
from typing import Dict

from models.types import ALGORITHM_VERSION, Record, Verdict


REPORT_SCHEMA = "crdeck.report/1"


@dataclass
class VerificationReport:
    """Outcome of one corpus experiment"""
    experiment: str
    order: int
    corpus_size: int = 0
    corpus_source: str = "builtin"
    in_scope: bool = True
    class_counts: Dict[str, int] = field(default_factory=dict)
    pair_counts: Dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)
    multi_member_classes: list[list[str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    runtime_seconds: float = 0.0
    version: str = ALGORITHM_VERSION

    @property
    def verdict(self) -> Verdict:
        return Verdict.FAIL if self.violations else Verdict.PASS

    @property
    def requires_attention(self) -> bool:
        return bool(self.violations) or (self.in_scope and bool(self.findings))

    def finalize(self) -> 'VerificationReport':
        """Sort every listing so reports are reproducible."""
        self.violations.sort()
        self.findings.sort()
        self.multi_member_classes = sorted(sorted(c) for c in self.multi_member_classes)
        return self

    def to_record(self) -> Record:
        return {
            "schema": REPORT_SCHEMA,
            "version": self.version,
            "experiment": self.experiment,
            "order": self.order,
            "corpus_size": self.corpus_size,
            "corpus_source": self.corpus_source,
            "in_scope": self.in_scope,
            "verdict": self.verdict.value,
            "class_counts": dict(sorted(self.class_counts.items())),
            "pair_counts": dict(sorted(self.pair_counts.items())),
            "violations": self.violations,
            "findings": self.findings,
            "multi_member_classes": self.multi_member_classes,
            "notes": self.notes,
            "runtime_seconds": round(self.runtime_seconds, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=False)

    def to_text(self) -> str:
        lines = [
            f"experiment   {self.experiment}",
            f"order        {self.order}",
            f"corpus       {self.corpus_size} graphs ({self.corpus_source})",
            f"in scope     {'yes' if self.in_scope else 'no'}",
            f"verdict      {self.verdict.value}",
        ]
        if self.class_counts:
            lines.append("classes")
            lines.extend(f"  {name:<12} {count:>8}" for name, count in sorted(self.class_counts.items()))
        if self.pair_counts:
            lines.append("pairs")
            lines.extend(f"  {name:<28} {count:>8}" for name, count in sorted(self.pair_counts.items()))
        for title, items in (("violations", self.violations), ("findings", self.findings), ("notes", self.notes)):
            if items:
                lines.append(f"{title} ({len(items)})")
                lines.extend(f"  {item}" for item in items)
        if self.multi_member_classes:
            lines.append(f"multi-member classes ({len(self.multi_member_classes)})")
            lines.extend(f"  {' '.join(members)}" for members in self.multi_member_classes)
        lines.append(f"runtime      {self.runtime_seconds:.2f}s  [{self.version}]")
        return "\n".join(lines)
