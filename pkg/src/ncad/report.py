from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of an exact check.  ``witness`` locates the first failure."""

    name: str
    passed: bool
    checked: int = 0
    witness: Any = None
    sampled: bool = False
    notes: list = field(default_factory=list)
    value: Any = None  # computed quantity, e.g. an extracted constant

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        from .jsonio import encode_any

        out = {"check": self.name, "passed": self.passed, "checked": self.checked,
               "certificate": "sampled" if self.sampled else "exact"}
        if self.witness is not None:
            out["witness"] = encode_any(self.witness)
        if self.value is not None:
            out["value"] = encode_any(self.value)
        if self.notes:
            out["notes"] = list(self.notes)
        return out
