from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

Number = Union[int, float, Fraction]

KINDS = ("exact", "lower", "upper")

# Closed-form real bounds are compared against integers with this slack.
FLOAT_TOL = 1e-9


def plain_number(x: Number) -> int | float:
    """Integral values become ``int``; everything else ``float``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    return float(x)


def jsonable(obj: Any) -> Any:
    if isinstance(obj, (Fraction, float)) and not isinstance(obj, bool):
        return plain_number(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


@dataclass(frozen=True)
class BoundValue:
    """A bound together with what kind of bound it is and why it holds.

    ``details`` carries method-specific extras (witness shifts, oracle values,
    intermediate parameters) and is emitted verbatim in JSON.
    """

    value: Number
    kind: str
    method: str
    assumptions: tuple[str, ...] = ()
    discrepancy: str | None = None
    details: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        object.__setattr__(self, "assumptions", tuple(self.assumptions))

    def to_dict(self) -> dict[str, Any]:
        out = {
            "value": plain_number(self.value),
            "kind": self.kind,
            "method": self.method,
            "assumptions": list(self.assumptions),
            "discrepancy": self.discrepancy,
        }
        out.update(jsonable(self.details))
        return out
