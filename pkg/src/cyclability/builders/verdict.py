"""Builder outcomes: a witness 2-factor, a backed impossibility, or unknown."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from ..twofactor import TwoFactor


class Reason(str, enum.Enum):
    """Why no separating 2-factor exists; values are the JSON tags."""

    VALENCY_BOUND = "valency_bound"
    CUBIC = "cubic"
    THREE_ROWS = "three_rows"
    THREE_COLUMNS = "three_columns"
    GRID = "grid"
    CIRCULANT_ORDER = "circulant_order"
    CIRCULANT_JUMP_TWO = "circulant_jump_two"
    CIRCULANT_NEAR_HALF = "circulant_near_half"
    ORDER_COUNT = "order_count"

    @property
    def characterization(self) -> str:
        return _LINES[self]


_LINES = {
    Reason.VALENCY_BOUND: "a k-valent graph cannot be k-spanning cyclable: a target's neighbours cannot all be used",
    Reason.CUBIC: "a 3-valent Abelian Cayley graph is 2-spanning cyclable only for Q3 and K2 x Cn with n >= 4",
    Reason.THREE_ROWS: "C_m x_l C_3 is 3-spanning cyclable only when m >= 4 and l = 0",
    Reason.THREE_COLUMNS: "C_3 x_l C_n is 3-spanning cyclable only when n >= 5, or n = 4 and l != 2",
    Reason.GRID: "pseudo-Cartesian products of cycles follow the three-target characterization",
    Reason.CIRCULANT_ORDER: "circ(n; +-1, +-s) is 2-spanning cyclable only for n >= 6",
    Reason.CIRCULANT_JUMP_TWO: "circ(n; +-1, +-2) is never 3-spanning cyclable",
    Reason.CIRCULANT_NEAR_HALF: "circ(n; +-1, +-s) with n = 2s+1 or 2s+2 is not 3-spanning cyclable",
    Reason.ORDER_COUNT: "separating k targets needs k disjoint cycles of length >= 3 (3k vertices) or girth-based counts",
}


@dataclass(frozen=True)
class Verdict:
    outcome: str  # witness | impossible | unknown
    two_factor: TwoFactor | None = None
    reason: Reason | None = None
    note: str = ""

    @classmethod
    def witness(cls, tf: TwoFactor, note: str = "") -> "Verdict":
        return cls("witness", two_factor=tf, note=note)

    @classmethod
    def impossible(cls, reason: Reason, note: str = "") -> "Verdict":
        return cls("impossible", reason=reason, note=note)

    @classmethod
    def unknown(cls, note: str = "") -> "Verdict":
        return cls("unknown", note=note)

    @property
    def is_witness(self) -> bool:
        return self.outcome == "witness"

    def relabel(self, perm) -> "Verdict":
        if self.two_factor is None:
            return self
        return Verdict(self.outcome, self.two_factor.relabel(perm), self.reason, self.note)

    def to_json(self) -> dict:
        out: dict = {"outcome": self.outcome}
        if self.reason is not None:
            out["reason"] = self.reason.value
        if self.two_factor is not None:
            out.update(self.two_factor.to_json())
        if self.note:
            out["note"] = self.note
        return out
