"""Verdict record shared by all engines."""

from __future__ import annotations

from dataclasses import dataclass, field

SAT, UNSAT, INCONCLUSIVE, ERROR = "SAT", "UNSAT", "INCONCLUSIVE", "ERROR"


@dataclass
class Verdict:
    status: str
    engine: str
    stats: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    model: object = None
    proof: object = None    # inverse engines: the closure the trace refers to

    @property
    def sat(self) -> bool | None:
        return {SAT: True, UNSAT: False}.get(self.status)
