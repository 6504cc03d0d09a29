"""Ordered log of cross-worker transfers with payload accounting.

Every piece of data crossing the worker boundary goes through here; the
event stream is fully determined by the algorithm (no wall-clock anywhere),
so a fixed seed reproduces the ledger byte for byte.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

BYTES_PER_ELEM = 16  # one (sigma, delta) or (dist, sigma) value pair


@dataclass
class CommEvent:
    source: int
    phase: str        # 'forward' | 'backward'
    step_tag: str
    direction: str    # '0->1' | '1->0'
    payload_elems: int


@dataclass
class CommLedger:
    events: list = field(default_factory=list)

    def log(self, source, phase, step_tag, direction, payload_elems) -> None:
        self.events.append(
            CommEvent(source, phase, step_tag, direction, payload_elems)
        )

    def count(self, phase=None, source=None) -> int:
        return sum(
            1
            for e in self.events
            if (phase is None or e.phase == phase)
            and (source is None or e.source == source)
        )

    def volume(self, phase=None, source=None) -> int:
        return sum(
            e.payload_elems
            for e in self.events
            if (phase is None or e.phase == phase)
            and (source is None or e.source == source)
        )

    def totals(self) -> dict:
        return {
            "events": len(self.events),
            "forward_events": self.count("forward"),
            "backward_events": self.count("backward"),
            "payload_elems": self.volume(),
            "payload_bytes": self.volume() * BYTES_PER_ELEM,
        }

    def as_dicts(self) -> list:
        return [asdict(e) for e in self.events]
