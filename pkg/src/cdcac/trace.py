"""Structured solver traces (one JSON object per line) and the counters derived from them."""

from __future__ import annotations

import json
from collections import Counter
from typing import IO, Any, Dict, Iterable, List, Optional

from . import upoly
from .realroots import RealAlgebraic

EVENTS = (
    "sample",
    "unsat_intervals",
    "recursion_enter",
    "recursion_exit",
    "characterization",
    "interval",
    "cover_complete",
    "nullification",
    "resultant",
    "discriminant",
)


def ran_text(r: Optional[RealAlgebraic], var: str = "x", upper: bool = False) -> str:
    """Exact rendering of a bound or sample coordinate."""
    if r is None:
        return "oo" if upper else "-oo"
    if r.is_rational():
        return str(r.value)
    return f"(root-obj {upoly.to_string(r.defining, var)} {r.root_index()})"


def interval_record(I, var: str) -> Dict[str, Any]:
    return {
        "lower": ran_text(I.lower, var),
        "upper": ran_text(I.upper, var, upper=True),
        "point": I.is_point(),
        "L": [str(p) for p in I.L],
        "U": [str(p) for p in I.U],
        "P_main": [str(p) for p in I.P_main],
        "P_bot": [str(p) for p in I.P_bot],
        "origins": sorted(str(o) for o in I.origins),
    }


class Tracer:
    """Counts every event; builds and stores or writes records only when active.

    ``active`` tells callers whether it is worth rendering payloads.
    """

    def __init__(self, sink: Optional[IO[str]] = None, record: bool = False):
        self.sink = sink
        self.record = record
        self.events: List[Dict[str, Any]] = []
        self.counts: Counter = Counter()
        self.samples_per_dim: Counter = Counter()
        self.max_degree = 0
        self.intervals_created = 0

    @property
    def active(self) -> bool:
        return self.sink is not None or self.record

    def emit(self, event: str, dim: int, **fields: Any) -> None:
        if event not in EVENTS:
            raise ValueError(f"unknown trace event {event!r}")
        self.counts[event] += 1
        if event == "sample":
            self.samples_per_dim[dim] += 1
        if not self.active:
            return
        rec = {"event": event, "dim": dim}
        rec.update(fields)
        if self.record:
            self.events.append(rec)
        if self.sink is not None:
            self.sink.write(json.dumps(rec, sort_keys=False) + "\n")

    def note_degree(self, polys: Iterable) -> None:
        for p in polys:
            d = p.degree()
            if d > self.max_degree:
                self.max_degree = d

    def of_kind(self, event: str) -> List[Dict[str, Any]]:
        return [e for e in self.events if e["event"] == event]

    def stats(self) -> Dict[str, Any]:
        return {
            "samples_per_dimension": {str(k): v for k, v in sorted(self.samples_per_dim.items())},
            "intervals_created": self.intervals_created,
            "characterizations": self.counts["characterization"],
            "resultants": self.counts["resultant"],
            "discriminants": self.counts["discriminant"],
            "nullifications": self.counts["nullification"],
            "max_degree": self.max_degree,
        }
