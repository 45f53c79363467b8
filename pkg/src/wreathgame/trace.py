"""Deterministic NDJSON game traces.

One event per line; the first line is a header carrying the seed and the
run parameters.  Traces are byte-reproducible from (config, seed): events
are emitted with fixed key order and compact separators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterator, List


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


@dataclass
class GameTrace:
    """Replayable record of a single game."""

    header: Dict
    events: List[Dict] = field(default_factory=list)
    outcome: str = "survived"
    stats: Dict = field(default_factory=dict)

    def add(self, event: Dict) -> None:
        self.events.append(event)

    def lines(self) -> Iterator[str]:
        yield dumps(self.header)
        for ev in self.events:
            yield dumps(ev)

    def to_ndjson(self) -> str:
        return "\n".join(self.lines()) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_ndjson())

    @classmethod
    def parse(cls, text: str) -> "GameTrace":
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        if not rows or rows[0].get("ev") != "header":
            raise ValueError("trace must start with a header event")
        trace = cls(header=rows[0], events=rows[1:])
        for ev in trace.events:
            if ev.get("ev") == "end":
                trace.outcome = ev.get("outcome", trace.outcome)
        return trace
