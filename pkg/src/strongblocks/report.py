"""Verification reports: verdict + deterministic witness + timing."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    check: str
    ok: bool
    witness: dict | None = None
    engine: str = ""
    elapsed_ms: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "check": self.check,
            "verdict": bool(self.ok),
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.engine:
            out["engine"] = self.engine
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


class Stopwatch:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000.0
        return False
