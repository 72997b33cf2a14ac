"""Report records and JSON serialisation shared by the CLI and tests.

Output documents carry a top-level ``schema: 1`` marker; report entries
are {check_name, signature, status, witness?, counterexample?}.  All
serialisation is deterministic: same inputs, byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, List, Optional

from .reps import Representation, SpinSpace

SCHEMA = 1


@dataclass
class Report:
    check_name: str
    signature: Optional[str]
    status: str  # "pass" | "fail"
    witness: Optional[str] = None
    counterexample: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out: dict = {
            "check_name": self.check_name,
            "signature": self.signature,
            "status": self.status,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def report(check_name: str, signature, ok: bool, witness=None, counterexample=None) -> Report:
    return Report(
        check_name,
        str(signature) if signature is not None else None,
        "pass" if ok else "fail",
        witness,
        counterexample,
    )


def envelope(reports: List[Report]) -> dict:
    return {"schema": SCHEMA, "reports": [r.to_json() for r in reports]}


def to_json_text(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def serialize_representation(rep: Representation) -> dict:
    return {
        "schema": SCHEMA,
        "kind": rep.kind,
        "signature": [rep.sig.k, rep.sig.l],
        "dim": rep.dim,
        "images": [g.to_json() for g in rep.images],
    }


def serialize_spin_space(ss: SpinSpace) -> dict:
    return {
        "schema": SCHEMA,
        "signature": [ss.sig.k, ss.sig.l],
        "dim": ss.dim,
        "frame": [g.to_json() for g in ss.frame],
        "eta": ss.eta.to_json(),
        "iota": ss.iota.to_json(),
        "gamma": ss.gamma.to_json(),
    }


def render_table(rows: List[dict]) -> str:
    """Plain fixed-width table for terminal output."""
    if not rows:
        return "(empty)\n"
    headers = list(rows[0].keys())
    cells = [[_cell(row.get(h)) for h in headers] for row in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)),
        "  ".join("-" * w for w in widths),
    ]
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def _cell(value) -> str:
    if value is None:
        return "-"
    if value is True:
        return "T"
    if value is False:
        return "F"
    return str(value)
