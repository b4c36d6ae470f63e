"""Report envelope, its JSON schema and the text rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

TOOL_NAME = "sepinv"
TOOL_VERSION = "0.1.0"

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["tool", "version", "command", "config", "status", "result"],
    "properties": {
        "tool": {"const": TOOL_NAME},
        "version": {"type": "string"},
        "command": {"enum": ["bound", "atoms", "witness", "separate", "decompose", "reproduce"]},
        "config": {"type": "object"},
        "status": {"enum": ["ok", "negative"]},
        "summary": {"type": "array", "items": {"type": "string"}},
        "result": {"type": "object"},
        "timing": {"type": "object", "additionalProperties": {"type": "number"}},
    },
    "additionalProperties": False,
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["group", "field", "degree", "subsets", "valid"],
    "properties": {
        "group": {"type": "string"},
        "field": {"type": "string"},
        "degree": {"type": "integer", "minimum": 1},
        "orbits": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "subsets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["orbit_mask", "kernel_vectors", "contained"],
                "properties": {
                    "orbit_mask": {"type": "integer", "minimum": 0},
                    "subset": {"type": "array", "items": {"type": "integer"}},
                    "kernel_vectors": {
                        "type": "array",
                        "items": {"type": "array", "items": {"type": "integer"}},
                    },
                    "hnf": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                    "contained": {"type": "boolean"},
                    "witness": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
        "valid": {"type": "boolean"},
    },
}


@dataclass
class Report:
    command: str
    config: dict
    result: dict
    status: str = "ok"
    summary: list[str] = field(default_factory=list)
    timing: Optional[dict] = None

    @property
    def exit_code(self) -> int:
        return 0 if self.status == "ok" else 2

    def to_json(self) -> dict:
        data = {
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "command": self.command,
            "config": self.config,
            "status": self.status,
            "summary": list(self.summary),
            "result": self.result,
        }
        if self.timing is not None:
            data["timing"] = self.timing
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> Report:
        return cls(
            command=data["command"],
            config=data["config"],
            result=data["result"],
            status=data["status"],
            summary=list(data.get("summary", [])),
            timing=data.get("timing"),
        )


def validate(data: dict) -> None:
    """Raise ``jsonschema.ValidationError`` when a report is malformed."""
    import jsonschema

    jsonschema.validate(data, REPORT_SCHEMA)
    if data["command"] == "bound" and data["result"].get("certificate"):
        jsonschema.validate(data["result"]["certificate"], CERTIFICATE_SCHEMA)


def _scalar(x) -> str:
    if isinstance(x, dict) and "coeffs" in x:
        return f"cyc{x['n']}{x['coeffs']}"
    if isinstance(x, list):
        return "[" + ", ".join(_scalar(y) for y in x) + "]"
    return str(x)


def render_text(data: dict) -> str:
    """Human-readable form of a report; depends on the JSON alone."""
    lines = [f"{data['tool']} {data['version']} {data['command']}: {data['status']}"]
    cfg = data["config"]
    shown = ", ".join(f"{k}={_scalar(cfg[k])}" for k in sorted(cfg) if k != "command")
    if shown:
        lines.append(f"  config: {shown}")
    for s in data.get("summary", []):
        lines.append(f"  {s}")
    result = data["result"]
    cmd = data["command"]
    if cmd == "bound":
        for step in result.get("trail", []):
            mark = "pass" if step["valid"] else "fail"
            line = f"  d={step['degree']}: {mark}"
            if not step["valid"]:
                line += (
                    f" ({step['failing_subsets']} failing; first I={step['first_failing_subset']},"
                    f" witness {step['witness_text']})"
                )
            lines.append(line)
    elif cmd == "atoms":
        for length, count in sorted(result["length_counts"].items(), key=lambda kv: int(kv[0])):
            lines.append(f"  length {length}: {count}")
        for a in result.get("atoms", []):
            lines.append(f"    {a}")
    elif cmd in ("witness", "separate"):
        for name, pair in result.get("invariants", {}).items():
            lines.append(f"  {name}: v -> {_scalar(pair['v'])}, w -> {_scalar(pair['w'])}")
        for r in result.get("degrees", []):
            verdict = "separated" if r["separated"] else "not separated"
            line = f"  degree {r['degree']}: {verdict}"
            if r["separated"]:
                line += f" by {r['invariant']} ({_scalar(r['value_v'])} vs {_scalar(r['value_w'])})"
            lines.append(line)
    elif cmd == "decompose":
        lines.append(f"  target: {result['target']}")
        for t in result["terms"]:
            lines.append(f"    {t['coefficient']:+d} * [{t['element']}]")
    elif cmd == "reproduce":
        for c in result["criteria"]:
            mark = "PASS" if c["passed"] else "FAIL"
            lines.append(f"  [{mark}] {c['key']}: {c['title']} | {c['detail']}")
    return "\n".join(lines) + "\n"
