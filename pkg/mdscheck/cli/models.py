"""
Report Models

ReportEnvelope wraps every command result. JSON payloads carry every number
as a decimal string so that arbitrarily large integers survive any consumer.
"""

import json
import uuid
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from mdscheck import __version__


def encode_numbers(value: Any) -> Any:
    """Recursively turn ints and Fractions into decimal strings; bools stay bools."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): encode_numbers(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_numbers(v) for v in value]
    if hasattr(value, "to_dict"):
        return encode_numbers(value.to_dict())
    if isinstance(value, float):
        raise TypeError("floating point values are not allowed in reports")
    return str(value)


@dataclass
class ReportEnvelope:
    """Envelope for every command's JSON output."""

    command: str
    inputs: dict[str, Any]
    result: Any
    certificates: dict[str, Any] = field(default_factory=dict)
    citations: list[dict[str, str]] = field(default_factory=list)
    run_id: str = field(default_factory=lambda: str(uuid.uuid4()))
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "tool_version": self.version,
            "command": self.command,
            "inputs": encode_numbers(self.inputs),
            "result": encode_numbers(self.result),
            "certificates": encode_numbers(self.certificates),
            "citations": encode_numbers(self.citations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "ReportEnvelope":
        """Rebuild an envelope from its JSON form; numbers stay as strings."""
        return cls(
            command=data["command"],
            inputs=data["inputs"],
            result=data["result"],
            certificates=data.get("certificates", {}),
            citations=data.get("citations", []),
            run_id=data["run_id"],
            version=data["tool_version"],
        )
