"""Python access to the stringtop commands."""

import json
from dataclasses import dataclass, field
from os import PathLike
from typing import Optional, Union

from ._stringtop import (
    Error,
    ParseError,
    TruncationError,
    ValidationError,
    canonical,
    commands,
    sha256_hex,
)
from ._stringtop import run as _run

__all__ = [
    "Error",
    "ParseError",
    "Result",
    "TruncationError",
    "ValidationError",
    "canonical",
    "commands",
    "run",
    "sha256_hex",
]


@dataclass
class Result:
    exit_code: int
    text: str
    error: str
    document: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.exit_code == 0


def run(
    command: str,
    path: Union[str, PathLike],
    max_degree: Optional[int] = None,
    copies: int = 2,
    expected_d: Optional[int] = None,
) -> Result:
    """Same as `stringtop COMMAND PATH --json`, without the timing block."""
    code, text, error, document = _run(command, str(path), max_degree, copies, expected_d)
    return Result(code, text, error, json.loads(document))
