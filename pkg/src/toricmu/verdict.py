"""Outcome of an exact identity check."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    ok: bool
    detail: str = ""
    lhs: object = None
    rhs: object = None

    def __bool__(self) -> bool:
        return self.ok
