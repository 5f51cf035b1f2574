"""Shared pass/fail log for the acceptance run; printed by the terminal summary hook."""
from __future__ import annotations

RESULTS: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> bool:
    RESULTS[criterion] = (ok, detail)
    print(line(criterion))
    return ok


def line(criterion: int) -> str:
    ok, detail = RESULTS[criterion]
    return f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
