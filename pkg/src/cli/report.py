"""
Command reports and their text / structured renderings.
"""
import json
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

PASS, FAIL, INFO = "pass", "fail", "info"


@dataclass
class CheckResult:
    name: str
    verdict: str
    details: Dict[str, Any] = field(default_factory=dict)
    witness: Optional[Any] = None
    timing_ms: Optional[float] = None


@dataclass
class Report:
    command: str
    checks: List[CheckResult] = field(default_factory=list)
    clock: float = field(default_factory=time.perf_counter, repr=False)

    @property
    def failed(self) -> bool:
        return any(check.verdict == FAIL for check in self.checks)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def add(self, name: str, ok: Optional[bool], witness: Any = None, **details) -> CheckResult:
        """ok=None records a construction summary rather than a verdict."""
        verdict = INFO if ok is None else (PASS if ok else FAIL)
        now = time.perf_counter()
        result = CheckResult(name, verdict, details, witness if verdict == FAIL else None, (now - self.clock) * 1000)
        self.clock = now
        self.checks.append(result)
        return result


def _plain(value: Any) -> Any:
    """JSON-ready copy: tuples become lists, mapping keys become strings."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


def to_structured(report: Report, timings: bool = False) -> Dict[str, Any]:
    checks = []
    for check in report.checks:
        entry: Dict[str, Any] = {"name": check.name, "verdict": check.verdict}
        if check.witness is not None:
            entry["witness"] = _plain(check.witness)
        entry["details"] = _plain(check.details)
        if timings and check.timing_ms is not None:
            entry["timing_ms"] = round(check.timing_ms, 3)
        checks.append(entry)
    return {"command": report.command, "checks": checks}


def _summary(details: Dict[str, Any]) -> str:
    return ", ".join(f"{k}={v}" for k, v in details.items() if not isinstance(v, (list, tuple, dict)))


def emit_report(report: Report, fmt: str = "text", timings: bool = False) -> str:
    if fmt == "structured":
        return json.dumps(to_structured(report, timings), indent=2)

    rows = [
        {"check": check.name, "verdict": check.verdict, "details": _summary(check.details)}
        for check in report.checks
    ]
    if timings:
        for row, check in zip(rows, report.checks):
            row["ms"] = "" if check.timing_ms is None else f"{check.timing_ms:.1f}"
    lines = [f"== {report.command} =="]
    if rows:
        lines.append(pd.DataFrame(rows).to_string(index=False))
    else:
        lines.append("(no checks)")
    for check in report.checks:
        if check.witness is not None:
            lines.append(f"witness for {check.name}: {check.witness}")
    return "\n".join(lines)


def failures(report: Report) -> Tuple[CheckResult, ...]:
    return tuple(check for check in report.checks if check.verdict == FAIL)
