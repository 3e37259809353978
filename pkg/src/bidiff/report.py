"""Check results shared by the covariance checks and the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    """Outcome of one exact identity check."""

    name: str
    passed: bool
    detail: str = ""
    notes: tuple[str, ...] = ()

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status}  {self.name}"
        if self.detail:
            out += f"  [{self.detail}]"
        return out


def all_passed(results) -> bool:
    return all(r.passed for r in results)
