"""Report value objects shared by the verification layers and the CLI.

Serialization is deterministic: identical reports produce byte-identical
output.  JSON uses sorted keys; floats rely on repr round-tripping;
non-finite values (which occur when tabulating the printed structure
functions) are carried as the strings "inf", "-inf", "nan" because the
JSON emitter rejects bare non-finite numbers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Any

DEFAULT_RESIDUAL_TOL = 1e-10
DEFAULT_LEAK_TOL = 1e-10
DEFAULT_ORACLE_TOL = 1e-12


@dataclass(frozen=True)
class Tolerances:
    residual: float = DEFAULT_RESIDUAL_TOL
    leak: float = DEFAULT_LEAK_TOL
    oracle: float = DEFAULT_ORACLE_TOL

    def __post_init__(self) -> None:
        for name in ("residual", "leak", "oracle"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} tolerance must be positive")

    def as_dict(self) -> dict[str, float]:
        return {"residual": self.residual, "leak": self.leak, "oracle": self.oracle}


@dataclass(frozen=True)
class CheckResult:
    """One verified identity: its residual against the stated tolerance,
    the truncation leak it incurred, and a human-readable detail line."""

    name: str
    equation: str
    residual: float
    tolerance: float
    leak: float = 0.0
    passed: bool = True
    detail: str = ""

    @staticmethod
    def from_residual(
        name: str,
        equation: str,
        residual: float,
        tolerance: float,
        leak: float = 0.0,
        leak_tolerance: float = DEFAULT_LEAK_TOL,
        detail: str = "",
    ) -> "CheckResult":
        # bool() guards against numpy scalars sneaking into the record
        passed = bool(residual <= tolerance and leak <= leak_tolerance)
        return CheckResult(
            name=name,
            equation=equation,
            residual=float(residual),
            tolerance=float(tolerance),
            leak=float(leak),
            passed=passed,
            detail=detail,
        )


@dataclass(frozen=True)
class VerificationReport:
    family: str
    params: dict[str, Any] = field(default_factory=dict)
    dim: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)
    checks: tuple[CheckResult, ...] = ()
    # optional comparison rows {n, derived, printed_re, printed_im, match};
    # mismatches here are reported, never counted as failed checks
    derived_vs_printed: tuple[dict[str, Any], ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def n_failed(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    def failed_checks(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def extended(self, checks) -> "VerificationReport":
        return replace(self, checks=self.checks + tuple(checks))

    def with_table(self, rows) -> "VerificationReport":
        return replace(self, derived_vs_printed=tuple(rows))

    def summary_line(self) -> str:
        if self.passed:
            return f"PASS {self.family} ({len(self.checks)} checks)"
        return f"FAIL {self.family} ({self.n_failed}/{len(self.checks)} checks failed)"

    def to_json(self) -> str:
        return encode_json(self.as_dict())

    def as_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "params": dict(self.params),
            "dim": self.dim,
            "tolerances": self.tolerances.as_dict(),
            "passed": self.passed,
            "n_checks": len(self.checks),
            "n_failed": self.n_failed,
            "checks": [
                {
                    "name": c.name,
                    "equation": c.equation,
                    "residual": c.residual,
                    "tolerance": c.tolerance,
                    "leak": c.leak,
                    "passed": c.passed,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
            "derived_vs_printed": [dict(r) for r in self.derived_vs_printed],
        }

    def to_csv(self) -> str:
        lines = [
            "# "
            + " ".join(
                [f"family={self.family}", f"dim={self.dim}"]
                + [f"{k}={v}" for k, v in sorted(self.params.items())]
                + [f"tol_{k}={v!r}" for k, v in sorted(self.tolerances.as_dict().items())]
            ),
            "name,equation,residual,tolerance,leak,passed,detail",
        ]
        for c in self.checks:
            lines.append(
                ",".join(
                    [
                        _csv_field(c.name),
                        _csv_field(c.equation),
                        _csv_float(c.residual),
                        _csv_float(c.tolerance),
                        _csv_float(c.leak),
                        "true" if c.passed else "false",
                        _csv_field(c.detail),
                    ]
                )
            )
        if self.derived_vs_printed:
            lines.append("# derived_vs_printed")
            lines.append("n,derived,printed_re,printed_im,match")
            for r in self.derived_vs_printed:
                lines.append(
                    ",".join(
                        [
                            str(r["n"]),
                            _csv_float(r["derived"]),
                            _csv_float(r["printed_re"]),
                            _csv_float(r["printed_im"]),
                            "true" if r["match"] else "false",
                        ]
                    )
                )
        return "\n".join(lines) + "\n"


def _csv_float(x: float) -> str:
    return repr(float(x))


def _csv_field(text: str) -> str:
    # comma-separated output quotes nothing, so fields must not carry commas
    return str(text).replace(",", ";")


def _encode_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)  # "inf", "-inf", "nan"
    if isinstance(value, dict):
        return {k: _encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode_value(v) for v in value]
    return value


def encode_json(payload: Any) -> str:
    return json.dumps(
        _encode_value(payload), sort_keys=True, indent=2, allow_nan=False
    ) + "\n"


def _decode_float(value: Any) -> Any:
    if isinstance(value, str) and value in ("inf", "-inf", "nan"):
        return float(value)
    return value


def report_from_json(text: str) -> VerificationReport:
    data = json.loads(text)
    checks = tuple(
        CheckResult(
            name=c["name"],
            equation=c["equation"],
            residual=_decode_float(c["residual"]),
            tolerance=_decode_float(c["tolerance"]),
            leak=_decode_float(c["leak"]),
            passed=c["passed"],
            detail=c["detail"],
        )
        for c in data["checks"]
    )
    rows = tuple(
        {k: _decode_float(v) for k, v in row.items()}
        for row in data.get("derived_vs_printed", [])
    )
    return VerificationReport(
        family=data["family"],
        params=data["params"],
        dim=data["dim"],
        tolerances=Tolerances(**data["tolerances"]),
        checks=checks,
        derived_vs_printed=rows,
    )
