"""Deterministic report emission: canonical JSON and flat CSV.

Every number is rendered through one 12-significant-digit formatter so a
report is byte-identical across runs with the same configuration.  JSON
keeps insertion order and two-space indentation; CSV rows are plain
comma-joined cells (no cell this package emits ever needs quoting) with a
single ``#``-prefixed reproducibility header carrying the resolved
configuration and tolerance set.
"""
from __future__ import annotations

import json
import math
from typing import Any, Mapping, Sequence

from .ball import PropositionReport
from .compare import TheoremReport
from .geometry import SpaceParams
from .sturm import EigenResult
from .tolerances import Tolerances

CSV_COLUMNS = (
    "kind", "n", "k", "m", "R1", "R2", "alpha", "ell", "index",
    "lambda", "nodes", "bc_residual",
)


def fmt_float(x: float) -> str:
    """12-significant-digit rendering; the single source of number text."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    return format(x, ".12g")


def _emit(obj: Any, depth: int, out: list[str], indent: int) -> None:
    pad = " " * (indent * (depth + 1))
    closing = " " * (indent * depth)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        # JSON has no literal for non-finite numbers.
        out.append(fmt_float(obj) if math.isfinite(obj) else "null")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, Mapping):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, val) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(key))}: ")
            _emit(val, depth + 1, out, indent)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(closing + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, val in enumerate(obj):
            out.append(pad)
            _emit(val, depth + 1, out, indent)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(closing + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    out: list[str] = []
    _emit(obj, 0, out, indent)
    return "".join(out)


def dumps_line(obj: Any) -> str:
    """Single-line canonical JSON (for diagnostics and CSV headers)."""
    text = dumps(obj, indent=0)
    return " ".join(part.strip() for part in text.splitlines())


def space_fields(space: SpaceParams) -> dict[str, Any]:
    return {"kind": space.kind.name.lower(), "n": space.n, "k": space.k, "m": space.m}


def eigen_record(res: EigenResult) -> dict[str, Any]:
    """One flat record per solve, in the canonical CSV column order."""
    problem = res.problem
    rec = space_fields(problem.space)
    rec.update({
        "R1": problem.domain.r_inner,
        "R2": problem.domain.r_outer,
        "alpha": problem.alpha,
        "ell": res.ell,
        "index": res.index,
        "lambda": res.lam,
        "nodes": res.nodes,
        "bc_residual": res.bc_residual,
    })
    return rec


def steklov_record(space: SpaceParams, R: float, direct: float, via_robin: float) -> dict[str, Any]:
    rec = space_fields(space)
    rec.update({
        "R": R,
        "sigma1": direct,
        "sigma1_via_robin_root": via_robin,
        "route_difference": direct - via_robin,
        "inverse_radius_margin": 1.0 / R - direct,
    })
    return rec


def proposition_record(rep: PropositionReport) -> dict[str, Any]:
    rec = space_fields(rep.space)
    rec.update({
        "R": rep.R,
        "alpha": rep.alpha,
        "lambda2": rep.lam2,
        "tau2": rep.tau2,
        "sigma1": rep.sigma1,
        "checks": [
            {"name": e.name, "margin": e.margin, "floor": e.floor, "passed": e.passed}
            for e in rep.entries
        ],
        "all_passed": rep.all_passed,
    })
    return rec


def theorem_record(rep: TheoremReport) -> dict[str, Any]:
    rec = space_fields(rep.space)
    rec.update({
        "volume": rep.volume,
        "alpha": rep.alpha,
        "ball_radius": rep.ball_radius,
        "sigma1": rep.sigma1,
        "lambda2_ball": rep.lam2_ball,
        "rows": [
            {
                "R1": row.r_inner,
                "R2": row.r_outer,
                "lambda2_domain": row.lam2_domain,
                "lambda2_ball": row.lam2_ball,
                "mode_ell": row.mode_ell,
                "mode_index": row.mode_index,
                "gap": row.gap,
                "asymmetry": row.asymmetry,
                "rayleigh_bound": row.rayleigh_bound,
                "resolvable": row.resolvable,
            }
            for row in rep.rows
        ],
        "fitted_constant": rep.fitted_constant,
        "all_gaps_positive": rep.all_gaps_positive,
        "gap_vanishes_with_asymmetry": rep.gap_vanishes_with_asymmetry,
        "gap_monotone": rep.gap_monotone,
    })
    return rec


def tolerance_fields(t: Tolerances) -> dict[str, Any]:
    return t.as_dict()


def build_report(command: str, config: Mapping[str, Any], tols: Tolerances,
                 result: Any) -> dict[str, Any]:
    """Assemble the reproducibility envelope around a result payload."""
    return {
        "command": command,
        "config": dict(config),
        "tolerances": tolerance_fields(tols),
        "result": result,
    }


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    if value is None:
        return ""
    return str(value)


def render_csv(rows: Sequence[Mapping[str, Any]], columns: Sequence[str],
               header: Mapping[str, Any] | None = None) -> str:
    """Rows to CSV text; ``header`` becomes a ``#`` reproducibility line."""
    lines: list[str] = []
    if header is not None:
        lines.append("# " + dumps_line(header))
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_cell(row.get(col)) for col in columns))
    return "\n".join(lines) + "\n"


def render_json(report: Mapping[str, Any]) -> str:
    return dumps(report) + "\n"
