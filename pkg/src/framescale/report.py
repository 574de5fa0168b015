"""Analysis orchestration and byte-stable JSON reports.

Reports carry a version tag, echo the input and tolerances, and keep the
output deterministic: keys sorted, floats printed with 17 significant
digits, exact scalars printed as 'p/q' strings.  Vertex indices in reports
are 1-based (v1..vm).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import QuadExt, exact_str
from .filters import (
    NOT_SCALABLE,
    FilterBattery,
    FilterConfig,
    run_all_filters,
)
from .frames import Frame, classify_tightness, is_frame
from .graphs import FrameGraph, GraphStats, build_graph, compute_stats
from .linalg import SymmetricMatrix
from .scaler import OracleResult, StrictResult, build_lp, solve_scalable, solve_strict

REPORT_VERSION = 1


@dataclass(frozen=True)
class AnalysisConfig:
    tol: float = 1e-8  # solver / Parseval tolerance
    tol_zero: float = 1e-10  # adjacency threshold (0 in exact mode)
    filters_only: bool = False
    enable_experimental: bool = False
    vertex_cap: int = 32


def _scalar(x):
    if isinstance(x, float):
        return x
    if isinstance(x, (Fraction, QuadExt)):
        return exact_str(x)
    if isinstance(x, int):
        return x
    return exact_str(x)  # gmpy2.mpq and friends


def _matrix_json(s: SymmetricMatrix):
    return {
        "order": s.order,
        "rows": [[_scalar(x) for x in row] for row in s.rows()],
    }


def _stats_json(stats: GraphStats):
    return {
        "components": [[v + 1 for v in c] for c in stats.components],
        "is_connected": stats.is_connected,
        "diameter": stats.diameter,
        "is_bipartite": stats.is_bipartite,
        "component_part_sizes": (
            [list(p) for p in stats.component_part_sizes]
            if stats.component_part_sizes is not None
            else None
        ),
        "alpha": stats.alpha,
        "max_independent_set": (
            [v + 1 for v in stats.max_independent_set]
            if stats.max_independent_set is not None
            else None
        ),
        "bridges": [[i + 1, j + 1] for (i, j) in stats.bridges],
        "leaves": [v + 1 for v in stats.leaves],
        "is_complete": stats.is_complete,
        "is_empty": stats.is_empty,
        "is_cycle": stats.is_cycle,
        "induced_path_vertices": stats.induced_path_vertices,
        "induced_path_witness": (
            [v + 1 for v in stats.induced_path_witness]
            if stats.induced_path_witness is not None
            else None
        ),
        "cap_exceeded": stats.cap_exceeded,
    }


def _battery_json(battery: FilterBattery):
    return [
        {
            "filter_id": r.filter_id,
            "citation": r.citation,
            "applicable": r.applicable,
            "verdict": r.verdict,
            "certificate": r.certificate,
            "experimental": r.experimental,
        }
        for r in battery.reports
    ]


def _oracle_json(res: OracleResult):
    out = {"status": res.status}
    if res.weights is not None:
        out["weights"] = [_scalar(w) for w in res.weights]
        out["scalings"] = list(res.scalings)
        out["residual"] = res.residual
    if res.farkas is not None:
        out["farkas"] = _matrix_json(res.farkas)
    if res.detail:
        out["detail"] = res.detail
    return out


def _strict_json(res: StrictResult):
    out = {"status": res.status}
    if res.weights is not None:
        out["weights"] = [_scalar(w) for w in res.weights]
        out["scalings"] = list(res.scalings)
        out["margin"] = _scalar(res.margin)
        out["residual"] = res.residual
    if res.farkas is not None:
        out["farkas"] = _matrix_json(res.farkas)
    if res.detail:
        out["detail"] = res.detail
    return out


def _conclusion(battery: FilterBattery, nonneg: OracleResult | None,
                strict: StrictResult | None, warnings: list):
    if nonneg is None:
        return {
            "verdict": battery.combined_verdict,
            "basis": "filters_only",
        }
    if nonneg.status == "numerically_ambiguous" or (
        strict is not None and strict.status == "numerically_ambiguous"
    ):
        return {"verdict": "numerically_ambiguous", "basis": "oracle"}
    if nonneg.status == "infeasible":
        return {"verdict": NOT_SCALABLE, "basis": "oracle+farkas"}
    # feasible from here on
    if battery.combined_verdict == NOT_SCALABLE:
        warnings.append(
            "internal inconsistency: a filter proved not_scalable but the "
            "oracle found weights"
        )
    if strict is not None and strict.status == "strictly_feasible":
        return {"verdict": "strictly_scalable", "basis": "oracle"}
    return {
        "verdict": "scalable",
        "basis": "oracle",
        "strict_status": strict.status if strict is not None else "skipped",
    }


def analyze_frame(frame: Frame, config: AnalysisConfig | None = None,
                  source: str = "") -> dict:
    config = config or AnalysisConfig()
    tol_zero = 0.0 if frame.is_exact else config.tol_zero
    warnings = []
    if not is_frame(frame, config.tol):
        warnings.append("input does not span R^n (not a frame)")
    graph = build_graph(frame, tol_zero)
    stats = compute_stats(graph, config.vertex_cap)
    battery = run_all_filters(
        graph,
        frame.dim,
        frame=frame,
        config=FilterConfig(
            tol_zero=tol_zero,
            vertex_cap=config.vertex_cap,
            enable_experimental=config.enable_experimental,
        ),
        stats=stats,
    )
    warnings.extend(battery.warnings)

    nonneg = strict = None
    if not config.filters_only:
        lp = build_lp(frame)
        nonneg = solve_scalable(lp, config.tol)
        strict = solve_strict(lp, config.tol)

    tightness = classify_tightness(frame, config.tol)
    conclusion = _conclusion(battery, nonneg, strict, warnings)
    return {
        "report_version": REPORT_VERSION,
        "input": {
            "source": source,
            "m": frame.count,
            "n": frame.dim,
            "scalar_mode": frame.scalar_mode,
            "tol": config.tol,
            "tol_zero": tol_zero,
            "tightness": {
                "kind": tightness.kind,
                "bound": _scalar(tightness.bound)
                if tightness.bound is not None
                else None,
            },
        },
        "graph": {
            "edges": [[i + 1, j + 1] for (i, j) in graph.sorted_edges()],
            "stats": _stats_json(stats),
        },
        "filters": _battery_json(battery),
        "combined_filter_verdict": battery.combined_verdict,
        "oracle": (
            {"skipped": True}
            if nonneg is None
            else {"nonneg": _oracle_json(nonneg), "strict": _strict_json(strict)}
        ),
        "conclusion": conclusion,
        "warnings": warnings,
    }


def analyze_graph(graph: FrameGraph, dim: int,
                  config: AnalysisConfig | None = None,
                  source: str = "") -> dict:
    """Filter battery on an abstract graph with a declared dimension; no
    vectors means no oracle."""
    config = config or AnalysisConfig()
    stats = compute_stats(graph, config.vertex_cap)
    battery = run_all_filters(
        graph,
        dim,
        config=FilterConfig(
            tol_zero=config.tol_zero,
            vertex_cap=config.vertex_cap,
            enable_experimental=config.enable_experimental,
        ),
        stats=stats,
    )
    warnings = list(battery.warnings)
    conclusion = _conclusion(battery, None, None, warnings)
    return {
        "report_version": REPORT_VERSION,
        "input": {
            "source": source,
            "m": graph.vertex_count,
            "n": dim,
            "scalar_mode": "graph_only",
            "tol_zero": config.tol_zero,
        },
        "graph": {
            "edges": [[i + 1, j + 1] for (i, j) in graph.sorted_edges()],
            "stats": _stats_json(stats),
        },
        "filters": _battery_json(battery),
        "combined_filter_verdict": battery.combined_verdict,
        "oracle": {"skipped": True},
        "conclusion": conclusion,
        "warnings": warnings,
    }


_FLOAT_TOKEN = re.compile(r'"\\u0001F(\d+)\\u0001"')


def stable_dumps(obj) -> str:
    """json.dumps with sorted keys and floats fixed at 17 significant digits."""
    floats: list[str] = []

    def walk(o):
        if isinstance(o, float):
            floats.append(format(o, ".17g"))
            return f"\x01F{len(floats) - 1}\x01"
        if isinstance(o, dict):
            return {k: walk(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [walk(x) for x in o]
        return o

    text = json.dumps(walk(obj), sort_keys=True, indent=2)
    return _FLOAT_TOKEN.sub(lambda m: floats[int(m.group(1))], text)
