"""Grid sweeps over alpha or p, emitted as fixed-schema CSV or JSON."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds as B
from .errors import DomainError, ParameterError
from .ldm import ChannelConfig, Correlation, Region, classify_region

__all__ = [
    "SCHEMA",
    "CSV_COLUMNS",
    "SweepSpec",
    "bounds_record",
    "sweep_rows",
    "rows_to_csv",
    "rows_to_json",
    "worker_count",
    "PRESETS",
    "preset_specs",
]

SCHEMA = 1
DEFAULT_ND = 60
CSV_COLUMNS = (
    "index", "axis", "value", "n_d", "n_c", "alpha", "p", "T", "correlation", "timing", "csi",
    "region", "converse", "achievable", "exact", "worst_case", "delta_00", "delta_01",
    "average", "feedback", "corners",
)
_RATE_COLUMNS = ("converse", "achievable", "worst_case", "delta_00", "delta_01", "average", "feedback")
_CORNERS = {Region.MI: ("C_LMI", "C_GMI"), Region.SI: ("C_LSI", "C_GSI")}


def worker_count() -> int:
    cap = os.environ.get("BURSTYIC_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError as exc:
            raise ParameterError(f"BURSTYIC_THREADS must be an integer, got {cap!r}") from exc
    return n


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    grid: tuple[float, ...]
    fixed: ChannelConfig
    settings: tuple[B.Setting, ...]
    normalize: bool = False
    budget: int | None = None
    tag: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.axis not in ("alpha", "p"):
            raise ParameterError("axis must be 'alpha' or 'p'")
        grid = tuple(float(v) for v in self.grid)
        if not grid:
            raise ParameterError("grid must be nonempty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ParameterError("grid must be strictly increasing")
        if self.axis == "p" and not (0.0 <= grid[0] and grid[-1] <= 1.0):
            raise ParameterError("p grid must lie in [0, 1]")
        if self.axis == "alpha" and grid[0] < 0.0:
            raise ParameterError("alpha grid must be nonnegative")
        if self.fixed.n_d < 1:
            raise ParameterError("sweeps need n_d >= 1")
        if not self.settings:
            raise ParameterError("at least one setting is required")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "settings", tuple(self.settings))

    def configs(self) -> list[ChannelConfig]:
        if self.axis == "p":
            return [self.fixed.with_(p=v) for v in self.grid]
        nd = self.fixed.n_d
        return [self.fixed.with_(n_c=int(round(v * nd))) for v in self.grid]


def _num(v):
    return None if v is None else float(v)


def bounds_record(cfg: ChannelConfig, setting: B.Setting, budget: int | None = None) -> dict:
    """Every catalog value relevant to one configuration and setting."""
    if cfg.n_d < 1:
        raise ParameterError("n_d must be at least 1")
    region = classify_region(cfg)
    rec = {
        "n_d": cfg.n_d, "n_c": cfg.n_c, "alpha": cfg.alpha, "p": cfg.p, "T": cfg.T,
        "correlation": cfg.correlation.value, "timing": setting.timing.value,
        "csi": setting.csi.value, "region": region.value,
        "nonbursty": B.nonbursty_sum_capacity(cfg.n_d, cfg.n_c).value,
        "converse": None, "achievable": None, "exact": None, "sources": {},
        "worst_case": None, "delta_00": None, "delta_01": None, "average": None,
        "feedback": None, "corners": {},
    }
    if setting.timing is B.Timing.QUASI_STATIC:
        wc = B.qs_worst_case_capacity(cfg)
        avg = B.average_sum_capacity(cfg, setting)
        rec.update(worst_case=wc.value, average=avg.value, converse=avg.value,
                   achievable=avg.value, exact=True)
        rec["sources"] = {"worst_case": wc.source, "average": avg.source}
        try:
            opp = B.qs_opportunistic(cfg, setting)
        except DomainError:
            pass
        else:
            rec["delta_00"] = opp.deltas.get("00", 0.0)
            rec["delta_01"] = opp.deltas.get("01")
    else:
        conv = B.ergodic_converse(cfg, setting)
        ach = B.ergodic_achievable(cfg, setting, budget=budget)
        rec.update(converse=conv.value, achievable=ach.value,
                   exact=conv.kind is B.Kind.EXACT and ach.kind is B.Kind.EXACT)
        rec["sources"] = {"converse": conv.source, "achievable": ach.source}
    if cfg.correlation is Correlation.FULLY_CORRELATED:
        fb = B.feedback_capacity(cfg)
        rec["feedback"] = fb.value
        rec["sources"]["feedback"] = fb.source
    for name in _CORNERS.get(region, ()):
        rec["corners"][name] = B.named_corner(cfg, name)
    return rec


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _point(args):
    index, axis, value, cfg, setting, normalize, budget = args
    rec = bounds_record(cfg, setting, budget)
    if normalize:
        for col in _RATE_COLUMNS:
            if rec[col] is not None:
                rec[col] = rec[col] / cfg.n_d
        rec["corners"] = {k: v / cfg.n_d for k, v in rec["corners"].items()}
    rec["index"], rec["axis"] = index, axis
    rec["value"] = value
    return rec


def sweep_rows(spec: SweepSpec, workers: int | None = None) -> list[dict]:
    """One record per grid point per setting, ordered by grid index then setting."""
    jobs = []
    for cfg, value in zip(spec.configs(), spec.grid):
        for setting in spec.settings:
            jobs.append((len(jobs), spec.axis, value, cfg, setting, spec.normalize, spec.budget))
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 64:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_point, jobs, chunksize=16))
    else:
        rows = [_point(j) for j in jobs]
    rows.sort(key=lambda r: r["index"])
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        corners = ";".join(f"{k}={_fmt(v)}" for k, v in sorted(r["corners"].items()))
        w.writerow([_fmt(r[c]) if c != "corners" else corners for c in CSV_COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: list[dict], **meta) -> str:
    return json.dumps({"schema": SCHEMA, **meta, "rows": rows}, sort_keys=True, indent=1)


_ERG = B.Timing.ERGODIC
_QS = B.Timing.QUASI_STATIC
_ERGODIC_ALL = tuple(B.Setting(_ERG, c) for c in B.CSI)
_QS_ALL = (B.Setting(_QS, B.CSI.LOCAL_CSIR), B.Setting(_QS, B.CSI.GLOBAL_CSIRT))


def _p_grid(step: float = 0.05) -> tuple[float, ...]:
    n = int(round(1 / step))
    return tuple(i / n for i in range(n + 1))


def _alpha_grid(nd: int = DEFAULT_ND, top: float = 2.5) -> tuple[float, ...]:
    return tuple(k / nd for k in range(1, int(top * nd) + 1))


def preset_specs(name: str, n_d: int = DEFAULT_ND, budget: int | None = None) -> list[SweepSpec]:
    """Sweeps behind a named preset; see PRESETS for descriptions."""
    ind, full = Correlation.INDEPENDENT, Correlation.FULLY_CORRELATED
    base = ChannelConfig(n_d, 0, 0.5)
    if name == "csirt-gain":
        return [SweepSpec("p", _p_grid(0.1), base.with_(n_c=int(Fraction(a) * n_d)),
                          (B.Setting(_ERG, B.CSI.LOCAL_CSIR), B.Setting(_ERG, B.CSI.LOCAL_CSIRT)),
                          True, budget, tag=f"alpha={a}")
                for a in ("3/5", "7/10", "7/6")]
    if name in ("ergodic-p", "ergodic-p-correlated"):
        corr = ind if name == "ergodic-p" else full
        return [SweepSpec("p", _p_grid(), base.with_(n_c=int(Fraction(a) * n_d), correlation=corr),
                          _ERGODIC_ALL, True, budget, tag=f"alpha={a}")
                for a in ("1/3", "3/5", "7/10", "8/5")]
    if name in ("qs-alpha", "qs-alpha-correlated"):
        corr = ind if name == "qs-alpha" else full
        return [SweepSpec("alpha", _alpha_grid(n_d), base.with_(p=0.5, correlation=corr),
                          _QS_ALL, True, budget)]
    if name == "ergodic-alpha":
        return [SweepSpec("alpha", _alpha_grid(n_d), base.with_(p=p),
                          (B.Setting(_ERG, B.CSI.LOCAL_CSIR), B.Setting(_ERG, B.CSI.GLOBAL_CSIRT)),
                          True, budget, tag=f"p={p}")
                for p in (0.2, 0.5, 0.8, 1.0)]
    raise ParameterError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")


PRESETS = {
    "csirt-gain": "local CSIR vs optimized local CSIRT over p at alpha = 3/5, 7/10, 7/6",
    "ergodic-p": "all ergodic CSI levels over p at one alpha per region, independent states",
    "ergodic-p-correlated": "same with fully correlated states, plus the feedback capacity",
    "qs-alpha": "quasi-static worst-case, opportunistic and average rates over alpha",
    "qs-alpha-correlated": "same with fully correlated states",
    "ergodic-alpha": "normalized ergodic bounds over alpha (W-curve at p = 1, V-curve for p <= 1/2)",
}
