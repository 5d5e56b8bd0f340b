"""Growth-exponent fits, run configuration, manifests and a small worker pool."""

from __future__ import annotations

import datetime as _dt
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import UsageError

DYADIC = (8, 16, 32, 64, 128)


@dataclass
class FitResult:
    slope: float
    intercept: float
    r2: float
    n_min: float
    n_max: float
    points: int

    def to_json(self) -> dict:
        return asdict(self)


def fit_growth_exponent(rows: Iterable) -> FitResult:
    """Least-squares slope of log(value) against log(n)."""
    pts = [(float(n), float(v)) for n, v in rows]
    if len(pts) < 3:
        raise UsageError("a growth fit needs at least three rows")
    if any(n <= 0 or v <= 0 for n, v in pts):
        raise UsageError("a growth fit needs positive n and values")
    x = np.log([n for n, _ in pts])
    y = np.log([v for _, v in pts])
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    pred = A @ np.array([slope, intercept])
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    ns = [n for n, _ in pts]
    return FitResult(float(slope), float(intercept), r2, min(ns), max(ns), len(pts))


def dyadic_rows(values: Sequence, points: Sequence[int] = DYADIC) -> list:
    """(n, values[n-1]) for n in the dyadic grid; ``values`` is indexed from n = 1."""
    return [(n, values[n - 1]) for n in points if n <= len(values)]


@dataclass
class RunConfig:
    command: str = ""
    k: int | None = None
    m: int | None = None
    gens: str | None = None
    n_max: int | None = None
    r_max: int | None = None
    seed: int = 0
    budget: int = 8
    window_slack: int = 2
    reach_exact_max: int = 14
    commutator_mode: str = "general"
    format: str | None = None
    out: str | None = None
    workers: int = 1
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def field_names(cls) -> set:
        return {f.name for f in fields(cls)}


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment.  Keys use flag spelling."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.lstrip("-").replace("-", "_")] = value
    return out


def manifest(config: RunConfig, command: Sequence[str] | None = None, timestamp: str | None = None) -> dict:
    from . import __version__

    ts = timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return {"version": __version__, "timestamp": ts, "config": config.to_dict(),
            "command": list(command) if command is not None else [config.command]}


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def run_pool(fn: Callable, items: Sequence, workers: int = 1) -> list:
    """Map fn over items on at most ``workers`` processes; results keep input order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


__all__ = ["FitResult", "fit_growth_exponent", "dyadic_rows", "RunConfig", "read_config_file",
           "manifest", "run_pool", "DYADIC", "dump_json"]
