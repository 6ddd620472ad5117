"""Parameter sweeps that emit plot data as CSV.

Modes and their columns:

``fig1``  ``w, central, weak1, weak2``   single-witness bounds
``fig3``  ``wx, wz, full, weak``         two-observable bounds
``fig4``  ``w, wz, bound, physical``     witness combined with ``wz``
``fig5``  ``w, central, approx, diff``   approximate single-witness bound

Rows are ordered lexicographically in the swept variables and values are
written with ``%.12g``; the output does not depend on the thread count.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bounds
from .errors import InputError

MODES = {
    "fig1": (("w",), ("central", "weak1", "weak2")),
    "fig3": (("wx", "wz"), ("full", "weak")),
    "fig4": (("w", "wz"), ("bound", "physical")),
    "fig5": (("w",), ("central", "approx", "diff")),
}

DEFAULT_RANGES = {
    "fig1": {"w": (0.0, 1.0)},
    "fig3": {"wx": (0.0, 1.0), "wz": (0.0, 1.0)},
    "fig4": {"w": (0.0, 1.0), "wz": (0.0, 1.0)},
    "fig5": {"w": (0.8, 1.0)},
}

DEFAULT_STEPS = {"fig1": 500, "fig3": 100, "fig4": 100, "fig5": 500}


@dataclass
class SweepSpec:
    mode: str
    ranges: dict[str, tuple[float, float]] = field(default_factory=dict)
    steps: int | None = None
    output: str | Path | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown sweep mode {self.mode!r}; choose from {sorted(MODES)}")
        variables = MODES[self.mode][0]
        merged = dict(DEFAULT_RANGES[self.mode])
        for name, rng in self.ranges.items():
            if name not in variables:
                raise InputError(f"mode {self.mode} sweeps {variables}, not {name!r}")
            merged[name] = (float(rng[0]), float(rng[1]))
        for name, (lo, hi) in merged.items():
            if not lo < hi:
                raise InputError(f"range for {name} needs min < max, got [{lo}, {hi}]")
        self.ranges = merged
        if self.steps is None:
            self.steps = DEFAULT_STEPS[self.mode]
        if self.steps < 2:
            raise InputError(f"steps must be at least 2, got {self.steps}")

    @property
    def columns(self) -> tuple[str, ...]:
        v, out = MODES[self.mode]
        return v + out

    def points(self) -> list[tuple[float, ...]]:
        axes = [np.linspace(*self.ranges[v], self.steps) for v in MODES[self.mode][0]]
        return [tuple(float(x) for x in p) for p in itertools.product(*axes)]


def _value(fn, *args) -> float:
    try:
        return fn(*args).value
    except bounds.DomainError:
        return math.nan


def _row(mode: str, pt: tuple[float, ...]) -> tuple[float, ...]:
    if mode == "fig1":
        (w,) = pt
        return (w, bounds.kd_single_central(w).value, _value(bounds.kd_single_weak1, w),
                bounds.kd_single_weak2(w).value)
    if mode == "fig3":
        wx, wz = pt
        return (wx, wz, bounds.kd_two_full(wx, wz).value, bounds.kd_two_weak(wx, wz).value)
    if mode == "fig4":
        w, wz = pt
        v = _value(bounds.kd_w_wz, w, wz)
        return (w, wz, v, 0.0 if math.isnan(v) else 1.0)
    (w,) = pt
    central = bounds.kd_single_central(w).value
    approx = _value(bounds.kd_single_approx, w)
    return (w, central, approx, approx - central)


def thread_count() -> int:
    env = os.environ.get("KEYWITNESS_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise InputError(f"KEYWITNESS_THREADS must be an integer, got {env!r}") from None
        return max(1, n)
    return os.cpu_count() or 1


def run_sweep(spec: SweepSpec, threads: int | None = None) -> list[tuple[float, ...]]:
    """Evaluate every grid point of ``spec``; rows come back in grid order."""
    pts = spec.points()
    threads = thread_count() if threads is None else threads
    if threads <= 1:
        return [_row(spec.mode, p) for p in pts]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda p: _row(spec.mode, p), pts))


def format_csv(columns, rows) -> str:
    lines = [",".join(columns)]
    lines.extend(",".join("%.12g" % v for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_sweep(spec: SweepSpec, threads: int | None = None) -> str:
    """Run the sweep and write it to ``spec.output`` (if set); returns the CSV text."""
    text = format_csv(spec.columns, run_sweep(spec, threads))
    if spec.output is not None:
        Path(spec.output).write_text(text, encoding="utf-8")
    return text
