"""Render channel-weight curves and rate-vs-distance panels from CSV files.

Pure presentation: the scripts never compute or reorder data, they draw the
columns the CSV provides.  Input schemas are the ones documented by the
logical-noise CLI (`channel --sweep` curve grids and `rates` sweeps).
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


class RenderError(ValueError):
    """Base class for input problems; message names the offending piece."""


class EmptyCsvError(RenderError):
    def __init__(self, path):
        super().__init__(f"empty CSV: {path} has a header but no data rows")


class MissingColumnError(RenderError):
    def __init__(self, path, column):
        self.column = column
        super().__init__(f"missing column {column!r} in {path}")


CHANNEL_X = "p"
RATES_REQUIRED = ("L_km", "raw_hz", "skr_hz")


@dataclass
class FigureSpec:
    inputs: list[str]
    kind: str  # "channel-curves" | "rate-panel"
    output: str
    log_x: bool = False
    log_y: bool = True
    title: str = ""
    labels: list[str] = field(default_factory=list)


def _read_csv(path: str) -> tuple[list[str], list[dict[str, str]]]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise EmptyCsvError(path)
        rows = list(reader)
    if not rows:
        raise EmptyCsvError(path)
    return list(reader.fieldnames), rows


def _column(path, rows, fields, name) -> list[float]:
    if name not in fields:
        raise MissingColumnError(path, name)
    return [float(r[name]) for r in rows]


def render(spec: FigureSpec) -> str:
    if spec.kind == "channel-curves":
        fig = _channel_figure(spec)
    elif spec.kind == "rate-panel":
        fig = _rates_figure(spec)
    else:
        raise RenderError(f"unknown figure kind {spec.kind!r}")
    out = Path(spec.output)
    fig.savefig(out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return str(out)


def _channel_figure(spec: FigureSpec):
    if len(spec.inputs) != 1:
        raise RenderError("channel curves take exactly one CSV")
    path = spec.inputs[0]
    fields, rows = _read_csv(path)
    xs = _column(path, rows, fields, CHANNEL_X)
    series = [f for f in fields if f != CHANNEL_X]
    if not series:
        raise MissingColumnError(path, "lambda_*")

    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for name in series:
        ys = _column(path, rows, fields, name)
        ax.plot(xs, ys, label=name.replace("lambda_", "λ "))
    ax.plot(xs, xs, "k--", linewidth=0.8, label="physical p")
    ax.set_xlabel("physical error probability p")
    ax.set_ylabel("effective weight")
    if spec.log_x:
        ax.set_xscale("log")
    if spec.log_y:
        ax.set_yscale("log")
        floor = min((y for name in series for y in _column(path, rows, fields, name) if y > 0),
                    default=1e-12)
        ax.set_ylim(bottom=max(floor * 0.5, 1e-16))
    ax.legend(fontsize=8)
    if spec.title:
        ax.set_title(spec.title)
    return fig


def _rates_figure(spec: FigureSpec):
    if not spec.inputs:
        raise RenderError("rate panel needs at least one CSV")
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for i, path in enumerate(spec.inputs):
        fields, rows = _read_csv(path)
        xs = _column(path, rows, fields, "L_km")
        raw = _column(path, rows, fields, "raw_hz")
        skr = _column(path, rows, fields, "skr_hz")
        label = spec.labels[i] if i < len(spec.labels) else Path(path).stem
        (line,) = ax.plot(xs, skr, label=f"{label} secret key")
        if i == 0:
            ax.plot(xs, raw, "--", color="grey", linewidth=1.0, label="raw rate")
        else:
            ax.plot(xs, raw, "--", color=line.get_color(), alpha=0.4, linewidth=0.8)
    ax.set_xlabel("total length L (km)")
    ax.set_ylabel("rate (Hz)")
    if spec.log_y:
        ax.set_yscale("log")
    if spec.log_x:
        ax.set_xscale("log")
    ax.legend(fontsize=8)
    if spec.title:
        ax.set_title(spec.title)
    return fig
