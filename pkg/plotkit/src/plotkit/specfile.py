"""Figure-spec files: the same flat key = value grammar as run configs.

Example::

    kind = cut
    input = ot-400-final.csv, ot-800-final.csv
    variable = p
    cut_y = 0.3125
    labels = N=400, N=800
    output = pressure-cut.png

``levels = lo:hi:step`` fixes contour levels; ``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path

from .figures import FigureSpec, PlotError


def _parse_levels(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise PlotError(f"levels must be lo:hi:step, got {text!r}")
    return tuple(float(p) for p in parts)  # type: ignore[return-value]


_PARSERS = {
    "kind": str,
    "input": lambda s: [p.strip() for p in s.split(",") if p.strip()],
    "output": str,
    "variable": str,
    "cut_y": float,
    "levels": _parse_levels,
    "labels": lambda s: [p.strip() for p in s.split(",")],
    "title": str,
}

_FIELD_NAMES = {"input": "inputs"}


def parse_spec_text(text: str) -> FigureSpec:
    """Parse spec-file text; unknown keys are rejected."""
    kv: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise PlotError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip().lower().replace("-", "_")
        if key not in _PARSERS:
            raise PlotError(f"line {lineno}: unknown key {key!r}")
        try:
            kv[_FIELD_NAMES.get(key, key)] = _PARSERS[key](val.strip())
        except PlotError:
            raise
        except Exception as exc:
            raise PlotError(f"line {lineno}: bad value for {key}: {exc}")
    if "kind" not in kv:
        raise PlotError("spec must name a plot kind")
    if "output" not in kv:
        raise PlotError("spec must name an output image path")
    if "inputs" not in kv:
        raise PlotError("spec must list input files")
    return FigureSpec(**kv)


def load_spec(path: str | Path) -> FigureSpec:
    path = Path(path)
    if not path.exists():
        raise PlotError(f"missing spec file {path}")
    return parse_spec_text(path.read_text())
