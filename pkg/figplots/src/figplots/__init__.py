"""Figure scripts for logical-noise CSV output."""

from .render import EmptyCsvError, FigureSpec, MissingColumnError, RenderError, render

__all__ = ["EmptyCsvError", "FigureSpec", "MissingColumnError", "RenderError", "render"]
