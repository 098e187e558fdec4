"""Spectral-sequence chart documents: loading, validation, trace checks and SVG output."""
from .model import (FIG1_PATH, ChartDifferential, ChartDoc, FRITrace, HiddenExtension, SSClass,
                    TraceEntry, chart_from_json, chart_load, chart_loads, fig1)
from .render import RenderOptions, chart_render_svg, display_name
from .validate import ValidationReport, Violation, alpha_order_log2, chart_load_validate, froot_trace_check

__all__ = [
    "FIG1_PATH", "ChartDifferential", "ChartDoc", "FRITrace", "HiddenExtension", "SSClass", "TraceEntry",
    "chart_from_json", "chart_load", "chart_loads", "fig1", "RenderOptions", "chart_render_svg",
    "display_name", "ValidationReport", "Violation", "alpha_order_log2", "chart_load_validate",
    "froot_trace_check",
]
