"""Figure rendering for spectral-flow CSV traces."""

__version__ = "0.1.0"

from .render import PlotSpec, Trace, build_figure, load_trace, render_flow

__all__ = ["PlotSpec", "Trace", "build_figure", "load_trace", "render_flow", "__version__"]
