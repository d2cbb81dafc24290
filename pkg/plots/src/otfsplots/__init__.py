"""Figure scripts for otfslab CSV outputs."""

from .readers import InputError, Series, Surface, read_ber, read_cut, read_range_profile, read_surface
from .render import KINDS, ber_curves, contour_pair, cut_pair, range_overlay, render

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "Series",
    "Surface",
    "read_ber",
    "read_cut",
    "read_range_profile",
    "read_surface",
    "KINDS",
    "ber_curves",
    "contour_pair",
    "cut_pair",
    "range_overlay",
    "render",
    "__version__",
]
