"""Figure rendering and gap assertions for iamac sum-rate sweep CSVs."""

from .core import SCHEMA, Curve, CurveError, CurveSpec, load_curve, render

__version__ = "0.1.0"
