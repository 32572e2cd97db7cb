"""Geometric convex-hull certificates over exact interval and rectangle
algebras: construction, verification, decomposition, and rendering."""

from .certificate import (
    Certificate,
    ConvexCombination,
    extract,
    reconstruct,
    verify,
)
from .constraints import ConstraintSystem
from .intervals import IntervalSet, cells, match, wrap_place
from .rational import rat
from .rectangles import Rect, RectSet, bilinear_overlap, profile

__all__ = [
    "Certificate",
    "ConstraintSystem",
    "ConvexCombination",
    "IntervalSet",
    "Rect",
    "RectSet",
    "bilinear_overlap",
    "cells",
    "extract",
    "match",
    "profile",
    "rat",
    "reconstruct",
    "verify",
    "wrap_place",
]
