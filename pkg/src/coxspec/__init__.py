"""Exact Coxeter transformations of valued graphs."""

from __future__ import annotations

__version__ = "0.1.0"
