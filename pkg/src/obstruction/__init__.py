"""Exact re-verification of the finite computations behind free actions of
extraspecial p-groups on products of spheres."""
from __future__ import annotations

__version__ = "0.1.0"
