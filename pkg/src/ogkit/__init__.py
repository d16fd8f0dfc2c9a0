"""Toolkit for finite ordered groupoids: axioms, modules, cohomology, extensions."""

__version__ = "0.1.0"
