"""Simultaneous partial-inverse solvers and interleaved Reed-Solomon decoding."""
from .gf import GF, Field, FieldSpec, field_new
from .poly import NEG_INF, Polynomial

__version__ = "0.1.0"
