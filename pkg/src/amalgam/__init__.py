"""Exact symbolic toolkit for the amalgamated products Z_m *_{Z_d} Z_n."""
from .errors import (AmalgamError, DivisibilityError, MalformedPermutation, ParamMismatch,
                     RangeError, RelationViolation, WordSyntaxError)
from .presentation import AmalgamParams, RawWord, parse_params, parse_word
from .normal_form import NormalWord, from_text, invert, multiply, reduce, render, syllable_length
from .group_ring import GRMatrix, GroupRingElement
from .conjugacy import are_conjugate, delocalized_trace
from .betti import betti_number, betti_table

__version__ = "0.1.0"
