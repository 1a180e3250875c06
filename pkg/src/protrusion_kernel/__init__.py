"""Protrusion-replacement kernels for Feedback Vertex Set and Vertex Cover,
with an audit of the counting bounds on reduced instances."""
from __future__ import annotations

from .audit import AuditParams, AuditReport, audit_report
from .boundaried import BoundariedGraph, canonical_form, enumerate_boundaried, glue, replace_protrusion
from .errors import CapabilityError, InputError, MissingTableError, ParseError, PreconditionError
from .fii import FiiTable, Signature, build_table, equivalent, lookup_representative, signature
from .generators import GeneratorSpec, generate
from .graph import Graph
from .kernelizer import Instance, exact_solve, find_modulator, find_protrusions, kernelize

__version__ = "0.1.0"

__all__ = [
    "AuditParams",
    "AuditReport",
    "BoundariedGraph",
    "CapabilityError",
    "FiiTable",
    "GeneratorSpec",
    "Graph",
    "InputError",
    "Instance",
    "MissingTableError",
    "ParseError",
    "PreconditionError",
    "Signature",
    "audit_report",
    "build_table",
    "canonical_form",
    "enumerate_boundaried",
    "equivalent",
    "exact_solve",
    "find_modulator",
    "find_protrusions",
    "generate",
    "glue",
    "kernelize",
    "lookup_representative",
    "replace_protrusion",
    "signature",
]
