"""Shared exception types.

Three failure modes are kept apart throughout the package:

* ``StructureError`` -- the input tables are malformed (labels outside the
  declared element set, non-square tables, bad JSON).  This is not an axiom
  violation: the object cannot even be interrogated.
* ``AxiomError`` -- the tables are well-formed but violate an axiom; the
  attached report names each violated axiom with a witness tuple.
* ``PreconditionError`` -- an operation was invoked on a structure that does
  not satisfy its stated hypotheses (missing norm, not coconnected, ...).
"""

from __future__ import annotations


class PmqError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(PmqError):
    """Malformed table data, distinct from any axiom violation."""


class AxiomError(PmqError):
    """A validated operation received a structure violating the axioms."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class PreconditionError(PmqError):
    """An operation's hypotheses are not met by the given structure."""

    def __init__(self, message: str, failed: str | None = None, witness=None):
        super().__init__(message)
        self.failed = failed
        self.witness = witness


class NormRequiredError(PreconditionError):
    """The operation needs a norm and the structure carries none."""

    def __init__(self, message: str = "operation requires a normed structure"):
        super().__init__(message, failed="norm")
