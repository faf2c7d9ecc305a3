"""Exact computational algebra for finite partially multiplicative quandles.

Subpackages by theme: ``core`` (tables, axioms, constructions), ``free``
(free groups, generalised decompositions, braid moves), ``completion``
(canonical forms in the completion of a normed PMQ), ``envelope``
(enveloping-group presentations), ``properties`` (tameness checkers),
``ring`` (PMQ-rings and quadratic data), ``symgeo`` (symmetric groups with
the transposition norm), ``barhur`` (arrays, relative chain complexes and
integer homology), ``racks`` (partially multiplicative racks), ``cli``.
"""

from .core import (
    FiniteGroup,
    FinitePmq,
    PmqGroupPair,
    ValidationReport,
    conjugacy_classes,
    geodesic_pmq,
    join_pmq_group,
    semidirect_pmq,
    validate,
)
from .errors import AxiomError, NormRequiredError, PmqError, PreconditionError, StructureError

__all__ = [
    "FiniteGroup",
    "FinitePmq",
    "PmqGroupPair",
    "ValidationReport",
    "conjugacy_classes",
    "geodesic_pmq",
    "join_pmq_group",
    "semidirect_pmq",
    "validate",
    "AxiomError",
    "NormRequiredError",
    "PmqError",
    "PreconditionError",
    "StructureError",
]
