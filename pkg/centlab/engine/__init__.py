"""Generic finite-group arithmetic over element indices."""

from centlab.engine.elements import ElementSet
from centlab.engine.group import GroupHandle, MulRule
from centlab.engine.isomorphism import are_isomorphic, fingerprints, isomorphic
from centlab.engine.queries import (
    center,
    central_quotient,
    centralizer_of,
    element_order,
    mul,
    power,
    quotient_by_central,
    subgroup_generated,
)
from centlab.engine.validate import AxiomCheck, validate_axioms

__all__ = [
    "AxiomCheck",
    "ElementSet",
    "GroupHandle",
    "MulRule",
    "are_isomorphic",
    "center",
    "central_quotient",
    "centralizer_of",
    "element_order",
    "fingerprints",
    "isomorphic",
    "mul",
    "power",
    "quotient_by_central",
    "subgroup_generated",
    "validate_axioms",
]
