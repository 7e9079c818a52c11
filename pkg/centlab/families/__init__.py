"""Concrete group families and the extension search."""

from centlab.families.arith import is_prime, order_formula
from centlab.families.builders import (
    central_extension,
    collection_rule,
    cyclic,
    direct_product,
    heisenberg_mod,
    make_L,
    semidirect_cyclic,
)
from centlab.families.identify import QuotientIdentity, describe_family, identify_quotient
from centlab.families.normal_form import (
    ExtensionParams,
    FamilyDescriptor,
    NormalForm,
    NormalFormCodec,
)
from centlab.families.registry import (
    BuildLimits,
    BuiltFamily,
    FamilySpec,
    build_family,
    parse_family_spec,
)
from centlab.families.search import ExtensionResult, search_extensions

__all__ = [
    "BuildLimits",
    "BuiltFamily",
    "ExtensionParams",
    "ExtensionResult",
    "FamilyDescriptor",
    "FamilySpec",
    "NormalForm",
    "NormalFormCodec",
    "QuotientIdentity",
    "build_family",
    "central_extension",
    "collection_rule",
    "cyclic",
    "describe_family",
    "direct_product",
    "heisenberg_mod",
    "identify_quotient",
    "is_prime",
    "make_L",
    "order_formula",
    "parse_family_spec",
    "search_extensions",
    "semidirect_cyclic",
]
