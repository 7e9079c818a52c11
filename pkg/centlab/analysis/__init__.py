"""Centralizer counts, class censuses and the commuting conjugacy class graph."""

from centlab.analysis.cccgraph import (
    ccc_graph,
    classes_commute,
    classes_commute_exhaustive,
    noncentral_classes,
)
from centlab.analysis.centralizers import (
    CentReport,
    cent_count,
    centralizer_inclusions,
    centralizer_spectrum,
    distinct_centralizers,
    power_invariance_holds,
    predicted_cent_count,
    predicted_cent_count_conjecture,
    predicted_spectrum,
    proper_spectrum_ok,
)
from centlab.analysis.conjugacy import (
    CensusRow,
    ClassCensus,
    ConjugacyClass,
    class_of,
    class_size_histogram,
    class_table,
    conjugacy_classes,
    label_types,
    predicted_census,
    type_of_exponents,
)

__all__ = [
    "CensusRow",
    "CentReport",
    "ClassCensus",
    "ConjugacyClass",
    "ccc_graph",
    "cent_count",
    "centralizer_inclusions",
    "centralizer_spectrum",
    "class_of",
    "class_size_histogram",
    "class_table",
    "classes_commute",
    "classes_commute_exhaustive",
    "conjugacy_classes",
    "distinct_centralizers",
    "label_types",
    "noncentral_classes",
    "power_invariance_holds",
    "predicted_cent_count",
    "predicted_cent_count_conjecture",
    "predicted_census",
    "predicted_spectrum",
    "proper_spectrum_ok",
    "type_of_exponents",
]
