"""Strong external difference families: constructions, verifiers, feasibility filters and search."""

from .algebra import FiniteAbelianGroup, FiniteField, build_field, parse_group, squares
from .constructions import (
    ConstructionDescriptor,
    cyclotomic_half_sedf,
    exponential_sedf,
    gsedf_examples,
    paley_lines_pds,
    paley_pds_to_sedf,
    pds_complement,
    singleton_sedf,
)
from .diffcore import (
    DifferenceTally,
    PdsParams,
    SetFamily,
    difference_tally,
    external_tally,
    verify_edf,
    verify_gsedf,
    verify_pds,
    verify_sedf,
)
from .feasibility import FeasibilityVerdict, GsedfParams, SedfParams, classify, enumerate_feasible, region_grid
from .search import SearchOptions, SearchReport, Symmetry, characterization_crosscheck, search_pds, search_sedf

__version__ = "0.1.0"
