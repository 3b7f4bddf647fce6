from .builders import build_named, list_named
from .complex import Cell, PrecubicalSet, is_loop_free, is_non_self_linked, product, reachability, validate
from .components import compare_categories, induced_component_map, pair_components
from .homotopy import (
    HomotopyAnalyzer,
    Verdict,
    check_dhe,
    check_inessential,
    check_rather_inessential,
    check_witness,
    find_witness_chain,
)
from .maps import AdmissibleMap, check_admissible, check_psp, compose, enumerate_maps, identity_map
from .monoid import MonoidTable, monoid_closure, verify_closure_2of3, verify_inessentiality_property
from .paths import ClassTable, EdgePath, classes, enumerate_paths, swap_step
from .tc import directed_tc, invariance_check

__all__ = [
    "AdmissibleMap",
    "Cell",
    "ClassTable",
    "EdgePath",
    "HomotopyAnalyzer",
    "MonoidTable",
    "PrecubicalSet",
    "Verdict",
    "build_named",
    "check_admissible",
    "check_dhe",
    "check_inessential",
    "check_psp",
    "check_rather_inessential",
    "check_witness",
    "classes",
    "compare_categories",
    "compose",
    "directed_tc",
    "enumerate_maps",
    "enumerate_paths",
    "find_witness_chain",
    "identity_map",
    "induced_component_map",
    "invariance_check",
    "is_loop_free",
    "is_non_self_linked",
    "list_named",
    "monoid_closure",
    "pair_components",
    "product",
    "reachability",
    "swap_step",
    "validate",
    "verify_closure_2of3",
    "verify_inessentiality_property",
]
