"""Exact finite computations with fusion systems, stable bisets and induced modules."""

from .biset import Biset, canonical_stable_biset, isotropy, is_left_stable, transitive_biset
from .cyclo import Cyclotomic, root_of_unity
from .fusion import FusionSystem, full_fusion, fusion_of_group, is_characteristic
from .gamma import GammaGroup, build_compatible_family, verify_fusion_containment
from .groups import Group, Hom, Subgroup, center, make_group, parse_group, rank, subgroups
from .pipeline import bigcenter_blueprint, rank_reduction_plan, run_example
from .repcalc import Character, TildeModule, induce, mackey_check, restrict

__all__ = [
    "Biset", "canonical_stable_biset", "isotropy", "is_left_stable", "transitive_biset",
    "Cyclotomic", "root_of_unity",
    "FusionSystem", "full_fusion", "fusion_of_group", "is_characteristic",
    "GammaGroup", "build_compatible_family", "verify_fusion_containment",
    "Group", "Hom", "Subgroup", "center", "make_group", "parse_group", "rank", "subgroups",
    "bigcenter_blueprint", "rank_reduction_plan", "run_example",
    "Character", "TildeModule", "induce", "mackey_check", "restrict",
]

__version__ = "0.1.0"
