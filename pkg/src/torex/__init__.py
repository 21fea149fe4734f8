"""Exact toric line-bundle computations and exceptional collections on toric stacks."""
from .cohomology import (
    brute_force_cohomology, cohomology, cohomology_dims, forbidden_cones, in_forbidden_cone,
    is_acyclic, is_strongly_acyclic, non_acyclic_subsets, proper_non_acyclic,
)
from .collection import (
    ExceptionalCollection, build_collection, closure, expected_count, fullness_region,
    hom_order, koszul_moves, replay, verify_strong_exceptional,
)
from .errors import TorexError
from .fan import FanClass, StackyFan, classify, face_fan_from_points, normalized_volume, validate
from .picard import PicardGroup, PicClass, picard_group
from .serialize import TOREX_VERSION as __version__
from .windows import build_window, generic_shift

__all__ = [
    "ExceptionalCollection", "FanClass", "PicClass", "PicardGroup", "StackyFan", "TorexError",
    "brute_force_cohomology", "build_collection", "build_window", "classify", "closure",
    "cohomology", "cohomology_dims", "expected_count", "face_fan_from_points",
    "forbidden_cones", "fullness_region", "generic_shift", "hom_order", "in_forbidden_cone",
    "is_acyclic", "is_strongly_acyclic", "koszul_moves", "non_acyclic_subsets",
    "normalized_volume", "picard_group", "proper_non_acyclic", "replay", "validate",
    "verify_strong_exceptional", "__version__",
]
