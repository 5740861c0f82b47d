"""Generalized scales on right LCM monoids."""
from genscale.coregraph import CoreGraph, build_core_graph, component_of
from genscale.families import ConfigError, FamilyConfig, load_family, load_family_file
from genscale.kernel import Element, Meet, Monoid, Orthogonal
from genscale.scale import ScaleReport, check_conditions, scale_value, transversal

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "CoreGraph",
    "Element",
    "FamilyConfig",
    "Meet",
    "Monoid",
    "Orthogonal",
    "ScaleReport",
    "build_core_graph",
    "check_conditions",
    "component_of",
    "load_family",
    "load_family_file",
    "scale_value",
    "transversal",
]
