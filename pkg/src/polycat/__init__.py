"""Polygon models of cluster categories of types E6, E7, E8 and their relatives."""

from __future__ import annotations

from .polygon import Colour, Diagonal, PolygonSpec, SpecError, parse_diagonal, rho, sigma, tau, tau_inverse
from .quiver import QuiverError, TranslationQuiver, build_gamma_Dn_triples, gamma_for, validate_stable_translation
from .mesh import ExtTable, NotClusterCategory, ext_table
from .tilting import ClusterModel, Configuration, ConsistencyError, census, exchange_graph, mutate

__version__ = "0.1.0"

__all__ = [
    "ClusterModel", "Colour", "Configuration", "ConsistencyError", "Diagonal", "ExtTable",
    "NotClusterCategory", "PolygonSpec", "QuiverError", "SpecError", "TranslationQuiver",
    "build_gamma_Dn_triples", "census", "exchange_graph", "ext_table", "gamma_for", "mutate",
    "parse_diagonal", "rho", "sigma", "tau", "tau_inverse", "validate_stable_translation",
]
