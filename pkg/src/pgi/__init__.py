"""Finite group isomorphism and canonization from multiplication tables.

Two routes: composition series encoded as bounded-degree colored graphs, and
generator enumeration. ``iso`` and ``canon`` dispatch between them.
"""
from .driver import FamilySpec, RouteDecision, canon, decide_route, generate_family, iso, relabel
from .gadget import ColoredGraph, build_X
from .genenum import canonical_table, gen_enum_canon, gen_enum_iso, word_ranks
from .graphcanon import canonical_form, color_refine, find_isomorphism
from .groups import (
    GroupTable,
    IsoMap,
    brute_force_iso,
    profile,
    rank,
    read_group,
    validate_group,
    write_group,
)
from .series import CompositionSeries, candidate_chain_bound, enumerate_composition_series
from .seriescanon import canon_series, reconstruct_series, series_isomorphic

__version__ = "0.1.0"

__all__ = [
    "FamilySpec", "RouteDecision", "canon", "decide_route", "generate_family", "iso", "relabel",
    "ColoredGraph", "build_X", "canonical_table", "gen_enum_canon", "gen_enum_iso", "word_ranks",
    "canonical_form", "color_refine", "find_isomorphism", "GroupTable", "IsoMap",
    "brute_force_iso", "profile", "rank", "read_group", "validate_group", "write_group",
    "CompositionSeries", "candidate_chain_bound", "enumerate_composition_series",
    "canon_series", "reconstruct_series", "series_isomorphic",
]
