"""Wavelength-assignment quantities for requests on bidirected trees.

A request is a directed path in a tree where every edge is a pair of
opposite arcs; two requests interfere when the path from one's source to
the other's target starts with the first's emission arc and ends with the
second's reception arc.  The package computes the interference digraph,
maximum independent sets and cliques, colourings, and exact
k-colourability, with brute-force oracles for checking.
"""
from .clique import Clique, max_clique
from .coloring import (
    Coloring,
    chi_bound_root,
    color_2approx,
    color_2omega,
    color_converging,
    color_diverging,
    color_unimodal,
    greedy_mis_color,
)
from .decision import decide, decide_3col, decide_kcol, dominating_or_comparability, two_list_color
from .fileformat import parse_instance, serialize_instance
from .generators import c5kt, fig1, generate, random_instance, star_kmn
from .independence import IndependentSet, max_independent_set
from .instance import Instance, Kind, Request, classify, reduce_instance, subdivide_nice
from .interference import InterferenceDigraph, build_digraph, interferes_fast, interferes_on
from .tree import BidirectedTree, RootedView, build_tree, root_view

__all__ = [
    "BidirectedTree", "Clique", "Coloring", "IndependentSet", "Instance", "InterferenceDigraph",
    "Kind", "Request", "RootedView", "build_digraph", "build_tree", "c5kt", "chi_bound_root",
    "classify", "color_2approx", "color_2omega", "color_converging", "color_diverging",
    "color_unimodal", "decide", "decide_3col", "decide_kcol", "dominating_or_comparability",
    "fig1", "generate", "greedy_mis_color", "interferes_fast", "interferes_on", "max_clique",
    "max_independent_set", "parse_instance", "random_instance", "reduce_instance", "root_view",
    "serialize_instance", "star_kmn", "subdivide_nice", "two_list_color",
]
