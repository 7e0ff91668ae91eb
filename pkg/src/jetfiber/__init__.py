"""Jet schemes of the characteristic 2 surface singularities of type D4.

The singular fiber of the m-th jet scheme of x^2 + y^2 z + y z^2 (and of the
same form plus xyz) is decomposed into four irreducible components, each
certified symbolically over GF(2), and its dual intersection graph is built.
"""

from .components import Component, Decomposition, Jet, decompose, component_ideal, witness_jet
from .graph import Graph, build_graph, dynkin_d4_check, intersection_poset
from .ideal import BudgetExceeded, Ideal, build_J, build_L, dimension, radical_member, saturate
from .jets import Surface, TruncationSpec, closed_form_G, jet_coeffs, reduce_mod_L, verify_G_lemma
from .oracle import SuiteReport, point_count, verify_center_cases
from .poly import Polynomial, parse
from .suite import run_suite

__all__ = [
    "BudgetExceeded", "Component", "Decomposition", "Graph", "Ideal", "Jet", "Polynomial", "SuiteReport",
    "Surface", "TruncationSpec", "build_J", "build_L", "build_graph", "closed_form_G", "component_ideal",
    "decompose", "dimension", "dynkin_d4_check", "intersection_poset", "jet_coeffs", "parse", "point_count",
    "radical_member", "reduce_mod_L", "run_suite", "saturate", "verify_G_lemma", "verify_center_cases",
    "witness_jet",
]
__version__ = "0.1.0"
