"""Exact list-coloring flexibility invariants for small graphs."""

from .graph import Graph, complete_graph, cone, cycle_graph, from_edge_list, join, path_graph
from .invariants import chromatic_number, clique_number, hall_ratio, independence_number, tau, w_profile
from .lists import ListAssignment, is_k_choosable, list_chromatic_number
from .flex import Request, chi_ell_flex, epsilon_ell, is_flexible, max_satisfied

__version__ = "0.1.0"
