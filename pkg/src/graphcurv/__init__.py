"""Discrete curvature of finite graphs: combinatorial, Bakry-Emery and Ollivier/Lin-Lu-Yau."""

from .bakry_emery import BECurvatureResult, be_curvature, build_pencil, cd_constant, curvature_all, gamma, gamma2
from .errors import *  # noqa: F401,F403
from .graph import Graph, ball, bfs_distances, diameter, distance, from_edge_list, generate, is_connected, load_graph
from .ollivier import (
    KantorovichPotential,
    ProbMeasure,
    TransportPlan,
    W1Certificate,
    curvature_profile,
    global_curvature_bound,
    lly_curvature,
    mu,
    ollivier_curvature,
    wasserstein,
)
from .spectral import average_operator, heat_apply, laplacian, laplacian_apply, spectrum
from .tessellation import (
    Face,
    Tessellation,
    check_tessellation,
    cheeger_constant,
    curvatures,
    cut_locus,
    faces_from_rotation,
    gauss_bonnet_sum,
    higuchi_classify,
    make_tessellation,
    vertex_curvature,
)
from .verify import VerificationReport, run_suite
