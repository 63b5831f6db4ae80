"""seedcomm: local community detection from a small seed set.

Short random walks from the seeds span a local spectral basis; the
sparsest nonnegative vector in that span covering the seeds scores every
nearby vertex; conductance sweeps over the ranked vertices pick the
community size and decide when reseeding should stop.
"""

from .detect import (CommunityResult, DetectParams, StepResult, SweepCurve,
                     detect, expansion_step, sweep_conductance, truncate_by_size)
from .evaluation import (BatchStats, ScoreReport, TrialRecord, export_report,
                         f1_score, run_batch)
from .graph import (Graph, GraphParseError, GroundTruthCatalog, conductance,
                    cut_size, induced_subgraph, internal_degrees,
                    load_communities, load_edge_list, vertex_set, volume,
                    write_communities, write_edge_list)
from .lp import SparseIndicatorSolution, rank_vertices, solve_min_one_norm
from .seeding import SeedSpec, select_seeds
from .spectra import (SpectralBasis, advance_basis, build_span, local_basis,
                      orthonormalize)
from .synth import PlantedSpec, generate_planted
from .walk import (ProbabilityVector, SampleResult, WalkOperator,
                   initial_vector, propagate, sample_subgraph)

__version__ = "0.1.0"

__all__ = [
    "BatchStats", "CommunityResult", "DetectParams", "Graph",
    "GraphParseError", "GroundTruthCatalog", "PlantedSpec",
    "ProbabilityVector", "SampleResult", "ScoreReport", "SeedSpec",
    "SparseIndicatorSolution", "SpectralBasis", "StepResult", "SweepCurve",
    "TrialRecord", "WalkOperator", "advance_basis", "build_span",
    "conductance", "cut_size", "detect", "expansion_step", "export_report",
    "f1_score", "generate_planted", "induced_subgraph", "initial_vector",
    "internal_degrees", "load_communities", "load_edge_list", "local_basis",
    "orthonormalize", "propagate", "rank_vertices", "run_batch",
    "sample_subgraph", "select_seeds", "solve_min_one_norm",
    "sweep_conductance", "truncate_by_size", "vertex_set", "volume",
    "write_communities", "write_edge_list",
]
