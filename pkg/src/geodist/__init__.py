"""Transitional measures on weighted digraphs and their graph-geodetic distances."""

from .caps import Caps
from .distances import (AuditReport, Check, DistanceMatrix, geodetic_report, log_distance,
                        log_matrix, metric_report, plain_distance, shortest_path_distance)
from .errors import (DomainError, GeodistError, ParseError, PreconditionError, ResourceError,
                     SingularMatrixError)
from .graph import (EITHER, ONE_WAY, Path, WeightedDigraph, enumerate_simple_paths, is_strong,
                    laplacian, make_graph, parse_graph, separates, separation_table, transform)
from .kernels import HAVE_COMPILED
from .linalg import as_backend, determinant, identity, invert
from .measures import (MeasureMatrix, forest_matrix, path_tau_matrix, reliability_exact,
                       reliability_mc, route_matrix, stochastic_matrix, tau_threshold_search)
from .oracle import (ForestEnumeration, enumerate_forests, enumerate_undirected_forests,
                     reliability_ie, route_series, transitional_audit)

__version__ = "0.1.0"
