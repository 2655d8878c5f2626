"""Persistence barcodes of point clouds and when they determine the cloud up to isometry."""

from ._version import __version__
from .circumsphere import (CircumsphereFramework, CircumVerdict, circumsphere_jacobian, circumsphere_residual,
                           circumsphere_rigidity_test, verify_conjecture_66)
from .criticality import (CriticalGraph, CriticalHypergraph, bounded_endpoints, critical_edges, critical_graph,
                          critical_hypergraph)
from .estimators import CriticalStructure, IdentifiabilityAnalyzer, PersistenceBarcodes
from .exceptions import (AngleViolation, ComplexTooLarge, DegenerateSimplex, DomainError, HypothesisViolated,
                         InputError, NotApplicable, PcfiberError)
from .fiber import (IdentifiabilityReport, cech_local_identifiability, fiber_dim_bounds, generate_chain_cloud,
                    genericity_diagnostics, identify, identify_all, local_fiber_dimension,
                    vr_global_identifiability_sufficient, vr_local_identifiability)
from .filtration import FilteredComplex, FiltrationKind, build_filtered_complex, phi_cech, phi_vr, preorder_signature
from .geometry import (PointCloud, cayley_menger, circumradius_gradient, circumradius_squared, edge_length_measurement,
                       min_enclosing_ball, min_enclosing_radius, rigidity_matrix, squared_distance)
from .persistence import Barcode, FullBarcode, Interval, barcodes, compute_barcodes, mst_edge_lengths
from .rigidity import (Framework, Graph, RigidityVerdict, ggr_2d, ggr_randomized, infinitesimal_rigidity_test,
                       is_3_connected, is_redundantly_rigid_2d, laman_glr_2d)

__all__ = [name for name in dir() if not name.startswith("_")]
