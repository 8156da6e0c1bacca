"""Spectral toolkit for the Riemannian geometry of the 2-Wasserstein space
of the unit circle.

Densities, potentials and 1-form coefficients are truncated trigonometric
polynomials; every closed-form geometric quantity (metric coefficients,
Christoffel symbols, curvature) is paired with an independent quadrature or
transport oracle.
"""

from .config import DEFAULT, SpectralConfig
from .trigpoly import (TrigPoly, QuadratureGrid, derivative,
                       antiderivative_meanfree, multiply, integrate, fit,
                       grid_for_degree)
from .measure import (Density, TangentVector, SampledDiffeo, UNIFORM_LEVEL,
                      make_density, uniform_density, tangent_density, rotate,
                      pushforward)
from .calculus import (OneForm, div_mu, laplace_mu, green, project_exact,
                       cut_constant, inv_density_integral)
from .metric import (BasisLabel, GramMatrix, basis_list, otto_inner, otto_norm,
                     paper_metric_coefficient, gram, metric_discrepancy_report)
from .connection import (ChristoffelTable, bracket_potential,
                         bracket_potential_hessian_route, connection_inner,
                         covariant_derivative, koszul_inner, christoffel_paper,
                         christoffel_oracle, christoffel_comparison_report)
from .geodesic import (VelocityField, GeodesicPath, shock_time,
                       burgers_characteristics, evolve_velocity,
                       geodesic_evolve, exp_velocity, exp_map,
                       constant_velocity_curve, continuity_residual,
                       parallel_residual)
from .transport import (DiscreteMeasure, discretize, w2_circle, w2_cyclic,
                        w2_bruteforce, displacement_check, circle_distance)
from .curvature import (CurvatureReport, t_tensor, t_cut_constant,
                        curvature_formula, curvature_fd_oracle,
                        flatness_report)

__version__ = "0.1.0"
