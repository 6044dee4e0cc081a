"""
Numerischer Kern: Riccati-Fluss, Quadratur, Transformationen, Dichte,
Simulation und Ergodizitätsdiagnosen.
"""

from .branch import ComplexScalar, riccati_v, riccati_v_integral
from .density import cdf_y, density_fourier, density_grid, density_real_axis
from .ergodicity import (certify_grid, choose_beta_c_M, drift_mc_check, generator_on_V,
                         ray_exponent_check, tv_decay)
from .quadrature import QuadratureResult, integrate
from .simulation import StableDriverSpec, empirical_atom, sample_stable_increment, simulate_pair
from .transforms import atom_probability, charfn_y, laplace_y, limit_d, mean_x, mean_y

__all__ = [
    # Branch
    "ComplexScalar",
    "riccati_v",
    "riccati_v_integral",

    # Quadratur
    "QuadratureResult",
    "integrate",

    # Transformationen
    "laplace_y",
    "charfn_y",
    "limit_d",
    "atom_probability",
    "mean_y",
    "mean_x",

    # Dichte
    "density_fourier",
    "density_real_axis",
    "density_grid",
    "cdf_y",

    # Simulation
    "StableDriverSpec",
    "sample_stable_increment",
    "simulate_pair",
    "empirical_atom",

    # Ergodizität
    "generator_on_V",
    "choose_beta_c_M",
    "certify_grid",
    "drift_mc_check",
    "tv_decay",
    "ray_exponent_check"
]
