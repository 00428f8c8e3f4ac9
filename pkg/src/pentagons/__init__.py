"""Tools for minimizing the number of convex pentagons in planar point sets."""
from .constructions import conjectured_mu5, parabolic, pinwheel
from .encoder import encode_maxsat, encode_sat, make_cubes
from .geom import Point, PointSet, count_convex_kgons, signotope_of
from .maxsat_bb import solve_exact
from .realizer import RealizerConfig, realize
from .signotope import SignotopeAssignment, check_axioms, count_convex_pentagons
from .sls import SlsConfig, sls_minimize

__version__ = "0.1.0"

__all__ = [
    "Point", "PointSet", "RealizerConfig", "SignotopeAssignment", "SlsConfig",
    "check_axioms", "conjectured_mu5", "count_convex_kgons", "count_convex_pentagons",
    "encode_maxsat", "encode_sat", "make_cubes", "parabolic", "pinwheel", "realize",
    "signotope_of", "sls_minimize", "solve_exact",
]
