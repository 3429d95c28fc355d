"""Exact cross ratios on the circle and their bounded-cohomology companions."""

from .circle import (
    INF,
    Configuration,
    DuplicatePointError,
    Linking,
    canonical_cross_ratio,
    canonical_phi,
    cyclic_ordered,
    linking,
    point,
    quadruple_ordered,
)
from .cocycles import (
    AltCochain2,
    Cochain1,
    CrossRatioTable,
    check_axioms,
    coboundary1,
    coboundary2,
    cochain_from_crossratio,
    crossratio_from_cocycle,
    phi_from_crossratio,
    space_dimension,
    sup_norm,
)
from .hyperbolic import (
    FiniteGraphSpace,
    busemann_estimate,
    busemann_inequality_report,
    four_point_delta,
    gromov_product,
    horosphere_points,
    slim_triangle_delta,
)
from .measures import RectMeasure, check_measure, crossratio_from_measure, measure_from_atoms, psi
from .mobius import (
    MobiusMap,
    apply,
    brooks_counting,
    classify,
    compose,
    fixed_points,
    inverse,
    invariance_check,
    nu_cochain,
    orbit_cocycle,
    prism_transfer,
    quasimorphism_defect,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Configuration",
    "DuplicatePointError",
    "Linking",
    "canonical_cross_ratio",
    "canonical_phi",
    "cyclic_ordered",
    "linking",
    "point",
    "quadruple_ordered",
    "AltCochain2",
    "Cochain1",
    "CrossRatioTable",
    "check_axioms",
    "coboundary1",
    "coboundary2",
    "cochain_from_crossratio",
    "crossratio_from_cocycle",
    "phi_from_crossratio",
    "space_dimension",
    "sup_norm",
    "FiniteGraphSpace",
    "busemann_estimate",
    "busemann_inequality_report",
    "four_point_delta",
    "gromov_product",
    "horosphere_points",
    "slim_triangle_delta",
    "RectMeasure",
    "check_measure",
    "crossratio_from_measure",
    "measure_from_atoms",
    "psi",
    "MobiusMap",
    "apply",
    "brooks_counting",
    "classify",
    "compose",
    "fixed_points",
    "inverse",
    "invariance_check",
    "nu_cochain",
    "orbit_cocycle",
    "prism_transfer",
    "quasimorphism_defect",
]
