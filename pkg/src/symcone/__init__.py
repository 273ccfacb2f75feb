"""symcone: exact and numerical models on symmetric cones.

Jordan-algebra descriptors, an exact polynomial/Bessel-operator layer,
quadrature on the rank-one orbit, spherical harmonics, Fock-side inner
products, Segal-Bargmann / inversion / heat transforms, and a CLI that
re-verifies every formula the package implements.
"""

__version__ = "0.1.0"

from .jordan import (
    Algebra, Element, rank1, minkowski, symmat,
    jordan_product, trace_form, jordan_trace, quad_rep,
    jordan_frame, offdiag_unit,
)
from .poly import MPoly, VPoly, WeightedFn, fischer_inner, normal_form
from .specialfn import SeriesControl, bessel_tilde, kernel_b, kernel_f, k_bessel_moment
