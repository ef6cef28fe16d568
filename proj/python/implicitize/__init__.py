"""Numerical invariants of images of polynomial maps.

Given a polynomial map on a source variety, compute the dimension, Hilbert
function values, approximate implicit equations, and degree of the closure of
the image, and decide point membership -- via homotopy continuation,
monodromy, and SVD-based interpolation.
"""

try:
    from ._implicitize import *  # noqa: F401,F403  (installed package layout)
    from ._implicitize import __doc__ as _core_doc  # noqa: F401
except ImportError:  # build-tree layout: extension on sys.path as a top-level module
    from _implicitize import *  # noqa: F401,F403

__all__ = [
    "Problem",
    "InterpolationTable",
    "PseudoWitnessSet",
    "InputError",
    "NumericalError",
    "numerical_source_sample",
    "numerical_image_sample",
    "numerical_image_dim",
    "numerical_hilbert_function",
    "numerical_image_degree",
    "is_on_image",
    "load_witness",
    "monomial_basis",
]
