"""Exterior conformal maps, logarithmic capacity and outer conformal centers.

Submodules
----------
specfun
    Real gamma function and the Appell F1 function.
halfdisk
    Closed-form maps and centers for the upper half-disk.
sc_exterior
    Exterior Schwarz-Christoffel maps of triangles and Laurent extraction.
capacity
    Haegi's capacity formula, extremal angles, transfinite-diameter estimates.
cli
    Command-line front end.
"""

from capmap.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
