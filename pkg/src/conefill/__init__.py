"""conefill - quantitative bounds for hyperbolic Dehn filling.

Packing bounds, core-length derivative bounds, deformation envelopes,
universal normalized-length thresholds, exceptional slope enumeration and
volume-change estimates, computed in double precision at stated tolerances.
"""

__version__ = "0.1.0.dev0"
