"""frame_soliton package

Exact curvature and soliton computations on homogeneous almost-contact
metric manifolds given by a frame.
"""

__version__ = "0.1.0"
