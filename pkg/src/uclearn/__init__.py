"""uclearn: learn unknown unsafe sets from task demonstrations.

Given demonstrations of tasks with known dynamics, control bounds, and
cost functions, this package samples lower-cost trajectories consistent
with the known constraints (which must therefore violate the unknown
constraint), grids the constraint space, and recovers unsafe-set
estimates by solving integer and continuous programs, together with the
accompanying learnability and conservativeness analysis.
"""

from ._kernels import BACKEND_NAME

__version__ = "0.1.0"

__all__ = ["BACKEND_NAME", "__version__"]
