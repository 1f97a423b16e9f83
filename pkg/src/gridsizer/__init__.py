"""gridsizer: frame size-design toolkit.

Skeleton sampling, structural-graph conversion, a linear-elastic frame
oracle, a graph-network drift surrogate, a constrained sizing network
trained through the frozen surrogate, and a genetic optimizer that the
sizing network can seed.
"""

__version__ = "0.1.0"
