"""Exact trace calculus for shadowed bicategories.

The package computes traces, cyclic multitraces, and rotation (Fuller)
constructions in two concrete instances: free modules with the Kronecker
product, and free bimodules over integral group rings.  On top of the
bimodule instance it derives fixed-point invariants of simplicial
self-maps: Lefschetz numbers, Reidemeister traces over twisted conjugacy
classes, and higher-order rotation invariants with their unwinding
relations.  All arithmetic is exact.
"""

__version__ = "0.1.0"
