"""Exact numerics for Q-Fano threefolds of large Fano index.

Baskets, orbifold Riemann-Roch, the candidate searches and the bounded
Diophantine case analyses of the associated Sarkisov links.
"""

__version__ = "0.1.0"
