"""
Metron - Hellinger geometry of the probability simplex.

- hellinger:  distance, farthest distribution
- dependence: full-dependence candidates and rho^M
"""
