"""
Elenchus - Brute-force verification of the claims behind the measures.

- reference:  plain-Python step-by-step evaluators
- sampling:   uniform simplex sampling
- fixtures:   worked tables and their published values
- oracle:     claim checks
- provenance: claim registry and provenance file
"""
