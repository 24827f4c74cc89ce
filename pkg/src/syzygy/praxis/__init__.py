"""
Praxis - Command implementations for the Syzygy CLI.

- analyze: Measure one table
- batch:   Measure every table in a directory
- oracle:  Run verification claims and write provenance
"""
