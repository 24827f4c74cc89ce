"""
Pinax - Joint probability tables and their ingestion.

- table: JointTable, marginals, independence product, relabeling
- io:    CSV / JSON readers
"""
