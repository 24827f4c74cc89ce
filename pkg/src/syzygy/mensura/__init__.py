"""
Mensura - Classical dependence measures (phi, Pearson, Spearman,
mutual information, chi-squared family, two-proportion Z).
"""
