"""Sampling and analysis of multivariate Pareto records.

Records are sampled by importance sampling over the record-setting region
(the part of the unit cube where the next record can land), whose minimal
points -- the generators -- are maintained dynamically as records arrive.
Alongside the sampler the package ships brute-force reconstruction oracles,
deterministic generator-count bounds, and exact/asymptotic expected counts.
"""

__version__ = "0.1.0"
