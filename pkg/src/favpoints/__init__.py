"""Simulation and verification lab for nearly-favorite points of 2D simple random walk.

Subpackages by topic:

- ``walk``        -- disk-stopped and torus random walks, local-time fields
- ``occupation``  -- exact 3-state Markov chain joint occupation probabilities
- ``potential``   -- lattice Green functions, hitting probabilities, two-point theory
- ``pointsets``   -- favorite/late/high point extraction and tuple counting
- ``exponents``   -- closed-form pair-count exponents and variational duals
- ``excursions``  -- annulus excursion counting and schedule diagnostics
- ``gff``         -- discrete Gaussian free field sampler (Green covariance)
- ``harness``     -- reproducible experiment driver and verification suites
"""

from . import walk, occupation, potential, pointsets, exponents, excursions, gff

__version__ = "0.1.0"
