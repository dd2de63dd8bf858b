"""
Background execution for chordlab.

- pool: process-pool map used by the census, Monte Carlo and process experiments
- queue: optional RQ (Redis Queue) queue for long figure computations
"""
