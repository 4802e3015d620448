"""Exact combinatorics of compositum discriminants and counting invariants
for degree-d fields twisted by an abelian group.

The package is organized bottom-up:

- :mod:`sdxa.perms` — permutations, cycle types, the product embedding.
- :mod:`sdxa.groups` — abelian groups, product conjugacy classes,
  cyclotomic orbits, and the counting invariants they determine.
- :mod:`sdxa.indexcalc` — the discrepancy function, equality-case
  classification, exponent margins, and the dyadic tail estimator.
- :mod:`sdxa.splitting` — splitting patterns, decomposition-orbit
  enumeration, and discriminant-valuation tables.
- :mod:`sdxa.census` — field-record ingestion, pair composition, counting,
  and dyadic uniformity measurements.
- :mod:`sdxa.cli` — the ``sdxa`` command-line driver.
"""

__version__ = "0.1.0"
