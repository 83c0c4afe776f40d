"""Shared builders for the test suite, cached so each instance is built once."""

from functools import lru_cache

from fusionring import SimpleType, build_fusion_ring, build_root_system

# The verification grid: every (algebra, level) pair exercised by the
# acceptance criteria and the cross-module property tests.
GRID = [
    ("A1", 1), ("A1", 2), ("A1", 3), ("A1", 4), ("A1", 5),
    ("A2", 1), ("A2", 2), ("A2", 3),
    ("A3", 1), ("A3", 2),
    ("C2", 1), ("C2", 2),
    ("B3", 1), ("B3", 2),
    ("D4", 1),
    ("G2", 1), ("G2", 2),
]


@lru_cache(maxsize=None)
def get_rs(name):
    return build_root_system(SimpleType.parse(name))


@lru_cache(maxsize=None)
def get_ring(name, level):
    return build_fusion_ring(get_rs(name), level)
