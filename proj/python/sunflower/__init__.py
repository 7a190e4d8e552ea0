"""Sunflower-free set systems: detection, bounds, reductions and exact search.

Reports are returned as plain dicts decoded from the native JSON output, and
exact integers and rationals as ``int`` and ``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _core
from ._core import SunflowerError

__all__ = [
    "SunflowerError",
    "find_sunflower",
    "find_vector_sunflower",
    "j_constant",
    "erdos_rado_threshold",
    "generalized_ns_bound",
    "balanced_bound",
    "main_bound",
    "compare_bounds",
    "max_sunflower_free_vectors",
    "max_sunflower_free_uniform",
    "pipeline",
    "max_union",
    "cover_count",
    "export_cnf",
    "cnf_satisfiable",
]


def _decode(text):
    return None if text is None else json.loads(text)


def find_sunflower(members, petals=3):
    """Lexicographically first sunflower with ``petals`` members, or None."""
    return _decode(_core.find_sunflower([list(m) for m in members], petals))


def find_vector_sunflower(moduli, members):
    return _decode(_core.find_vector_sunflower(list(moduli), [list(v) for v in members]))


def j_constant(q, tol=1e-12):
    return _decode(_core.j_constant(q, tol))


def erdos_rado_threshold(k, t=3):
    return Fraction(_core.erdos_rado_threshold(k, t))


def generalized_ns_bound(moduli):
    return int(_core.generalized_ns_bound(list(moduli)))


def balanced_bound(n, M):
    return int(_core.balanced_bound(n, M))


def main_bound(k, M):
    return _decode(_core.main_bound(k, M))


def compare_bounds(moduli=None, k=None, M=None):
    """Every applicable bound, ascending. Pass either ``moduli`` or ``k`` and ``M``."""
    if moduli is not None:
        return _decode(_core.compare_bounds_moduli(list(moduli)))
    if k is None or M is None:
        raise SunflowerError("UsageError", "compare_bounds needs moduli or k and M")
    return _decode(_core.compare_bounds_sets(k, M))


def max_sunflower_free_vectors(moduli, max_nodes=10**9, threads=1, anchor=True):
    return _decode(_core.max_sunflower_free_vectors(list(moduli), max_nodes, threads, anchor))


def max_sunflower_free_uniform(k, m, max_nodes=10**9, threads=1, anchor=True):
    return _decode(_core.max_sunflower_free_uniform(k, m, max_nodes, threads, anchor))


def pipeline(members, seed=None):
    """Certified partite reduction. Derandomized unless ``seed`` is given."""
    return _decode(_core.pipeline([list(m) for m in members], seed))


def max_union(k, m):
    return _decode(_core.max_union(k, m))


def cover_count(members):
    return _core.cover_count([list(m) for m in members])


def export_cnf(size, moduli=None, k=None, m=None):
    """DIMACS text asserting a sunflower-free family of at least ``size`` candidates."""
    if moduli is not None:
        return _core.export_cnf_moduli(list(moduli), size)
    return _core.export_cnf_uniform(k, m, size)


def cnf_satisfiable(dimacs):
    return _core.cnf_satisfiable(dimacs)
