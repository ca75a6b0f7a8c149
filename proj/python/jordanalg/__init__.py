"""Exact construction, validation, and classification of finite-dimensional Jordan algebras.

Algebras, data, and crossed systems cross the boundary in the same text
formats the command-line tool reads; scalars come back as exact strings and
matrices as nested lists.
"""

from jordanalg._core import (
    __version__,
    artin,
    check,
    classify_flag,
    decompose,
    extract,
    h2,
    product,
    set_worker_count,
    solve_matrix_cubic,
    spin_factor,
    worker_count,
)

__all__ = [
    "__version__",
    "artin",
    "check",
    "classify_flag",
    "decompose",
    "extract",
    "h2",
    "product",
    "set_worker_count",
    "solve_matrix_cubic",
    "spin_factor",
    "worker_count",
]
