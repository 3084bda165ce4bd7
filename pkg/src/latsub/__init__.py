"""Exact subuniverse counting for finite partial algebras and lattices."""

from ._kernels import BACKEND
from .algebra import (
    Constraint,
    PartialAlgebra,
    Universe,
    count_subuniverses,
    enumerate_subuniverses,
    induced_weak_subalgebra,
    is_closed,
    sigma,
)
from .dyadic import DyadicValue
from .lattice import (
    FiniteLattice,
    Poset,
    PosetSpec,
    chain,
    count_sublattices,
    dual,
    full_algebra,
    lattice_from_covers,
    ordinal_sum,
    parse_lattice_text,
)
from .script import format_report, parse_script, run_script, verify_script

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Constraint",
    "DyadicValue",
    "FiniteLattice",
    "PartialAlgebra",
    "Poset",
    "PosetSpec",
    "Universe",
    "chain",
    "count_sublattices",
    "count_subuniverses",
    "dual",
    "enumerate_subuniverses",
    "format_report",
    "full_algebra",
    "induced_weak_subalgebra",
    "is_closed",
    "lattice_from_covers",
    "ordinal_sum",
    "parse_lattice_text",
    "parse_script",
    "run_script",
    "sigma",
    "verify_script",
]
