"""Exact constraint methods for torsion units of integral group rings.

The package decides which torsion units and finite subgroups are admissible
in the normalized unit group V(ZG) of an integral group ring: the cyclic
HeLP method (Luthar-Passi / Hertweck multiplicity constraints) and its
subgroup variant based on scalar products of class functions, both carried
out in exact arithmetic over cyclotomic fields with an optional odd
parameter m.
"""

from .exactnum import (
    Cyclotomic,
    E,
    M,
    OddAffine,
    OddMSet,
    Rational,
    Verdict,
    as_rational,
    cyclo_add,
    cyclo_make,
    cyclo_mul,
    cyclo_sum,
    galois_apply,
    oddaffine_nonneg_integer,
    parse_value,
    rational_trace,
    value_literal,
)

__all__ = [
    "Cyclotomic",
    "E",
    "M",
    "OddAffine",
    "OddMSet",
    "Rational",
    "Verdict",
    "as_rational",
    "cyclo_add",
    "cyclo_make",
    "cyclo_mul",
    "cyclo_sum",
    "galois_apply",
    "oddaffine_nonneg_integer",
    "parse_value",
    "rational_trace",
    "value_literal",
]

__version__ = "0.1.0"
