"""Pseudorandomness of the Legendre symbol and the Liouville functions.

Generates the three binary arithmetic functions as sequences and Boolean
functions and measures them: algebraic degree and sparsity, linear
complexity profiles, lattice levels and correlation measures.
"""

__version__ = "0.1.0"

from .numtheory import (  # noqa: E402
    F2_LIOUVILLE,
    LIOUVILLE,
    ArithFn,
    carlitz_sum,
    f2_liouville_sieve,
    generate_sequence,
    least_qnr,
    legendre,
    legendre_symbol,
    liouville_sieve,
    patched_legendre_sequence,
    sieve_primes,
)
from .sequence import BitSequence  # noqa: E402
from .boolfun import Anf, TruthTable, anf, truth_table_from_arith  # noqa: E402
from .seqanalysis import (  # noqa: E402
    CorrelationQuery,
    bm_profile,
    correlation_measure,
    lattice_level,
    linear_complexity_periodic,
)

__all__ = [
    "Anf", "ArithFn", "BitSequence", "CorrelationQuery", "F2_LIOUVILLE", "LIOUVILLE",
    "TruthTable", "anf", "bm_profile", "carlitz_sum", "correlation_measure",
    "f2_liouville_sieve", "generate_sequence", "lattice_level", "least_qnr", "legendre",
    "legendre_symbol", "linear_complexity_periodic", "liouville_sieve",
    "patched_legendre_sequence", "sieve_primes", "truth_table_from_arith",
]
