"""Exact Steiner tree solvers: Dreyfus-Wagner, nested minimum finding with query accounting,
and a brute-force oracle."""

from ._qsteiner import (
    Graph,
    GuardExceeded,
    HybridResult,
    Instance,
    InvalidInput,
    NoSteinerTree,
    ParseError,
    SplitParams,
    SteinerTree,
    brute_force_steiner,
    classical_exponent,
    dw_solve,
    generate,
    hybrid_solve,
    parse_stp,
    predicted_level_sizes,
    quantum_exponent,
    run_cli,
    solve_beta,
    write_stp,
)

__all__ = [name for name in dir() if not name.startswith("_")]
