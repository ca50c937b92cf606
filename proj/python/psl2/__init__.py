from ._core import (
    ClassEntry,
    IntegrityError,
    InvalidArgument,
    InvariantProfile,
    ResourceError,
    bhc,
    big_omega,
    census,
    factorize,
    hb_bounds,
    hb_scan,
    invariants,
    is_prime,
    oracle_census,
    profile,
    search,
    tau,
    verify_table,
)

__version__ = "0.1.0"
