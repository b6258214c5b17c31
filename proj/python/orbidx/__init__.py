"""Python bindings for the orbidx verification core."""

from ._orbidx import (
    OrbidxError,
    chain_terms,
    check_names,
    chi_orb,
    index_sum,
    tolerance_names,
    verify,
    verify_text,
    winding_number,
)

__all__ = [
    "OrbidxError",
    "chain_terms",
    "check_names",
    "chi_orb",
    "index_sum",
    "tolerance_names",
    "verify",
    "verify_text",
    "winding_number",
]
