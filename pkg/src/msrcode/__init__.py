"""MSR and transformed MDS array codes over small finite fields."""
from .c1 import C1Code, assign_lambdas, b_matrix, build_c1, c1_params, validate_lambdas
from .c2 import C2Code, build_c2, c2_params, validate_c2_conditions
from .codec import (Codeword, RepairReport, encode, parity_residual, reconstruct, repair,
                    shorten, verify_mds)
from .gf import Field, make_field, smallest_valid_q
from .indexing import WaryContext

__all__ = [
    "C1Code", "C2Code", "Codeword", "Field", "RepairReport", "WaryContext",
    "assign_lambdas", "b_matrix", "build_c1", "build_c2", "c1_params", "c2_params",
    "encode", "make_field", "parity_residual", "reconstruct", "repair", "shorten",
    "smallest_valid_q", "validate_c2_conditions", "validate_lambdas", "verify_mds",
]
