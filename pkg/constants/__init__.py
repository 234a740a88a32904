"""
Reference data for the constructions: the n = 4 Kerdock forms, the Hadamard
matrices and the orthogonal array of the worked examples.
"""

from __future__ import annotations

from .array_data import OA16_COLUMNS
from .hadamard_data import H4, H12_ROWS, H13_ROWS, H23_ROWS, H36_ROWS, sign_rows
from .kerdock_forms import KERDOCK_N4_FORMS, Q2_VECTOR, Q8_VECTOR, X2_ROWS

__all__ = [
    "OA16_COLUMNS",
    "H4",
    "H12_ROWS",
    "H13_ROWS",
    "H23_ROWS",
    "H36_ROWS",
    "sign_rows",
    "KERDOCK_N4_FORMS",
    "Q2_VECTOR",
    "Q8_VECTOR",
    "X2_ROWS",
]
