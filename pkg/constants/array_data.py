"""
The OA(16, 3) over symbols 1..4 used with H4 in the 16-dimensional
Beth-Wocjan example. Stored column by column.
"""

from __future__ import annotations

OA16_COLUMNS: list[list[int]] = [
    [1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4],
    [1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4],
    [1, 2, 3, 4, 2, 3, 4, 1, 3, 4, 1, 2, 4, 1, 2, 3],
]
