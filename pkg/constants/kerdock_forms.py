"""
Alternating bilinear forms of eight quadratic forms on Z_2^4 whose pairwise
sums all have full rank, together with reference data derived from them.

Point index i of Z_2^4 has coordinate x_(j+1) equal to bit j of i.
"""

from __future__ import annotations

KERDOCK_N4_FORMS: list[list[list[int]]] = [
    [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]],
    [[0, 1, 1, 0], [1, 0, 1, 1], [1, 1, 0, 0], [0, 1, 0, 0]],
    [[0, 0, 0, 1], [0, 0, 1, 1], [0, 1, 0, 1], [1, 1, 1, 0]],
    [[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    [[0, 0, 1, 1], [0, 0, 1, 0], [1, 1, 0, 1], [1, 0, 1, 0]],
    [[0, 1, 1, 1], [1, 0, 0, 1], [1, 0, 0, 0], [1, 1, 0, 0]],
]

# Characteristic vectors [Q(x)]_x of the second and eighth forms
Q2_VECTOR: list[int] = [0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1, 0]
Q8_VECTOR: list[int] = [0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1, 0]

# Sign simplex of the second form: 16 vectors of length 15
X2_ROWS: list[str] = [
    "---+---+---++++",
    "+-+++-+++-++-+-",
    "++-+++-+++-+--+",
    "-+++-+++-++++--",
    "+++----++++-+++",
    "-+--+-++-+---+-",
    "--+-++-+--+---+",
    "+----++++---+--",
    "+++-+++----++++",
    "-+---+--+-++-+-",
    "--+---+-++-+--+",
    "+---+----++++--",
    "---++++-+++-+++",
    "+-++-+---+---+-",
    "++-+--+---+---+",
    "-++++---+---+--",
]
