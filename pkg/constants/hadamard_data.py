"""
Hadamard matrices used by the Beth-Wocjan construction and its worked example.

Rows are written as '+'/'-' strings; `sign_rows` turns them into +1/-1 lists.
"""

from __future__ import annotations

# Regular 4x4 Hadamard matrix with constant row sum 2
H4: list[list[int]] = [
    [-1, 1, 1, 1],
    [1, -1, 1, 1],
    [1, 1, -1, 1],
    [1, 1, 1, -1],
]

# Regular symmetric 36x36 Hadamard matrix, 21 plus signs per row
H36_ROWS: list[str] = [
    "----+--++++-++-+-+++++---++++-+++-+-",
    "+----+--++-++-+-+++++---++++-+++-+-+",
    "++----+---++-+-+++++---++++-+++-+-++",
    "-++----+-++-+-+++-+---++++++++-+-++-",
    "--++----++-+-+++-+---++++++++-+-++-+",
    "+--++-----+-+++-++--++++++-+-+-++-++",
    "-+--++---+-+++-++--++++++---+-++-+++",
    "--+--++---+++-++-+++++++---+-++-+++-",
    "---+--++-+++-++-+-+++++---+-++-+++-+",
    "++-++-+-+++++-++--+-+-+++-+---+++---",
    "+-++-+-++-++++-++--+-+++-++--+++----",
    "-++-+-+++--++++-+++-+++-++--+++-----",
    "++-+-+++-+--++++-+-+++-++-++++------",
    "+-+-+++-+++--++++-+++-++-+-++------+",
    "-+-+++-++-++--++++++-++-+-++------++",
    "+-+++-++-+-++--++++-++-+-++------+++",
    "-+++-++-+++-++--++-++-+-+++-----+++-",
    "+++-++-+-+++-++--+++-+-+++-----+++--",
    "++++---++-+-+---+-++++-++--++-+-++-+",
    "+++---++++-+---+---++++-++-+-+-++-++",
    "++---++++-+---+--+--++++-++-+-++-+++",
    "+---++++++---+--+-+--++++-++-++-+++-",
    "---++++++---+--+-+++--++++--++-+++-+",
    "--++++++---+--+-+--++--++++++-+++-+-",
    "-++++++---+--+-+--+-++--++++-+++-+-+",
    "++++++---+--+-+---++-++--++-+++-+-++",
    "+++++---+--+-+---++++-++--++++-+-++-",
    "++-+++-+-+++---+++--+-+--+-++++-++--",
    "+-+++-+-+++---++++-+-+--+---++++-++-",
    "-+++-+-+++---++++++-+--+-----++++-++",
    "+++-+-++----++++++-+--+---++--++++-+",
    "++-+-++-+--++++++-+--+---+-++--++++-",
    "+-+-++-++-++++++----+---+-+-++--++++",
    "-+-++-+++++++++----+---+-+-+-++--+++",
    "+-++-+++-+++++---++---+-+--++-++--++",
    "-++-+++-+++++---++---+-+--++++-++--+",
]

# Unbiased Hadamard matrices between the three bases of the 16-dimensional
# example built from the 16x3 orthogonal array and H4.
H12_ROWS: list[str] = [
    "+----+++-+++-+++",
    "-++++----+++-+++",
    "-+++-++++----+++",
    "-+++-+++-++++---",
    "-+--+-+++-+++-++",
    "+-++-+--+-+++-++",
    "+-+++-++-+--+-++",
    "+-+++-+++-++-+--",
    "--+-++-+++-+++-+",
    "++-+--+-++-+++-+",
    "++-+++-+--+-++-+",
    "++-+++-+++-+--+-",
    "---++++-+++-+++-",
    "+++----++++-+++-",
    "+++-+++----++++-",
    "+++-+++-+++----+",
]

H13_ROWS: list[str] = [
    "+----+++-+++-+++",
    "-++++----+++-+++",
    "-+++-++++----+++",
    "-+++-+++-++++---",
    "+-++-+--+-+++-++",
    "+-+++-++-+--+-++",
    "+-+++-+++-++-+--",
    "-+--+-+++-+++-++",
    "++-+++-+--+-++-+",
    "++-+++-+++-+--+-",
    "--+-++-+++-+++-+",
    "++-+--+-++-+++-+",
    "+++-+++-+++----+",
    "---++++-+++-+++-",
    "+++----++++-+++-",
    "+++-+++----++++-",
]

H23_ROWS: list[str] = [
    "+---+-++++-++++-",
    "-+++-+--++-++++-",
    "-++++-++--+-+++-",
    "-++++-++++-+---+",
    "+++-+---+-++++-+",
    "+++--+++-+--++-+",
    "+++--++++-++--+-",
    "---+-++++-++++-+",
    "++-++++-+---+-++",
    "++-++++--+++-+--",
    "--+-+++--++++-++",
    "++-+---+-++++-++",
    "+-++++-++++-+---",
    "-+--++-++++--+++",
    "+-++--+-+++--+++",
    "+-++++-+---+-+++",
]


def sign_rows(rows: list[str]) -> list[list[int]]:
    """Convert '+'/'-' strings to rows of +1/-1."""
    return [[1 if c == "+" else -1 for c in row] for row in rows]
