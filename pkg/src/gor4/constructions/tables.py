"""Named Betti tables of codimension four Gorenstein curves and the per-degree invariants."""

from __future__ import annotations

from ..homology import BettiTable

# display rows 1..3 as (b_1, b_2, b_3); row 0 is always (1, -, -, -) and row 4 is (-, -, -, -, 1)
_ROWS = {
    "CGKK 2": ((5, 5, 0), (1, 0, 1), (0, 5, 5)),
    "SSY 7": ((5, 5, 1), (1, 2, 1), (1, 5, 5)),
    "SSY 8": ((5, 6, 2), (2, 4, 2), (2, 6, 5)),
    "CGKK 3": ((4, 0, 0), (0, 6, 0), (0, 0, 4)),
    "SSY 4": ((4, 2, 0), (2, 6, 2), (0, 2, 4)),
    "SSY 3": ((4, 3, 0), (3, 6, 3), (0, 3, 4)),
    "SSY 6": ((4, 4, 1), (4, 8, 4), (1, 4, 4)),
    "CGKK 4": ((3, 0, 0), (4, 12, 4), (0, 0, 3)),
    "SSY 2": ((3, 1, 0), (5, 12, 5), (0, 1, 3)),
    "SSY 5": ((3, 3, 1), (7, 14, 7), (1, 3, 3)),
    "CGKK 7/8": ((2, 0, 0), (8, 18, 8), (0, 0, 2)),
    "SSY 1": ((2, 1, 0), (9, 18, 9), (0, 1, 2)),
}

# degree -> (genus, tables realised in that degree); the Hilbert polynomial is d*m - d
DEGREE_TABLE = {
    15: (16, ("CGKK 2", "SSY 7", "SSY 8")),
    16: (17, ("CGKK 3", "SSY 3", "SSY 4", "SSY 6")),
    17: (18, ("CGKK 4", "SSY 2", "SSY 5")),
    18: (19, ("CGKK 7/8", "SSY 1")),
}


def betti_names() -> list[str]:
    return list(_ROWS)


def named_table(name: str) -> BettiTable:
    try:
        r1, r2, r3 = _ROWS[name]
    except KeyError:
        raise KeyError(f"unknown Betti table {name!r}") from None
    return BettiTable.from_rows({
        0: [1, 0, 0, 0, 0],
        1: [0, *r1, 0],
        2: [0, *r2, 0],
        3: [0, *r3, 0],
        4: [0, 0, 0, 0, 1],
    })


def degree_of(name: str) -> int:
    for d, (_, names) in DEGREE_TABLE.items():
        if name in names:
            return d
    raise KeyError(name)


def genus_of(name: str) -> int:
    return DEGREE_TABLE[degree_of(name)][0]


def identify(table: BettiTable) -> str | None:
    """Name of the catalogued table equal to ``table``, if any."""
    for name in _ROWS:
        if named_table(name) == table:
            return name
    return None
