"""Built-in instances and tables used by ``verify-paper`` and the tests."""

from __future__ import annotations

from .exactalg import QQ
from .polyring import Ring
from .skewpfaff import SkewLinearMatrix

# 1-based (i, j) -> coefficients of x0..x5
DEL_PEZZO_ENTRIES = {
    (1, 2): [1, 0, 0, 0, 0, 0],
    (1, 3): [0, 1, 0, 0, 0, 0],
    (1, 4): [0, 0, 1, 0, 0, 0],
    (1, 5): [0, 0, 0, 1, 0, 0],
    (2, 3): [0, 0, 1, 0, 0, 0],
    (2, 4): [0, 0, 0, 1, 0, 0],
    (2, 5): [0, 0, 0, 0, 1, 0],
    (3, 4): [0, 0, 0, 0, 1, 0],
    (3, 5): [0, 0, 0, 0, 0, 1],
    (4, 5): [1, 0, 0, 0, 0, 1],
}

DEL_PEZZO_RANKS = [5, 5, 5, 6, 6]


def del_pezzo_matrix(field=QQ) -> SkewLinearMatrix:
    """The 5x5 matrix in x0..x5 whose Pfaffians cut out the quintic del Pezzo surface."""
    ring = Ring(tuple(f"x{i}" for i in range(6)), field)
    return SkewLinearMatrix.from_coefficients(5, ring, [(i, j, c) for (i, j), c in DEL_PEZZO_ENTRIES.items()])


# Betti tables as {(i, j): b}
CURVE_TABLE = {(0, 0): 1, (1, 2): 5, (1, 3): 13, (2, 3): 5, (2, 4): 45, (3, 5): 56, (4, 6): 25, (5, 8): 2}
GENERIC_TABLE = {(0, 0): 1, (1, 2): 5, (1, 3): 8, (2, 4): 45, (3, 5): 56, (4, 6): 25, (5, 8): 2}
CURVE_NUMERATOR = "1 - 5t^2 - 8t^3 + 45t^4 - 56t^5 + 25t^6 - 2t^8"
S5_NUMERATOR = "1 - 5t^2 + 5t^3 - t^5"

# resolutions in the cone construction, as (i, twist) -> rank with O(-twist)
TWO_O_V5 = {(0, 0): 2, (1, 2): 10, (2, 3): 10, (3, 5): 2}
BUNDLE_E = {(0, 0): 15, (1, 1): 45, (2, 2): 45, (3, 3): 15}
CONE_CANCELLATIONS = [(0, 0, 2)]
CONE_RESULT = {(0, 0): 13, (1, 1): 45, (2, 2): 55, (3, 3): 25, (4, 5): 2}
I_V5 = {(0, 2): 5, (1, 3): 5, (2, 5): 1}
