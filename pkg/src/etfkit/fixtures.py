"""Canonical reference fixtures.

fig1 is the 6x16 sparse ETF built from the complete pair design on four
points, fig2 its constant-amplitude +-1/sqrt(6) counterpart, and fig3 the
6x32 self-complementary binary code obtained from fig2's signs.  All three
are deterministic constructions, so emitting them is byte-stable run to run.
"""

from __future__ import annotations

from .codes import BinaryCode, frame_to_code
from .designs import round_robin_design
from .flatmat import drop_row_simplex, hadamard
from .frames import Frame, kirkman_etf, steiner_etf

FIXTURE_NAMES = ("fig1", "fig2", "fig3")


def fig1() -> Frame:
    """6x16 sparse ETF: pair design on 4 points with the order-4 sign simplex."""
    design = round_robin_design(4)
    simplex = drop_row_simplex(hadamard(4), 0)
    return steiner_etf(design, simplex)


def fig2() -> Frame:
    """6x16 constant-amplitude ETF: the flat transform of fig1 with order-2
    sign bases on each parallel class."""
    design = round_robin_design(4)
    simplex = drop_row_simplex(hadamard(4), 0)
    return kirkman_etf(design, simplex, hadamard(2))


def fig3() -> BinaryCode:
    """6x32 self-complementary code carrying fig2's signs."""
    return frame_to_code(fig2())
