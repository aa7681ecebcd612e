"""The example boards discussed in the literature on the game."""
from .board import Board, EMPTY_BOARD

ZERO = EMPTY_BOARD

XI = Board.from_name_matrix(
    [43, 51, 52, 53, 54, 55, 56, 99],
    [98, 32, 33, 34, 35, 36, 37, 2],
)

U = Board.from_name_matrix(
    [94, 95, 96, 97, 98, 99],
    [89, 69, 48, 42, 61, 81],
)

ALPHA = Board.from_name_matrix(
    [2, 9, 21, 26, 34, 50, 54, 88, 95, 97],
    [23, 31, 63, 4, 65, 15, 90, 24, 53, 80],
)

DELTA = Board.from_name_matrix(
    [2, 54, 55, 56, 57, 58, 59],
    [99, 50, 32, 27, 23, 39, 41],
)

G0 = Board.from_name_matrix(
    [10, 34, 35, 36, 37, 38, 39, 41, 74, 75, 76, 77, 78, 79],
    [71, 30, 12, 7, 3, 19, 21, 81, 70, 52, 54, 56, 58, 60],
)

# unwinnable, yet an absorbing chain: {50} is absorbing
FIFTY_TRAP = Board.from_name_matrix(
    [51, 52, 53, 54, 55, 56],
    [50, 50, 50, 50, 50, 50],
)

BOARDS = {
    "0": ZERO,
    "8(Xi)": XI,
    "6(U)": U,
    "10(alpha)": ALPHA,
    "7(Delta)": DELTA,
    "14(G0)": G0,
    "6(fifty)": FIFTY_TRAP,
}
