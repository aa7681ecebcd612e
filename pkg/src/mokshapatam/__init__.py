"""Chutes-and-ladders (Moksha-Patam) boards as Markov chains: winnability,
game statistics, structural diagnosis and exact board counts."""
from .board import (
    Board,
    BoardError,
    Component,
    ComponentCycle,
    DuplicateEntrance,
    ForbiddenCell,
    OutOfRange,
    SelfLoop,
    format_name,
    normalize,
    parse_board,
    parse_name,
    read_board_file,
    resolve_landing,
)
from .classify import (
    Classification,
    Verdict,
    absorption_probability,
    block_certificate,
    classify_board,
    closed_classes,
    expected_game_length,
    game_length_distribution,
    reachable_set,
    stationary_distributions,
)
from .markov import build_matrix, permute_matrix, render_heatmap
from .simulate import SimConfig, play_game, random_board, simulate
from .structural import find_chute_barriers, flowchart_classify, trap_region

__version__ = "0.1.0"
