"""Board model: components, validation, the ``N(X)`` naming convention and
normalization of chained components.

A board lives on cells ``1..100``.  A component is a one-way jump from its
entrance to its exit; it is a chute when it goes down and a ladder when it
goes up.  Cells 1 and 100 never house a component and no two components
share an entrance.  Components may share exits.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

N_CELLS = 100
START = 1
FINISH = N_CELLS
USABLE_CELLS = range(2, N_CELLS)


class BoardError(ValueError):
    """Base class for invalid board input."""


class BoardSyntaxError(BoardError):
    pass


class OutOfRange(BoardError):
    pass


class ForbiddenCell(BoardError):
    pass


class SelfLoop(BoardError):
    pass


class DuplicateEntrance(BoardError):
    pass


class ComponentCycle(BoardError):
    pass


@dataclass(frozen=True, order=True)
class Component:
    entrance: int
    exit: int

    def __post_init__(self):
        for cell in (self.entrance, self.exit):
            if not isinstance(cell, int) or isinstance(cell, bool):
                raise BoardSyntaxError(f"cell {cell!r} is not an integer")
            if not 1 <= cell <= N_CELLS:
                raise OutOfRange(f"{self}: cell {cell} outside 1..{N_CELLS}")
        if self.entrance == self.exit:
            raise SelfLoop(f"{self}: entrance equals exit")
        if self.entrance in (START, FINISH) or self.exit in (START, FINISH):
            raise ForbiddenCell(f"{self}: cells {START} and {FINISH} cannot house a component")

    @property
    def is_chute(self) -> bool:
        return self.entrance > self.exit

    @property
    def is_ladder(self) -> bool:
        return self.entrance < self.exit

    def __str__(self) -> str:
        return f"{self.entrance}>{self.exit}"


@dataclass(frozen=True)
class Board:
    """An immutable board; components are kept sorted by entrance.

    Construct through :meth:`from_pairs` or :func:`parse_board`, both of
    which validate.  Equality compares the canonical component tuple.
    """

    components: tuple[Component, ...] = ()

    def __post_init__(self):
        comps = tuple(sorted(self.components))
        seen = set()
        for c in comps:
            if c.entrance in seen:
                raise DuplicateEntrance(f"{c}: cell {c.entrance} already starts a component")
            seen.add(c.entrance)
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Board":
        return cls(tuple(Component(int(e), int(x)) for e, x in pairs))

    @classmethod
    def from_name_matrix(cls, entrances: Iterable[int], exits: Iterable[int]) -> "Board":
        entrances, exits = list(entrances), list(exits)
        if len(entrances) != len(exits):
            raise BoardSyntaxError("entrance and exit rows differ in length")
        return cls.from_pairs(zip(entrances, exits))

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def entrances(self) -> tuple[int, ...]:
        return tuple(c.entrance for c in self.components)

    @property
    def exits(self) -> tuple[int, ...]:
        return tuple(c.exit for c in self.components)

    @property
    def chutes(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if c.is_chute)

    @property
    def ladders(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if c.is_ladder)

    def jumps(self) -> dict[int, int]:
        """Map entrance -> exit."""
        return {c.entrance: c.exit for c in self.components}

    @property
    def is_normalized(self) -> bool:
        ent = set(self.entrances)
        return not any(x in ent for x in self.exits)

    @property
    def has_shared_exits(self) -> bool:
        return len(set(self.exits)) != len(self.components)

    @property
    def is_strict(self) -> bool:
        """True when entrances and exits are all pairwise distinct.

        This is the family counted exactly by :func:`mokshapatam.enumeration.count_boards`.
        """
        cells = self.entrances + self.exits
        return len(set(cells)) == len(cells)

    def to_string(self) -> str:
        return ",".join(str(c) for c in self.components)

    @property
    def name(self) -> str:
        return format_name(self)

    def __str__(self) -> str:
        return self.name


EMPTY_BOARD = Board()


@dataclass(frozen=True)
class BoardKindMask:
    """Per-cell lookup of entrances and exits for a board."""

    entrance_of: Mapping[int, Component]
    exit_cells: frozenset[int]

    @classmethod
    def of(cls, board: Board) -> "BoardKindMask":
        return cls({c.entrance: c for c in board}, frozenset(board.exits))

    def is_entrance(self, cell: int) -> bool:
        return cell in self.entrance_of

    def is_exit(self, cell: int) -> bool:
        return cell in self.exit_cells

    def is_non_component(self, cell: int) -> bool:
        return not self.is_entrance(cell) and not self.is_exit(cell)


_PAIR = re.compile(r"^\s*(\d+)\s*>\s*(\d+)\s*$")


def parse_board(text: str) -> Board:
    """Parse ``"e1>x1,e2>x2,..."``; the empty string is the 0 Board."""
    if text is None or not text.strip():
        return EMPTY_BOARD
    pairs = []
    for chunk in text.split(","):
        m = _PAIR.match(chunk)
        if not m:
            raise BoardSyntaxError(f"malformed component {chunk.strip()!r}; expected 'entrance>exit'")
        pairs.append((int(m.group(1)), int(m.group(2))))
    return Board.from_pairs(pairs)


def read_board_file(path: str | Path) -> Board:
    """Read one ``entrance exit`` pair per line; ``#`` comments and blank lines skipped."""
    pairs = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise BoardSyntaxError(f"{path}:{lineno}: expected two integers, got {line!r}")
        pairs.append((int(fields[0]), int(fields[1])))
    return Board.from_pairs(pairs)


def write_board_file(board: Board, path: str | Path) -> None:
    lines = [f"# {format_name(board)}"] + [f"{c.entrance} {c.exit}" for c in board]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def format_name(board: Board) -> str:
    ent = ",".join(str(e) for e in board.entrances)
    ext = ",".join(str(x) for x in board.exits)
    return f"{len(board)}([{ent}],[{ext}])"


_NAME = re.compile(r"^\s*(\d+)\s*\(\s*\[([\d,\s]*)\]\s*,\s*\[([\d,\s]*)\]\s*\)\s*$")


def parse_name(text: str) -> Board:
    """Inverse of :func:`format_name`."""
    m = _NAME.match(text)
    if not m:
        raise BoardSyntaxError(f"not a board name: {text!r}")

    def cells(s):
        s = s.strip()
        return [int(v) for v in s.split(",")] if s else []

    ent, ext = cells(m.group(2)), cells(m.group(3))
    if int(m.group(1)) != len(ent):
        raise BoardSyntaxError(f"{text!r}: declares {m.group(1)} components but lists {len(ent)}")
    return Board.from_name_matrix(ent, ext)


def normalize(board: Board) -> Board:
    """Collapse chains so that no exit is also an entrance.

    A component ending on another component's entrance is redirected to the
    final cell of the chain.  Raises :class:`ComponentCycle` when a chain
    loops back on itself.
    """
    if board.is_normalized:
        return board
    jumps = board.jumps()
    resolved = {}
    for c in board:
        seen = {c.entrance}
        cell = c.exit
        while cell in jumps:
            if cell in seen:
                raise ComponentCycle(f"{c}: following components from {c.entrance} revisits cell {cell}")
            seen.add(cell)
            cell = jumps[cell]
        resolved[c.entrance] = cell
    return Board.from_pairs(resolved.items())


def resolve_landing(board: Board, cell: int) -> int:
    for c in board.components:
        if c.entrance == cell:
            return c.exit
    return cell


def landing_table(board: Board) -> list[int]:
    """``table[c]`` is the resting cell after landing on ``c`` (index 0 unused)."""
    board = normalize(board)
    table = list(range(N_CELLS + 1))
    for c in board:
        table[c.entrance] = c.exit
    return table
