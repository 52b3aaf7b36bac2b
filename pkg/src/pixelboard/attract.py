"""Far-zone attract content: pixel creatures that follow the user and the
modified life automaton.

The automaton differs from the Conway rules on purpose: an interior cell of
the next generation is colored iff exactly 3 of its 8 neighbors were colored
in the old generation, regardless of the cell's own old state. Border cells
carry the old state forward, minus a random handful that get erased; an
empty result reseeds a few random interior cells so the board never goes
permanently dark.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .model import (
    BOARD_HEIGHT,
    BOARD_WIDTH,
    CELL_COUNT,
    Frame,
    PixelColor,
    char_to_color,
)
from .rng import Rng


def _scan_board():
    border, interior = [], []
    for row in range(BOARD_HEIGHT):
        for col in range(BOARD_WIDTH):
            idx = row * BOARD_WIDTH + col
            if row in (0, BOARD_HEIGHT - 1) or col in (0, BOARD_WIDTH - 1):
                border.append(idx)
            else:
                interior.append(idx)
    return tuple(border), tuple(interior)


BORDER_INDICES, INTERIOR_INDICES = _scan_board()  # 46 border, 104 interior cells

# Interior cells always have all 8 neighbors on the board.
_NEIGHBORS = {
    idx: tuple(
        idx + dr * BOARD_WIDTH + dc
        for dr in (-1, 0, 1)
        for dc in (-1, 0, 1)
        if (dr, dc) != (0, 0)
    )
    for idx in INTERIOR_INDICES
}


@dataclass(frozen=True)
class GolConfig:
    """Knobs of the automaton. uncolor_max is the upper bound of border
    erasures per step; reseed_max bounds the empty-board reseed count."""

    uncolor_max: int = 3
    reseed_max: int = 5
    cell_color: PixelColor = PixelColor.BLUE
    step_period: int = 5  # engine ticks between generations

    def __post_init__(self):
        if self.uncolor_max < 0:
            raise ValueError("uncolor_max must be >= 0")
        if self.reseed_max < 1:
            raise ValueError("reseed_max must be >= 1")


@dataclass(frozen=True)
class GolGrid:
    """15x10 colored/uncolored grid, row-major like Frame."""

    cells: tuple[bool, ...]

    def __post_init__(self):
        if len(self.cells) != CELL_COUNT:
            raise ValueError(f"grid needs exactly {CELL_COUNT} cells, got {len(self.cells)}")

    @classmethod
    def empty(cls) -> "GolGrid":
        return cls((False,) * CELL_COUNT)

    @classmethod
    def from_coords(cls, coords) -> "GolGrid":
        cells = [False] * CELL_COUNT
        for col, row in coords:
            cells[row * BOARD_WIDTH + col] = True
        return cls(tuple(cells))

    def colored_coords(self) -> set[tuple[int, int]]:
        return {
            (i % BOARD_WIDTH, i // BOARD_WIDTH)
            for i, on in enumerate(self.cells)
            if on
        }


def gol_step(old: GolGrid, cfg: GolConfig, rng: Rng) -> GolGrid:
    """One generation of the modified automaton.

    Draw protocol (fixed; replay and the acceptance oracle depend on it):
      1. k = rng.below(uncolor_max + 1), then k draws rng.below(46 - i) for
         i = 0..k-1 selecting distinct border cells by partial Fisher-Yates
         over BORDER_INDICES; each selected cell is uncolored.
      2. Only if no interior cell got colored by the neighbor rule:
         j = 1 + rng.below(reseed_max), then j draws rng.below(104) choosing
         interior cells with replacement; each is colored.
    """
    cells = list(old.cells)
    new = [False] * CELL_COUNT

    any_interior_colored = False
    for idx in INTERIOR_INDICES:
        count = 0
        for n in _NEIGHBORS[idx]:
            if cells[n]:
                count += 1
        if count == 3:
            new[idx] = True
            any_interior_colored = True

    for idx in BORDER_INDICES:
        new[idx] = cells[idx]

    k = min(rng.below(cfg.uncolor_max + 1), len(BORDER_INDICES))
    order = list(BORDER_INDICES)
    for i in range(k):
        j = i + rng.below(len(order) - i)
        order[i], order[j] = order[j], order[i]
        new[order[i]] = False

    if not any_interior_colored:
        reseed = 1 + rng.below(cfg.reseed_max)
        for _ in range(reseed):
            new[INTERIOR_INDICES[rng.below(len(INTERIOR_INDICES))]] = True

    return GolGrid(tuple(new))


def random_gol_grid(rng: Rng, p: float = 0.3) -> GolGrid:
    """Fresh start grid: each interior cell colored with probability p
    (one chance draw per interior cell, row-major), borders uncolored."""
    cells = [False] * CELL_COUNT
    for idx in INTERIOR_INDICES:
        cells[idx] = rng.chance(p)
    return GolGrid(tuple(cells))


@dataclass(frozen=True)
class Sprite:
    """Rectangular creature bitmap; anchor is the column inside the bitmap
    that tracks the user position."""

    name: str
    rows: tuple[tuple[PixelColor, ...], ...]
    anchor: int = 0

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("sprite bitmap is empty")
        w = len(self.rows[0])
        if any(len(r) != w for r in self.rows):
            raise ValueError("sprite rows differ in length")
        if len(self.rows) > 10 or w > 10:
            raise ValueError("sprite bitmap larger than 10x10")
        if not (0 <= self.anchor < w):
            raise ValueError("anchor column outside the bitmap")

    @property
    def width(self) -> int:
        return len(self.rows[0])

    @property
    def height(self) -> int:
        return len(self.rows)


def parse_sprite(text: str, name: str, anchor: int | None = None) -> Sprite:
    """Sprite asset format: one row per line, characters O/R/B/P, all lines
    the same length."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError(f"sprite {name!r} has no rows")
    rows = tuple(tuple(char_to_color(ch) for ch in line) for line in lines)
    width = len(rows[0])
    return Sprite(name=name, rows=rows, anchor=width // 2 if anchor is None else anchor)


def load_sprite(path, anchor: int | None = None) -> Sprite:
    from pathlib import Path

    p = Path(path)
    return parse_sprite(p.read_text(), name=p.stem, anchor=anchor)


_SQUID = """
OOORROOO
OORRRROO
ORRRRRRO
RRORRORR
RRRRRRRR
OOROOROO
ORORRORO
ROROOROR
"""

_CRAB = """
OOPOOPOO
OPPPPPPO
PPOPPOPP
PPPPPPPP
OPPPPPPO
OOPOOPOO
OPOOOOPO
POOOOOOP
"""


def builtin_catalog() -> tuple[Sprite, ...]:
    return (
        parse_sprite(_SQUID, "squid"),
        parse_sprite(_CRAB, "crab"),
    )


@dataclass
class Creature:
    sprite_index: int
    column: int              # left edge of the bitmap on the board
    move_cooldown: int = 0   # ticks until the next 1-column step is allowed


@dataclass
class Gol:
    grid: GolGrid
    ticks_since_step: int = 0


Content = Union[Creature, Gol]


@dataclass
class AttractState:
    catalog: tuple[Sprite, ...]
    content: Content

    def __post_init__(self):
        if len(self.catalog) < 2:
            raise ValueError("attract catalog needs at least 2 sprites")


def centered_column(sprite: Sprite) -> int:
    return (BOARD_WIDTH - sprite.width) // 2


def new_attract_state(catalog: tuple[Sprite, ...] | None = None) -> AttractState:
    catalog = catalog or builtin_catalog()
    return AttractState(catalog=catalog, content=Creature(0, centered_column(catalog[0])))


def cycle_content(state: AttractState, rng: Rng) -> AttractState:
    """Swap to another content, chosen uniformly from all catalog sprites
    plus the automaton, excluding whatever is showing now. A new automaton
    starts from a fresh random grid."""
    if isinstance(state.content, Creature):
        choices: list[int | None] = [
            i for i in range(len(state.catalog)) if i != state.content.sprite_index
        ]
        choices.append(None)  # None stands for the automaton
    else:
        choices = list(range(len(state.catalog)))
    pick = choices[rng.below(len(choices))]
    if pick is None:
        content: Content = Gol(random_gol_grid(rng))
    else:
        content = Creature(pick, centered_column(state.catalog[pick]))
    return AttractState(catalog=state.catalog, content=content)


def creature_follow(creature: Creature, sprite: Sprite, target_col: int) -> None:
    """Move the creature one column toward the target, rate limited to one
    step per 3 calls; the target is clamped so the bitmap stays on-board."""
    desired = max(0, min(target_col, BOARD_WIDTH - sprite.width))
    if creature.move_cooldown > 0:
        creature.move_cooldown -= 1
        return
    if creature.column == desired:
        return
    creature.column += 1 if desired > creature.column else -1
    creature.move_cooldown = 2


def gol_tick(content: Gol, cfg: GolConfig, rng: Rng) -> None:
    """Advance the automaton by one generation every step_period ticks."""
    content.ticks_since_step += 1
    if content.ticks_since_step >= cfg.step_period:
        content.grid = gol_step(content.grid, cfg, rng)
        content.ticks_since_step = 0


def render_attract(state: AttractState, cfg: GolConfig) -> Frame:
    """Automaton cells paint cfg.cell_color; a creature bitmap is blitted at
    its column, vertically centered, with OFF cells transparent."""
    cells = [PixelColor.OFF] * CELL_COUNT
    if isinstance(state.content, Gol):
        for idx, on in enumerate(state.content.grid.cells):
            if on:
                cells[idx] = cfg.cell_color
    else:
        sprite = state.catalog[state.content.sprite_index]
        top = (BOARD_HEIGHT - sprite.height) // 2
        left = state.content.column
        for r, row in enumerate(sprite.rows):
            for c, color in enumerate(row):
                if color != PixelColor.OFF:
                    cells[(top + r) * BOARD_WIDTH + (left + c)] = color
    return Frame(tuple(cells))
