"""The snake game: movement on the millisecond accumulator, growth and
scoring, progressive speed, death detection, and the score-scroll frames
rendered after a game ends.

Board edges kill (no wrap-around); the speed schedule shortens the move
interval as the score rises, down to a floor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .model import (
    BOARD_HEIGHT,
    BOARD_WIDTH,
    CELL_COUNT,
    DIRECTION_DELTAS,
    Direction,
    Frame,
    PixelColor,
    opposite,
)
from .rng import Rng

Cell = tuple[int, int]  # (col, row)

_START_BODY = [(7, 5), (6, 5), (5, 5)]


@dataclass(frozen=True)
class SpeedSchedule:
    base_ms: int = 600
    step_ms: int = 25
    floor_ms: int = 150

    def interval_ms(self, score: int) -> int:
        return max(self.floor_ms, self.base_ms - self.step_ms * score)


class SnakeEvent(Enum):
    MOVED = "moved"
    ATE = "ate"
    DIED = "died"


@dataclass
class SnakeState:
    body: list[Cell]  # head first; length is always 3 + score while alive
    heading: Direction
    pending: Optional[Direction]
    food: Cell
    score: int = 0
    accumulator_ms: int = 0
    alive: bool = True

    @property
    def head(self) -> Cell:
        return self.body[0]


def _spawn_food(body: list[Cell], rng: Rng) -> Optional[Cell]:
    """Uniform draw over the free cells (row-major order); None if the
    board is full."""
    occupied = set(body)
    free = [
        (col, row)
        for row in range(BOARD_HEIGHT)
        for col in range(BOARD_WIDTH)
        if (col, row) not in occupied
    ]
    if not free:
        return None
    return free[rng.below(len(free))]


def new_game(rng: Rng) -> SnakeState:
    body = list(_START_BODY)
    food = _spawn_food(body, rng)
    assert food is not None
    return SnakeState(body=body, heading=Direction.RIGHT, pending=None, food=food)


def apply_direction(state: SnakeState, d: Direction) -> None:
    """Queue a turn for the next move; reversing into the body is ignored."""
    if not state.alive:
        return
    if d == opposite(state.heading):
        return
    state.pending = d


def snake_tick(state: SnakeState, dt_ms: int, schedule: SpeedSchedule, rng: Rng) -> list[SnakeEvent]:
    """Advance game time by dt_ms, committing one move per elapsed interval.

    Events record what each committed move did. Death is terminal: a dead
    state is returned unchanged.
    """
    events: list[SnakeEvent] = []
    if not state.alive:
        return events
    state.accumulator_ms += dt_ms
    while state.alive and state.accumulator_ms >= schedule.interval_ms(state.score):
        state.accumulator_ms -= schedule.interval_ms(state.score)
        if state.pending is not None:
            state.heading = state.pending
            state.pending = None
        dc, dr = DIRECTION_DELTAS[state.heading]
        head = state.body[0]
        new_head = (head[0] + dc, head[1] + dr)
        if not (0 <= new_head[0] < BOARD_WIDTH and 0 <= new_head[1] < BOARD_HEIGHT):
            state.alive = False
            events.append(SnakeEvent.DIED)
            break
        if new_head == state.food:
            state.body.insert(0, new_head)
            state.score += 1
            events.append(SnakeEvent.ATE)
            food = _spawn_food(state.body, rng)
            if food is None:
                # board full: a win, but it ends the game all the same
                state.alive = False
                events.append(SnakeEvent.DIED)
                break
            state.food = food
        else:
            # the tail cell vacates this move, so it is not an obstacle
            if new_head in state.body[:-1]:
                state.alive = False
                events.append(SnakeEvent.DIED)
                break
            state.body.insert(0, new_head)
            state.body.pop()
            events.append(SnakeEvent.MOVED)
    return events


def render_snake(state: SnakeState, show_food: bool = True) -> Frame:
    """Head purple, body blue, food red. A dead state renders its final
    board unchanged."""
    cells = [PixelColor.OFF] * CELL_COUNT
    if show_food:
        col, row = state.food
        cells[row * BOARD_WIDTH + col] = PixelColor.RED
    for col, row in state.body[1:]:
        cells[row * BOARD_WIDTH + col] = PixelColor.BLUE
    col, row = state.body[0]
    cells[row * BOARD_WIDTH + col] = PixelColor.PURPLE
    return Frame(tuple(cells))


# 3x5 digit glyphs; one blank column separates glyphs in rendered text.
_DIGIT_ROWS = {
    "0": ("###", "#.#", "#.#", "#.#", "###"),
    "1": (".#.", "##.", ".#.", ".#.", "###"),
    "2": ("###", "..#", "###", "#..", "###"),
    "3": ("###", "..#", "###", "..#", "###"),
    "4": ("#.#", "#.#", "###", "..#", "..#"),
    "5": ("###", "#..", "###", "..#", "###"),
    "6": ("###", "#..", "###", "#.#", "###"),
    "7": ("###", "..#", "..#", "..#", "..#"),
    "8": ("###", "#.#", "###", "#.#", "###"),
    "9": ("###", "#.#", "###", "..#", "###"),
}

GLYPH_WIDTH = 3
GLYPH_HEIGHT = 5


@dataclass(frozen=True)
class GlyphFont:
    glyphs: dict[str, tuple[tuple[bool, ...], ...]] = field(
        default_factory=lambda: {
            ch: tuple(tuple(c == "#" for c in row) for row in rows)
            for ch, rows in _DIGIT_ROWS.items()
        }
    )

    def __post_init__(self):
        for ch, rows in self.glyphs.items():
            if len(rows) != GLYPH_HEIGHT or any(len(r) != GLYPH_WIDTH for r in rows):
                raise ValueError(f"glyph {ch!r} is not {GLYPH_WIDTH}x{GLYPH_HEIGHT}")


DIGIT_FONT = GlyphFont()


def rasterize_text(text: str, font: GlyphFont = DIGIT_FONT) -> list[tuple[bool, ...]]:
    """Text as a list of pixel columns (each GLYPH_HEIGHT tall), glyphs
    separated by one blank column."""
    columns: list[tuple[bool, ...]] = []
    for i, ch in enumerate(text):
        if i > 0:
            columns.append((False,) * GLYPH_HEIGHT)
        glyph = font.glyphs[ch]
        for c in range(GLYPH_WIDTH):
            columns.append(tuple(glyph[r][c] for r in range(GLYPH_HEIGHT)))
    return columns


def score_scroll_frames(score: int, font: GlyphFont = DIGIT_FONT) -> list[Frame]:
    """Frames of the final-score animation: the digits enter from the right
    edge and march one column left per frame.

    Frame k (0-based) draws the text with its left edge at column 15 - k,
    so frame 0 is all-off; the total count is 15 + text_width.
    """
    if score < 0:
        raise ValueError("score must be non-negative")
    columns = rasterize_text(str(score), font)
    width = len(columns)
    top = (BOARD_HEIGHT - GLYPH_HEIGHT) // 2
    frames = []
    for k in range(BOARD_WIDTH + width):
        cells = [PixelColor.OFF] * CELL_COUNT
        left = BOARD_WIDTH - k
        for c, column in enumerate(columns):
            col = left + c
            if 0 <= col < BOARD_WIDTH:
                for r, on in enumerate(column):
                    if on:
                        cells[(top + r) * BOARD_WIDTH + col] = PixelColor.RED
        frames.append(Frame(tuple(cells)))
    return frames
