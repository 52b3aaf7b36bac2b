"""Shared domain types: the four-state pixel, the 15x10 frame, directions
and the skeleton input record.

Cell order is row-major from the top-left corner everywhere (frame storage,
ASCII text form, LED wire payload): index = row * 15 + col.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

BOARD_WIDTH = 15
BOARD_HEIGHT = 10
CELL_COUNT = BOARD_WIDTH * BOARD_HEIGHT


class PixelColor(Enum):
    """One pixel is a red and a blue channel; both on reads as purple.

    The enum value is the 2-bit wire code (bit 0 = red channel, bit 1 = blue).
    """

    OFF = 0
    RED = 1
    BLUE = 2
    PURPLE = 3


# ASCII alphabet shared by the text frame form, sprite assets and the
# session protocol's "pixels" field.
_COLOR_TO_CHAR = {
    PixelColor.OFF: "O",
    PixelColor.RED: "R",
    PixelColor.BLUE: "B",
    PixelColor.PURPLE: "P",
}
_CHAR_TO_COLOR = {c: k for k, c in _COLOR_TO_CHAR.items()}


def mix_channels(red_on: bool, blue_on: bool) -> PixelColor:
    """Combine the two LED channels of one pixel into its displayed color."""
    return PixelColor((1 if red_on else 0) | (2 if blue_on else 0))


def channels(color: PixelColor) -> tuple[bool, bool]:
    """Inverse of mix_channels: (red_on, blue_on) for a color."""
    return bool(color.value & 1), bool(color.value & 2)


def color_to_char(color: PixelColor) -> str:
    return _COLOR_TO_CHAR[color]


def char_to_color(ch: str) -> PixelColor:
    try:
        return _CHAR_TO_COLOR[ch]
    except KeyError:
        raise ValueError(f"not a pixel character (expected one of ORBP): {ch!r}") from None


class Direction(Enum):
    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"


_OPPOSITE = {
    Direction.UP: Direction.DOWN,
    Direction.DOWN: Direction.UP,
    Direction.LEFT: Direction.RIGHT,
    Direction.RIGHT: Direction.LEFT,
}

# (dcol, drow); row 0 is the top of the board, so UP decreases the row.
DIRECTION_DELTAS = {
    Direction.UP: (0, -1),
    Direction.DOWN: (0, 1),
    Direction.LEFT: (-1, 0),
    Direction.RIGHT: (1, 0),
}


def opposite(d: Direction) -> Direction:
    return _OPPOSITE[d]


def cell_index(col: int, row: int) -> int:
    """Row-major index of a cell; raises IndexError out of bounds."""
    if not (0 <= col < BOARD_WIDTH and 0 <= row < BOARD_HEIGHT):
        raise IndexError(f"cell ({col},{row}) outside the {BOARD_WIDTH}x{BOARD_HEIGHT} board")
    return row * BOARD_WIDTH + col


@dataclass(frozen=True)
class Frame:
    """Immutable 15x10 board snapshot; the display currency of the system."""

    cells: tuple[PixelColor, ...]

    def __post_init__(self):
        if len(self.cells) != CELL_COUNT:
            raise ValueError(f"frame needs exactly {CELL_COUNT} cells, got {len(self.cells)}")

    @classmethod
    def blank(cls, fill: PixelColor = PixelColor.OFF) -> "Frame":
        return cls((fill,) * CELL_COUNT)

    def get(self, col: int, row: int) -> PixelColor:
        return self.cells[cell_index(col, row)]

    def set(self, col: int, row: int, color: PixelColor) -> "Frame":
        """New frame equal to this one except cell (col, row)."""
        i = cell_index(col, row)
        cells = list(self.cells)
        cells[i] = color
        return Frame(tuple(cells))

    def to_ascii(self) -> str:
        """Text form: 10 newline-terminated lines of 15 characters (ORBP)."""
        lines = []
        for row in range(BOARD_HEIGHT):
            start = row * BOARD_WIDTH
            lines.append("".join(_COLOR_TO_CHAR[c] for c in self.cells[start:start + BOARD_WIDTH]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_ascii(cls, text: str) -> "Frame":
        lines = text.splitlines()
        if len(lines) != BOARD_HEIGHT:
            raise ValueError(f"expected {BOARD_HEIGHT} lines, got {len(lines)}")
        cells: list[PixelColor] = []
        for line in lines:
            if len(line) != BOARD_WIDTH:
                raise ValueError(f"expected {BOARD_WIDTH} characters per line, got {len(line)}")
            cells.extend(char_to_color(ch) for ch in line)
        return cls(tuple(cells))

    def to_pixel_string(self) -> str:
        """150-character single-line form used by the session protocol."""
        return "".join(_COLOR_TO_CHAR[c] for c in self.cells)

    @classmethod
    def from_pixel_string(cls, text: str) -> "Frame":
        if len(text) != CELL_COUNT:
            raise ValueError(f"expected {CELL_COUNT} pixel characters, got {len(text)}")
        return cls(tuple(char_to_color(ch) for ch in text))


class HandState(Enum):
    OPEN = "open"
    CLOSED = "closed"
    UNKNOWN = "unknown"


# Joint order is part of the canonical skeleton message form.
JOINT_NAMES = (
    "head",
    "spine",
    "shoulder_l",
    "shoulder_r",
    "elbow_l",
    "elbow_r",
    "wrist_l",
    "wrist_r",
)

Vec3 = tuple[float, float, float]  # x right-positive, y up-positive, z away from sensor (meters)


@dataclass(frozen=True)
class SkeletonFrame:
    """One timestamped sensor reading: 8 joint positions plus hand states."""

    t_ms: int
    joints: dict[str, Vec3]
    hand_l: HandState = HandState.UNKNOWN
    hand_r: HandState = HandState.UNKNOWN

    def __post_init__(self):
        missing = [n for n in JOINT_NAMES if n not in self.joints]
        if missing:
            raise ValueError(f"skeleton missing joints: {missing}")
        for name in JOINT_NAMES:
            pos = self.joints[name]
            if len(pos) != 3 or not all(math.isfinite(v) for v in pos):
                raise ValueError(f"joint {name} has non-finite or malformed position {pos!r}")

    def joint(self, name: str) -> Vec3:
        return self.joints[name]
