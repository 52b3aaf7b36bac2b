"""Turns the skeleton stream into discrete gesture events plus the
continuous control values (zone, user column, forearm direction).

The recognizer is a single-consumer state machine: it is only ever driven
from the engine tick loop. Grab timing runs on the skeleton timestamps;
absence detection runs on the engine clock passed in by the caller.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .model import (
    BOARD_WIDTH,
    Direction,
    HandState,
    SkeletonFrame,
    Vec3,
)


class Zone(Enum):
    AREA_A = "a"          # near zone: games
    AREA_B = "b"          # far zone: attract content
    OUT_OF_RANGE = "out"  # sensor cannot track reliably


@dataclass(frozen=True)
class ZoneConfig:
    """Depth thresholds. The sensor tracks well between 0.5 m and 4.5 m;
    the A/B split sits at the midpoint with a hysteresis dead band."""

    z_min: float = 0.5
    z_max: float = 4.5
    threshold: float = 2.5
    hysteresis: float = 0.15

    def __post_init__(self):
        if not (self.z_min < self.threshold - self.hysteresis):
            raise ValueError("z_min must lie below the hysteresis band")
        if not (self.threshold + self.hysteresis < self.z_max):
            raise ValueError("z_max must lie above the hysteresis band")


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Present:
    pass


@dataclass(frozen=True)
class Absent:
    pass


@dataclass(frozen=True)
class ZoneChanged:
    zone: Zone


@dataclass(frozen=True)
class Raised:
    side: Side


@dataclass(frozen=True)
class Lowered:
    pass


@dataclass(frozen=True)
class Grab:
    pass


@dataclass(frozen=True)
class DirectionUpdate:
    direction: Direction


GestureEvent = Union[Present, Absent, ZoneChanged, Raised, Lowered, Grab, DirectionUpdate]


@dataclass(frozen=True)
class RecognizerConfig:
    zone: ZoneConfig = field(default_factory=ZoneConfig)
    raise_margin_m: float = 0.10
    debounce_frames: int = 3          # consecutive frames for raise/lower and hand runs
    grab_window_ms: int = 600         # open -> closed transition deadline
    grab_cooldown_ms: int = 1000
    absence_timeout_ms: int = 500     # no skeleton for this long => Absent
    direction_dead_zone_m: float = 0.12


def classify_zone(z: float, prev: Zone, cfg: ZoneConfig) -> Zone:
    """Depth to zone with hysteresis so a user hovering at the threshold
    does not flap between games and attract content.

    From OUT_OF_RANGE the plain threshold decides (there is no previous
    side to stick to)."""
    if z < cfg.z_min or z > cfg.z_max:
        return Zone.OUT_OF_RANGE
    if prev == Zone.AREA_A:
        return Zone.AREA_B if z > cfg.threshold + cfg.hysteresis else Zone.AREA_A
    if prev == Zone.AREA_B:
        return Zone.AREA_A if z < cfg.threshold - cfg.hysteresis else Zone.AREA_B
    return Zone.AREA_A if z <= cfg.threshold else Zone.AREA_B


def forearm_direction(elbow: Vec3, wrist: Vec3, dead_zone_m: float = 0.12) -> Optional[Direction]:
    """Quantize the wrist-minus-elbow vector (projected to the x/y plane)
    into one of four directions; None inside the dead zone.

    Ties on the 45-degree boundary go horizontal (|x| >= |y|)."""
    dx = wrist[0] - elbow[0]
    dy = wrist[1] - elbow[1]
    if math.hypot(dx, dy) < dead_zone_m:
        return None
    if abs(dx) >= abs(dy):
        return Direction.RIGHT if dx > 0 else Direction.LEFT
    return Direction.UP if dy > 0 else Direction.DOWN


def user_column(x: float) -> int:
    """Map lateral position (clamped to +-1.5 m) onto board columns 0..14."""
    x = max(-1.5, min(1.5, x))
    return int(round((x + 1.5) / 3.0 * (BOARD_WIDTH - 1)))


@dataclass
class _HandTracker:
    """Open->closed grab detection for the currently raised hand."""

    open_run: int = 0
    closed_run: int = 0
    armed_at_ms: Optional[int] = None  # t of the last open frame once armed

    def reset(self):
        self.open_run = 0
        self.closed_run = 0
        self.armed_at_ms = None


class GestureRecognizer:
    """Stateful skeleton-to-gesture converter (one per engine)."""

    def __init__(self, config: RecognizerConfig | None = None):
        self.config = config or RecognizerConfig()
        self.last_zone = Zone.OUT_OF_RANGE
        self.raised: Optional[Side] = None
        self.present = False
        self.last_seen_ms: Optional[int] = None
        self.last_column: Optional[int] = None
        self._above_runs = {Side.LEFT: 0, Side.RIGHT: 0}
        self._below_run = 0
        self._hand = _HandTracker()
        self._cooldown_until_ms = 0
        self._last_direction: Optional[Direction] = None

    def process(self, skel: SkeletonFrame, now_ms: Optional[int] = None) -> list[GestureEvent]:
        """Digest one skeleton frame; returns the events it produced, in a
        fixed order: Present, ZoneChanged, Raised/Lowered, Grab,
        DirectionUpdate."""
        cfg = self.config
        now = skel.t_ms if now_ms is None else now_ms
        events: list[GestureEvent] = []

        if not self.present:
            self.present = True
            events.append(Present())
        self.last_seen_ms = now

        zone = classify_zone(skel.joint("spine")[2], self.last_zone, cfg.zone)
        if zone != self.last_zone:
            self.last_zone = zone
            events.append(ZoneChanged(zone))

        self.last_column = user_column(skel.joint("spine")[0])

        events.extend(self._track_raise(skel))
        if self.raised is not None:
            grab = self._track_grab(skel)
            if grab is not None:
                events.append(grab)
            side = "l" if self.raised == Side.LEFT else "r"
            direction = forearm_direction(
                skel.joint(f"elbow_{side}"),
                skel.joint(f"wrist_{side}"),
                cfg.direction_dead_zone_m,
            )
            if direction is not None and direction != self._last_direction:
                self._last_direction = direction
                events.append(DirectionUpdate(direction))
        return events

    def note_absent(self) -> list[GestureEvent]:
        """Explicit absent message from a client; idempotent."""
        if not self.present:
            return []
        self._go_absent()
        return [Absent()]

    def check_absence(self, now_ms: int) -> list[GestureEvent]:
        """Called once per engine tick; emits Absent when the skeleton
        stream has been silent past the timeout."""
        if (
            self.present
            and self.last_seen_ms is not None
            and now_ms - self.last_seen_ms > self.config.absence_timeout_ms
        ):
            self._go_absent()
            return [Absent()]
        return []

    def _go_absent(self):
        self.present = False
        self.raised = None
        self._above_runs = {Side.LEFT: 0, Side.RIGHT: 0}
        self._below_run = 0
        self._hand.reset()
        self._last_direction = None

    def _wrist_above(self, skel: SkeletonFrame, side: Side) -> bool:
        tag = "l" if side == Side.LEFT else "r"
        wrist_y = skel.joint(f"wrist_{tag}")[1]
        shoulder_y = skel.joint(f"shoulder_{tag}")[1]
        return wrist_y > shoulder_y + self.config.raise_margin_m

    def _track_raise(self, skel: SkeletonFrame) -> list[GestureEvent]:
        cfg = self.config
        if self.raised is None:
            for side in (Side.LEFT, Side.RIGHT):
                if self._wrist_above(skel, side):
                    self._above_runs[side] = min(self._above_runs[side] + 1, cfg.debounce_frames)
                else:
                    self._above_runs[side] = 0
            # right wins when both sides qualify on the same frame
            for side in (Side.RIGHT, Side.LEFT):
                if self._above_runs[side] >= cfg.debounce_frames:
                    self.raised = side
                    self._above_runs = {Side.LEFT: 0, Side.RIGHT: 0}
                    self._below_run = 0
                    self._hand.reset()
                    self._last_direction = None
                    return [Raised(side)]
            return []
        if self._wrist_above(skel, self.raised):
            self._below_run = 0
        else:
            self._below_run = min(self._below_run + 1, cfg.debounce_frames)
            if self._below_run >= cfg.debounce_frames:
                self.raised = None
                self._below_run = 0
                self._hand.reset()
                self._last_direction = None
                return [Lowered()]
        return []

    def _track_grab(self, skel: SkeletonFrame) -> Optional[Grab]:
        cfg = self.config
        hand = self._hand
        state = skel.hand_l if self.raised == Side.LEFT else skel.hand_r
        if state == HandState.OPEN:
            hand.open_run = min(hand.open_run + 1, cfg.debounce_frames)
            hand.closed_run = 0
            if hand.open_run >= cfg.debounce_frames:
                hand.armed_at_ms = skel.t_ms
        elif state == HandState.CLOSED:
            hand.open_run = 0
            if hand.armed_at_ms is None:
                return None
            hand.closed_run += 1
            if hand.closed_run >= cfg.debounce_frames:
                armed_at = hand.armed_at_ms
                hand.reset()
                if skel.t_ms - armed_at <= cfg.grab_window_ms and skel.t_ms >= self._cooldown_until_ms:
                    self._cooldown_until_ms = skel.t_ms + cfg.grab_cooldown_ms
                    return Grab()
        else:
            # unknown state breaks both runs
            hand.reset()
        return None
