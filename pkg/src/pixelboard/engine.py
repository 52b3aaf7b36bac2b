"""Top-level interaction state machine and the fixed-timestep tick loop.

The engine is strictly single-threaded and fully deterministic: all
randomness flows from its one seeded generator, drawn in the order the tick
executes (queued events first, in arrival order, then the active mode's
advance). Together with the input log this makes every session replayable
to a byte-identical frame stream.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional

from . import attract as attract_mod
from .attract import (
    AttractState,
    Creature,
    Gol,
    GolConfig,
    Sprite,
    builtin_catalog,
    creature_follow,
    cycle_content,
    gol_tick,
    new_attract_state,
    render_attract,
)
from .gestures import (
    Absent,
    DirectionUpdate,
    GestureEvent,
    GestureRecognizer,
    Grab,
    Lowered,
    Present,
    Raised,
    RecognizerConfig,
    Zone,
    ZoneChanged,
    ZoneConfig,
)
from .model import Frame, char_to_color
from .protocol import (
    LOG_VERSION,
    AbsentMessage,
    GestureMessage,
    Message,
    MessageError,
    SkeletonMessage,
    emit_log_header,
    emit_log_record,
    parse_log_header,
    parse_log_record,
)
from .rng import Rng
from .snake import (
    SnakeEvent,
    SnakeState,
    SpeedSchedule,
    apply_direction,
    new_game,
    render_snake,
    score_scroll_frames,
    snake_tick,
)


class EngineMode(Enum):
    ATTRACT_CREATURE = "attract_creature"
    ATTRACT_GOL = "attract_gol"
    SNAKE_IDLE = "snake_idle"
    SNAKE_PLAY = "snake_play"
    SCORE_SCROLL = "score_scroll"


_IDLE_BLINK_TICKS = 8  # food blink half-period in SNAKE_IDLE


@dataclass(frozen=True)
class EngineConfig:
    tick_ms: int = 33
    seed: int = 0
    zone: ZoneConfig = field(default_factory=ZoneConfig)
    gol: GolConfig = field(default_factory=GolConfig)
    speed: SpeedSchedule = field(default_factory=SpeedSchedule)
    absence_timeout_ms: int = 3000

    def __post_init__(self):
        if self.tick_ms <= 0:
            raise ValueError("tick_ms must be positive")


def engine_config_from_dict(obj: dict) -> EngineConfig:
    """Build a config from parsed JSON (the serve --config file). Unknown
    keys are ignored, matching the protocol's tolerance."""
    kwargs = {}
    for key in ("tick_ms", "seed", "absence_timeout_ms"):
        if key in obj:
            kwargs[key] = int(obj[key])
    if "zone" in obj:
        kwargs["zone"] = ZoneConfig(**{
            k: float(v) for k, v in obj["zone"].items()
            if k in ("z_min", "z_max", "threshold", "hysteresis")
        })
    if "gol" in obj:
        g = dict(obj["gol"])
        if "cell_color" in g:
            g["cell_color"] = char_to_color(g["cell_color"])
        kwargs["gol"] = GolConfig(**{
            k: v for k, v in g.items()
            if k in ("uncolor_max", "reseed_max", "cell_color", "step_period")
        })
    if "speed" in obj:
        kwargs["speed"] = SpeedSchedule(**{
            k: int(v) for k, v in obj["speed"].items()
            if k in ("base_ms", "step_ms", "floor_ms")
        })
    return EngineConfig(**kwargs)


@dataclass
class SessionLog:
    """Seed plus tick-stamped inputs: everything needed to reproduce a run."""

    seed: int
    version: int = LOG_VERSION
    ticks: int = 0
    records: list[tuple[int, Message]] = field(default_factory=list)

    def dump(self) -> str:
        lines = [emit_log_header(self.seed, self.ticks, self.version)]
        lines.extend(emit_log_record(t, m) for t, m in self.records)
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.dump())

    @classmethod
    def loads(cls, text: str) -> "SessionLog":
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise MessageError("log is empty", "")
        header = parse_log_header(lines[0])
        records = [parse_log_record(line) for line in lines[1:]]
        return cls(
            seed=header["seed"],
            version=header["version"],
            ticks=header["ticks"],
            records=records,
        )

    @classmethod
    def load(cls, path) -> "SessionLog":
        return cls.loads(Path(path).read_text())


class ReplayError(ValueError):
    pass


class Engine:
    """One interactive session: recognizer + mode machine, one frame per tick."""

    def __init__(self, config: EngineConfig | None = None, catalog: tuple[Sprite, ...] | None = None):
        self.config = config or EngineConfig()
        self.catalog = catalog or builtin_catalog()
        self.rng = Rng(self.config.seed)
        self.recognizer = GestureRecognizer(RecognizerConfig(zone=self.config.zone))
        self.mode = EngineMode.ATTRACT_CREATURE
        self.attract: AttractState = new_attract_state(self.catalog)
        self.snake: Optional[SnakeState] = None
        self.scroll: list[Frame] = []
        self.tick_index = 0
        self.zone = Zone.OUT_OF_RANGE
        self.absent_since_ms: Optional[int] = None
        self.log = SessionLog(seed=self.config.seed)

    def now_ms(self) -> int:
        return self.tick_index * self.config.tick_ms

    def tick(self, messages: Iterable[Message] = ()) -> Frame:
        """Advance exactly one tick: log and digest the queued input
        messages, apply the resulting events, advance the active mode, and
        return this tick's frame."""
        now = self.now_ms()
        events: list[GestureEvent] = []
        for msg in messages:
            self.log.records.append((self.tick_index, msg))
            if isinstance(msg, SkeletonMessage):
                events.extend(self.recognizer.process(msg.skeleton, now_ms=now))
            elif isinstance(msg, GestureMessage):
                events.append(msg.event)
            elif isinstance(msg, AbsentMessage):
                events.extend(self.recognizer.note_absent())
            # frame/mode records are server->client traffic: not inputs
        events.extend(self.recognizer.check_absence(now))
        frame = self.step_events(events)
        self.tick_index += 1
        self.log.ticks = self.tick_index
        return frame

    def step_events(self, events: list[GestureEvent]) -> Frame:
        for event in events:
            self._apply_event(event)
        self._absence_abort()
        return self._advance_and_render()

    # -- event handling -----------------------------------------------------

    def _paused(self) -> bool:
        return self.absent_since_ms is not None or self.zone != Zone.AREA_A

    def _apply_event(self, event: GestureEvent) -> None:
        if isinstance(event, Present):
            self.absent_since_ms = None
        elif isinstance(event, Absent):
            if self.absent_since_ms is None:
                self.absent_since_ms = self.now_ms()
        elif isinstance(event, ZoneChanged):
            self.zone = event.zone
            if event.zone == Zone.AREA_A and self.mode in (
                EngineMode.ATTRACT_CREATURE,
                EngineMode.ATTRACT_GOL,
            ):
                self._enter_snake_idle()
        elif isinstance(event, Raised):
            if self.mode == EngineMode.SNAKE_IDLE and not self._paused():
                self.mode = EngineMode.SNAKE_PLAY
        elif isinstance(event, Grab):
            if self.mode in (EngineMode.ATTRACT_CREATURE, EngineMode.ATTRACT_GOL):
                self.attract = cycle_content(self.attract, self.rng)
                self.mode = (
                    EngineMode.ATTRACT_GOL
                    if isinstance(self.attract.content, Gol)
                    else EngineMode.ATTRACT_CREATURE
                )
        elif isinstance(event, DirectionUpdate):
            if self.mode == EngineMode.SNAKE_PLAY and self.snake is not None:
                apply_direction(self.snake, event.direction)
        elif isinstance(event, Lowered):
            pass
        # anything else is ignored: the transition function is total

    def _absence_abort(self) -> None:
        if (
            self.mode in (EngineMode.SNAKE_IDLE, EngineMode.SNAKE_PLAY)
            and self.absent_since_ms is not None
            and self.now_ms() - self.absent_since_ms > self.config.absence_timeout_ms
        ):
            self._enter_attract()

    # -- mode advance + render ----------------------------------------------

    def _advance_and_render(self) -> Frame:
        mode = self.mode
        if mode == EngineMode.ATTRACT_CREATURE:
            content = self.attract.content
            assert isinstance(content, Creature)
            target = self.recognizer.last_column
            if target is not None:
                sprite = self.attract.catalog[content.sprite_index]
                creature_follow(content, sprite, target - sprite.anchor)
            return render_attract(self.attract, self.config.gol)
        if mode == EngineMode.ATTRACT_GOL:
            content = self.attract.content
            assert isinstance(content, Gol)
            gol_tick(content, self.config.gol, self.rng)
            return render_attract(self.attract, self.config.gol)
        if mode == EngineMode.SNAKE_IDLE:
            assert self.snake is not None
            blink_on = (self.tick_index // _IDLE_BLINK_TICKS) % 2 == 0
            return render_snake(self.snake, show_food=blink_on)
        if mode == EngineMode.SNAKE_PLAY:
            assert self.snake is not None
            if not self._paused():
                events = snake_tick(self.snake, self.config.tick_ms, self.config.speed, self.rng)
                if SnakeEvent.DIED in events:
                    self.scroll = score_scroll_frames(self.snake.score)
                    self.mode = EngineMode.SCORE_SCROLL
            return render_snake(self.snake)
        # SCORE_SCROLL: emit the next pending frame; when the last one goes
        # out the journey starts over from attract
        frame = self.scroll.pop(0)
        if not self.scroll:
            self._enter_attract()
        return frame

    def _enter_snake_idle(self) -> None:
        self.snake = new_game(self.rng)
        self.mode = EngineMode.SNAKE_IDLE

    def _enter_attract(self) -> None:
        self.attract = new_attract_state(self.catalog)
        self.snake = None
        self.scroll = []
        self.mode = EngineMode.ATTRACT_CREATURE


def run_session(
    config: EngineConfig,
    records: Iterable[tuple[int, Message]],
    ticks: int,
    catalog: tuple[Sprite, ...] | None = None,
) -> tuple[list[Frame], SessionLog]:
    """Fixed-timestep headless loop: each tick drains the records due at or
    before it, steps the engine, and collects the frame.

    A failing record source ends the session cleanly with whatever was
    produced so far; the log always reflects the completed ticks.
    """
    if ticks < 0:
        raise ValueError("tick count must be >= 0")
    engine = Engine(config, catalog)
    frames: list[Frame] = []
    source = iter(records)
    pending: Optional[tuple[int, Message]] = None
    for t in range(ticks):
        batch = []
        try:
            while True:
                if pending is None:
                    pending = next(source)
                if pending[0] <= t:
                    batch.append(pending[1])
                    pending = None
                else:
                    break
        except StopIteration:
            pass
        except Exception:
            # input source failure: flush what we have and stop
            break
        frames.append(engine.tick(batch))
    return frames, engine.log


def replay(log: SessionLog, config: EngineConfig | None = None) -> list[Frame]:
    """Re-run a recorded session. The seed comes from the log header (the
    config's seed is ignored); version mismatches and non-monotone tick
    numbers are rejected."""
    if log.version != LOG_VERSION:
        raise ReplayError(f"log version {log.version} does not match supported version {LOG_VERSION}")
    prev = -1
    for tick, _ in log.records:
        if tick < prev:
            raise ReplayError(f"log tick numbers are not non-decreasing (saw {tick} after {prev})")
        prev = tick
    base = config or EngineConfig()
    cfg = dataclasses.replace(base, seed=log.seed)
    frames, _ = run_session(cfg, log.records, log.ticks)
    return frames


def frames_to_ascii(frames: Iterable[Frame]) -> str:
    """Concatenated text dump: 10 lines of 15 characters per frame."""
    return "".join(f.to_ascii() for f in frames)
