"""The two wire contracts of the repository.

LED controller link (binary, 41 bytes per frame):
    byte 0      magic 0xA5
    byte 1      version 0x01
    bytes 2-39  payload: 150 pixels x 2 bits, row-major from the top-left,
                MSB-first within each byte (OFF=00 RED=01 BLUE=10 PURPLE=11),
                final 4 bits of the last byte zero
    byte 40     checksum: XOR of the 38 payload bytes

Session protocol (text, one JSON object per newline-delimited record):
    client -> server   {"type":"skeleton",...} {"type":"gesture",...}
                       {"type":"absent",...}
    server -> client   {"type":"frame",...} {"type":"mode",...}
Unknown fields are ignored; unknown types are rejected. Session log files
reuse the same grammar with a leading {"type":"header",...} record and a
"tick" field on every following record.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .gestures import (
    Absent,
    DirectionUpdate,
    GestureEvent,
    Grab,
    Lowered,
    Present,
    Raised,
    Side,
    Zone,
    ZoneChanged,
)
from .model import (
    CELL_COUNT,
    Direction,
    Frame,
    HandState,
    JOINT_NAMES,
    PixelColor,
    SkeletonFrame,
)

MAGIC = 0xA5
WIRE_VERSION = 0x01
PAYLOAD_LEN = 38
PACKET_LEN = PAYLOAD_LEN + 3

LOG_VERSION = 1


class PacketError(ValueError):
    """LED packet rejected; reason is one of length/magic/version/checksum/padding."""

    def __init__(self, reason: str, detail: str):
        self.reason = reason
        super().__init__(f"{reason}: {detail}")


def encode_frame(frame: Frame) -> bytes:
    payload = bytearray(PAYLOAD_LEN)
    for i, color in enumerate(frame.cells):
        byte_i, slot = divmod(i, 4)
        payload[byte_i] |= color.value << (6 - 2 * slot)
    checksum = 0
    for b in payload:
        checksum ^= b
    return bytes((MAGIC, WIRE_VERSION)) + bytes(payload) + bytes((checksum,))


def decode_frame(data: bytes) -> Frame:
    if len(data) != PACKET_LEN:
        raise PacketError("length", f"expected {PACKET_LEN} bytes, got {len(data)}")
    if data[0] != MAGIC:
        raise PacketError("magic", f"expected 0x{MAGIC:02X}, got 0x{data[0]:02X}")
    if data[1] != WIRE_VERSION:
        raise PacketError("version", f"expected 0x{WIRE_VERSION:02X}, got 0x{data[1]:02X}")
    payload = data[2:-1]
    checksum = 0
    for b in payload:
        checksum ^= b
    if checksum != data[-1]:
        raise PacketError("checksum", f"computed 0x{checksum:02X}, packet says 0x{data[-1]:02X}")
    if payload[-1] & 0x0F:
        raise PacketError("padding", "final 4 bits of the payload must be zero")
    cells = []
    for i in range(CELL_COUNT):
        byte_i, slot = divmod(i, 4)
        cells.append(PixelColor((payload[byte_i] >> (6 - 2 * slot)) & 0b11))
    return Frame(tuple(cells))


class MessageError(ValueError):
    """Session record rejected; carries the offending line."""

    def __init__(self, detail: str, line: str):
        self.line = line
        super().__init__(f"{detail}: {line!r}")


@dataclass(frozen=True)
class SkeletonMessage:
    skeleton: SkeletonFrame


@dataclass(frozen=True)
class GestureMessage:
    event: GestureEvent


@dataclass(frozen=True)
class AbsentMessage:
    t_ms: int


@dataclass(frozen=True)
class FrameMessage:
    tick: int
    frame: Frame


@dataclass(frozen=True)
class ModeMessage:
    tick: int
    mode: str


Message = Union[SkeletonMessage, GestureMessage, AbsentMessage, FrameMessage, ModeMessage]

_GESTURE_NAMES = {
    Present: "present",
    Lowered: "lowered",
    Grab: "grab",
}


def _gesture_to_fields(event: GestureEvent) -> dict:
    if isinstance(event, ZoneChanged):
        return {"event": "zone", "zone": event.zone.value}
    if isinstance(event, Raised):
        return {"event": "raised", "side": event.side.value}
    if isinstance(event, DirectionUpdate):
        return {"event": "direction", "direction": event.direction.value}
    name = _GESTURE_NAMES.get(type(event))
    if name is None:
        raise MessageError(f"gesture event {event!r} has no wire form", "")
    return {"event": name}


def _gesture_from_fields(obj: dict, line: str) -> GestureEvent:
    event = obj.get("event")
    if event == "present":
        return Present()
    if event == "lowered":
        return Lowered()
    if event == "grab":
        return Grab()
    if event == "zone":
        return ZoneChanged(Zone(obj["zone"]))
    if event == "raised":
        return Raised(Side(obj["side"]))
    if event == "direction":
        return DirectionUpdate(Direction(obj["direction"]))
    raise MessageError(f"unknown gesture event {event!r}", line)


def _message_to_obj(msg: Message) -> dict:
    if isinstance(msg, SkeletonMessage):
        skel = msg.skeleton
        return {
            "type": "skeleton",
            "t_ms": skel.t_ms,
            "joints": {name: list(skel.joints[name]) for name in JOINT_NAMES},
            "hand_l": skel.hand_l.value,
            "hand_r": skel.hand_r.value,
        }
    if isinstance(msg, GestureMessage):
        return {"type": "gesture", **_gesture_to_fields(msg.event)}
    if isinstance(msg, AbsentMessage):
        return {"type": "absent", "t_ms": msg.t_ms}
    if isinstance(msg, FrameMessage):
        return {"type": "frame", "tick": msg.tick, "pixels": msg.frame.to_pixel_string()}
    if isinstance(msg, ModeMessage):
        return {"type": "mode", "tick": msg.tick, "mode": msg.mode}
    raise TypeError(f"not a session message: {msg!r}")


def _obj_to_message(obj, line: str) -> Message:
    if not isinstance(obj, dict):
        raise MessageError("record is not an object", line)
    kind = obj.get("type")
    try:
        if kind == "skeleton":
            joints = obj["joints"]
            skel = SkeletonFrame(
                t_ms=int(obj["t_ms"]),
                joints={name: tuple(float(v) for v in joints[name]) for name in JOINT_NAMES},
                hand_l=HandState(obj.get("hand_l", "unknown")),
                hand_r=HandState(obj.get("hand_r", "unknown")),
            )
            return SkeletonMessage(skel)
        if kind == "gesture":
            return GestureMessage(_gesture_from_fields(obj, line))
        if kind == "absent":
            return AbsentMessage(t_ms=int(obj["t_ms"]))
        if kind == "frame":
            return FrameMessage(tick=int(obj["tick"]), frame=Frame.from_pixel_string(obj["pixels"]))
        if kind == "mode":
            return ModeMessage(tick=int(obj["tick"]), mode=str(obj["mode"]))
    except MessageError:
        raise
    except (KeyError, TypeError, ValueError, OverflowError) as exc:
        raise MessageError(f"malformed {kind} record ({exc})", line) from None
    raise MessageError(f"unknown record type {kind!r}", line)


def parse_message(line: str) -> Message:
    """Parse one session record; raises MessageError (and nothing else) on
    any malformed input."""
    try:
        obj = json.loads(line)
    except Exception:
        raise MessageError("record is not valid JSON", line) from None
    return _obj_to_message(obj, line)


def emit_message(msg: Message) -> str:
    """Canonical single-line form (no trailing newline)."""
    return json.dumps(_message_to_obj(msg), separators=(",", ":"))


def emit_log_header(seed: int, ticks: int, version: int = LOG_VERSION) -> str:
    return json.dumps(
        {"type": "header", "version": version, "seed": seed, "ticks": ticks},
        separators=(",", ":"),
    )


def parse_log_header(line: str) -> dict:
    try:
        obj = json.loads(line)
    except Exception:
        raise MessageError("header is not valid JSON", line) from None
    if not isinstance(obj, dict) or obj.get("type") != "header":
        raise MessageError("log must start with a header record", line)
    try:
        return {
            "version": int(obj["version"]),
            "seed": int(obj["seed"]),
            "ticks": int(obj.get("ticks", 0)),
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise MessageError(f"malformed header ({exc})", line) from None


def emit_log_record(tick: int, msg: Message) -> str:
    obj = _message_to_obj(msg)
    return json.dumps({"type": obj.pop("type"), "tick": tick, **obj}, separators=(",", ":"))


def parse_log_record(line: str) -> tuple[int, Message]:
    try:
        obj = json.loads(line)
    except Exception:
        raise MessageError("record is not valid JSON", line) from None
    if not isinstance(obj, dict) or "tick" not in obj:
        raise MessageError("log record is missing its tick field", line)
    try:
        tick = int(obj.pop("tick"))
    except (TypeError, ValueError):
        raise MessageError("log record tick is not an integer", line) from None
    return tick, _obj_to_message(obj, line)
