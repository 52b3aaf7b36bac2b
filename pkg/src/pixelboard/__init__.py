"""Deterministic simulator and network service for a gesture-driven 15x10
four-color pixel installation."""

from .engine import Engine, EngineConfig, EngineMode, SessionLog, replay, run_session
from .model import Direction, Frame, PixelColor, SkeletonFrame
from .protocol import decode_frame, emit_message, encode_frame, parse_message
from .rng import Rng

__version__ = "0.1.0"

__all__ = [
    "Direction",
    "Engine",
    "EngineConfig",
    "EngineMode",
    "Frame",
    "PixelColor",
    "Rng",
    "SessionLog",
    "SkeletonFrame",
    "decode_frame",
    "emit_message",
    "encode_frame",
    "parse_message",
    "replay",
    "run_session",
]
