"""Command line entry point.

Subcommands:
    serve    run the network service
    run      headless scripted session, dumping ASCII frames (and a log)
    replay   re-run a recorded log; optionally assert against a golden dump
    encode   ASCII frames -> LED controller packets, for protocol debugging

The seed defaults from the PIXEL_SEED environment variable, else 0.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .engine import (
    EngineConfig,
    ReplayError,
    SessionLog,
    engine_config_from_dict,
    frames_to_ascii,
    replay,
    run_session,
)
from .model import BOARD_HEIGHT, Frame
from .protocol import MessageError, encode_frame, parse_log_header, parse_log_record
from .server import serve

FRAME_TEXT_LEN = BOARD_HEIGHT * 16  # 10 lines of 15 chars + newline


def _resolve_seed(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("PIXEL_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"PIXEL_SEED must be an integer, got {env!r}") from None
    return 0


def _load_script(path) -> list:
    """Scripts share the session log grammar; the header line is optional
    here (run takes its seed and tick count from the flags)."""
    lines = [line for line in Path(path).read_text().splitlines() if line.strip()]
    if not lines:
        return []
    start = 0
    try:
        parse_log_header(lines[0])
        start = 1
    except MessageError:
        pass
    return [parse_log_record(line) for line in lines[start:]]


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_run(args) -> int:
    config = EngineConfig(seed=_resolve_seed(args.seed))
    records = _load_script(args.script) if args.script else []
    frames, log = run_session(config, records, args.ticks)
    _write_text(args.ascii, frames_to_ascii(frames))
    if args.log:
        log.save(args.log)
    return 0


def _first_differing_tick(a: str, b: str) -> int:
    blocks = max(len(a), len(b)) // FRAME_TEXT_LEN + 1
    for tick in range(blocks):
        lo, hi = tick * FRAME_TEXT_LEN, (tick + 1) * FRAME_TEXT_LEN
        if a[lo:hi] != b[lo:hi]:
            return tick
    return -1


def cmd_replay(args) -> int:
    log = SessionLog.load(args.log)
    frames = replay(log)
    dump = frames_to_ascii(frames)
    if args.ascii:
        _write_text(args.ascii, dump)
    if args.assert_golden:
        golden = Path(args.assert_golden).read_text()
        if dump != golden:
            tick = _first_differing_tick(dump, golden)
            print(f"golden mismatch: first differing tick {tick}", file=sys.stderr)
            return 1
        print(f"golden match: {log.ticks} ticks")
    return 0


def cmd_encode(args) -> int:
    text = Path(args.ascii).read_text()
    lines = text.splitlines()
    if not lines or len(lines) % BOARD_HEIGHT != 0:
        raise ValueError(f"expected a multiple of {BOARD_HEIGHT} lines, got {len(lines)}")
    packets = bytearray()
    for i in range(0, len(lines), BOARD_HEIGHT):
        frame = Frame.from_ascii("\n".join(lines[i : i + BOARD_HEIGHT]) + "\n")
        packets.extend(encode_frame(frame))
    Path(args.out).write_bytes(bytes(packets))
    return 0


def cmd_serve(args) -> int:
    import dataclasses

    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s %(message)s")
    config = EngineConfig()
    seed_from_file = False
    if args.config:
        obj = json.loads(Path(args.config).read_text())
        config = engine_config_from_dict(obj)
        seed_from_file = "seed" in obj
    # seed precedence: --seed, then the config file, then PIXEL_SEED, then 0
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    elif not seed_from_file:
        config = dataclasses.replace(config, seed=_resolve_seed(None))
    if args.tick_ms is not None:
        config = dataclasses.replace(config, tick_ms=args.tick_ms)
    server = serve(
        args.listen,
        config,
        led_sink_path=args.led_sink,
        log_path=args.log,
    )
    print(f"listening on ws://{server.host}:{server.port} (seed {config.seed})")
    server.run_forever()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pixelboard",
        description="Simulator and service for the 15x10 gesture-driven pixel installation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the network service")
    p.add_argument("--listen", default="127.0.0.1:8765", help="host:port to bind")
    p.add_argument("--seed", type=int, default=None, help="engine seed (default: PIXEL_SEED or 0)")
    p.add_argument("--tick-ms", type=int, default=None, help="tick period override")
    p.add_argument("--config", default=None, help="JSON engine config file")
    p.add_argument("--led-sink", default=None, help="file receiving one LED packet per tick")
    p.add_argument("--log", default=None, help="write the session log here on shutdown")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("run", help="headless scripted session")
    p.add_argument("--script", default=None, help="input records (session log grammar)")
    p.add_argument("--ticks", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--ascii", default=None, help="frame dump output path (default stdout)")
    p.add_argument("--log", default=None, help="also record the session log here")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("replay", help="re-run a recorded session log")
    p.add_argument("--log", required=True)
    p.add_argument("--assert-golden", default=None, help="fail unless the dump matches this file")
    p.add_argument("--ascii", default=None, help="frame dump output path")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("encode", help="ASCII frames to LED packets")
    p.add_argument("--ascii", required=True, help="input frame dump")
    p.add_argument("--out", required=True, help="output packet file")
    p.set_defaults(func=cmd_encode)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MessageError, ReplayError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
