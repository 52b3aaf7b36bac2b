"""The runnable service: a WebSocket endpoint speaking the session protocol.

Every tick the engine thread broadcasts the frame and mode records to all
connected clients and optionally appends the LED packet to a sink file (the
simulated controller link). Client input records are queued into a FIFO the
engine drains once per tick, so a slow or hostile client can never stall
the loop; per-client backpressure is drop-oldest.
"""
from __future__ import annotations

import asyncio
import logging
import queue
import threading
import time
from typing import Optional

from websockets.asyncio.server import serve as ws_serve
from websockets.exceptions import ConnectionClosed

from .engine import Engine, EngineConfig
from .protocol import (
    AbsentMessage,
    FrameMessage,
    GestureMessage,
    MessageError,
    ModeMessage,
    SkeletonMessage,
    emit_message,
    encode_frame,
    parse_message,
)

logger = logging.getLogger(__name__)

_CLIENT_QUEUE_SIZE = 64


class PixelServer:
    """Engine thread plus asyncio WebSocket transport, glued by thread-safe
    queues. start() returns once the socket is bound; stop() shuts both
    threads down and flushes the session log."""

    def __init__(
        self,
        host: str = "127.0.0.1",
        port: int = 0,
        config: EngineConfig | None = None,
        catalog=None,
        led_sink_path=None,
        log_path=None,
    ):
        self.host = host
        self.port = port
        self.config = config or EngineConfig()
        self.engine = Engine(self.config, catalog)
        self.led_sink_path = led_sink_path
        self.log_path = log_path
        self._inputs: queue.Queue = queue.Queue()
        self._clients: set[asyncio.Queue] = set()
        self._aloop: Optional[asyncio.AbstractEventLoop] = None
        self._stop_future: Optional[asyncio.Future] = None
        self._ready = threading.Event()
        self._stopping = threading.Event()
        self._loop_thread: Optional[threading.Thread] = None
        self._engine_thread: Optional[threading.Thread] = None

    # -- lifecycle -----------------------------------------------------------

    def start(self) -> "PixelServer":
        self._loop_thread = threading.Thread(target=self._run_loop, name="pixel-transport", daemon=True)
        self._loop_thread.start()
        if not self._ready.wait(timeout=10):
            raise RuntimeError(f"could not bind {self.host}:{self.port}")
        self._engine_thread = threading.Thread(target=self._run_engine, name="pixel-engine", daemon=True)
        self._engine_thread.start()
        return self

    def stop(self) -> None:
        self._stopping.set()
        if self._engine_thread is not None:
            self._engine_thread.join(timeout=10)
        if self._aloop is not None and self._stop_future is not None:
            self._aloop.call_soon_threadsafe(
                lambda: self._stop_future.done() or self._stop_future.set_result(None)
            )
        if self._loop_thread is not None:
            self._loop_thread.join(timeout=10)
        if self.log_path is not None:
            self.engine.log.save(self.log_path)

    def run_forever(self) -> None:
        try:
            while True:
                time.sleep(0.5)
        except KeyboardInterrupt:
            pass
        finally:
            self.stop()

    # -- transport side --------------------------------------------------------

    def _run_loop(self) -> None:
        asyncio.run(self._serve())

    async def _serve(self) -> None:
        self._aloop = asyncio.get_running_loop()
        self._stop_future = self._aloop.create_future()
        async with ws_serve(self._handler, self.host, self.port) as server:
            self.port = server.sockets[0].getsockname()[1]
            self._ready.set()
            await self._stop_future

    async def _handler(self, conn) -> None:
        out: asyncio.Queue = asyncio.Queue(maxsize=_CLIENT_QUEUE_SIZE)
        self._clients.add(out)
        sender = asyncio.ensure_future(self._send_loop(conn, out))
        logger.info("client connected: %s", conn.remote_address)
        try:
            async for raw in conn:
                text = raw.decode("utf-8", errors="replace") if isinstance(raw, bytes) else raw
                for line in text.splitlines():
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        msg = parse_message(line)
                    except MessageError as exc:
                        logger.warning("dropping malformed record: %s", exc)
                        continue
                    if isinstance(msg, (SkeletonMessage, GestureMessage, AbsentMessage)):
                        self._inputs.put(msg)
        except ConnectionClosed:
            pass
        finally:
            self._clients.discard(out)
            sender.cancel()
            logger.info("client gone: %s", conn.remote_address)

    async def _send_loop(self, conn, out: asyncio.Queue) -> None:
        try:
            while True:
                payload = await out.get()
                await conn.send(payload)
        except (ConnectionClosed, asyncio.CancelledError):
            pass

    def _publish(self, payload: str) -> None:
        loop = self._aloop
        if loop is None or loop.is_closed():
            return

        def fan_out():
            for out in list(self._clients):
                if out.full():
                    try:
                        out.get_nowait()  # drop-oldest: latest state wins
                    except asyncio.QueueEmpty:
                        pass
                out.put_nowait(payload)

        try:
            loop.call_soon_threadsafe(fan_out)
        except RuntimeError:
            pass  # loop already shut down

    # -- engine side -------------------------------------------------------------

    def _run_engine(self) -> None:
        engine = self.engine
        tick_s = self.config.tick_ms / 1000.0
        led_file = open(self.led_sink_path, "wb") if self.led_sink_path else None
        next_deadline = time.monotonic()
        try:
            while not self._stopping.is_set():
                batch = []
                while True:
                    try:
                        batch.append(self._inputs.get_nowait())
                    except queue.Empty:
                        break
                frame = engine.tick(batch)
                tick = engine.tick_index - 1
                payload = (
                    emit_message(FrameMessage(tick=tick, frame=frame))
                    + "\n"
                    + emit_message(ModeMessage(tick=tick, mode=engine.mode.value))
                    + "\n"
                )
                self._publish(payload)
                if led_file is not None:
                    led_file.write(encode_frame(frame))
                    led_file.flush()
                next_deadline += tick_s
                delay = next_deadline - time.monotonic()
                if delay > 0:
                    time.sleep(delay)
                else:
                    next_deadline = time.monotonic()  # fell behind; don't spiral
        finally:
            if led_file is not None:
                led_file.close()


def serve(listen: str, config: EngineConfig, **kwargs) -> PixelServer:
    """Bind host:port and start the service (returns the running server)."""
    host, _, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"listen address must be host:port, got {listen!r}")
    server = PixelServer(host=host, port=int(port_text), config=config, **kwargs)
    return server.start()
