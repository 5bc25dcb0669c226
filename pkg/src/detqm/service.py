"""Streaming backend for the interactive EPR explorer.

One websocket connection hosts one session.  Control messages and sample
emission are serialized on a single loop per session, so the tick order is
total and the event stream is a deterministic function of the seed and the
control messages' tick positions.  Changing the angles rebuilds the model
and clears the trace (the measurement repetition restarts), while the tick
counter keeps running.
"""

from __future__ import annotations

import asyncio
import math
import os
from dataclasses import dataclass, field

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from detqm.epr import EprModel, arrow_endpoints, build_model, exact_correlation
from detqm.randomness import PhaseClock
from detqm.selector import SelectorBasis, birth_phase, mu

WINDOW = 200
MIN_RATE = 1
MAX_RATE = 1000


@dataclass
class SessionState:
    model: EprModel
    clock: PhaseClock
    rate: float
    tick: int = 0
    step: int = 0  # samples since the last reset
    sum_ab: float = 0.0
    sum_a2: float = 0.0
    sum_b2: float = 0.0
    window: list = field(default_factory=list)
    paused: bool = False
    basis: SelectorBasis = field(default_factory=lambda: SelectorBasis.standard(4))

    @property
    def exact(self) -> float:
        return exact_correlation(self.model)

    def reset_trace(self) -> None:
        self.step = 0
        self.sum_ab = 0.0
        self.sum_a2 = 0.0
        self.sum_b2 = 0.0
        self.window.clear()

    def set_angles(self, theta1_deg: float, theta2_deg: float) -> None:
        self.model = build_model(math.radians(theta1_deg), math.radians(theta2_deg))
        self.reset_trace()

    def next_sample(self) -> dict:
        state = birth_phase(self.model.singlet.amplitudes, self.clock, self.tick, self.basis)
        a, b = mu(self.model.composite, state, self.basis)
        self.tick += 1
        self.step += 1
        self.sum_ab += a * b
        self.sum_a2 += a * a
        self.sum_b2 += b * b
        c = self.sum_ab / math.sqrt(self.sum_a2 * self.sum_b2)
        self.window.append(c)
        if len(self.window) > WINDOW:
            del self.window[0]
        red, green = arrow_endpoints((a, b), self.model.theta1, self.model.theta2)
        return {
            "type": "sample",
            "step": self.step,
            "a": a,
            "b": b,
            "c": c,
            "red": list(red),
            "green": list(green),
            "exact": self.exact,
        }


async def _reader(ws: WebSocket, queue: asyncio.Queue) -> None:
    while True:
        queue.put_nowait(await ws.receive_json())


def create_app(max_sessions: int = 64, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="detqm explorer")
    app.state.open_sessions = 0
    app.state.max_sessions = max_sessions

    @app.get("/health")
    async def health():
        return {"status": "ok", "sessions": app.state.open_sessions}

    @app.websocket("/ws")
    async def explorer(ws: WebSocket):
        await ws.accept()
        queue: asyncio.Queue = asyncio.Queue()
        reader = asyncio.create_task(_reader(ws, queue))
        session: SessionState | None = None
        counted = False
        try:
            while True:
                msg = None
                if session is None or session.paused:
                    msg = await queue.get()
                else:
                    try:
                        msg = await asyncio.wait_for(queue.get(), timeout=1.0 / session.rate)
                    except asyncio.TimeoutError:
                        pass
                if msg is not None:
                    kind = msg.get("type")
                    if kind == "open":
                        if session is not None:
                            await ws.send_json({"type": "error", "message": "session already open"})
                            continue
                        if app.state.open_sessions >= app.state.max_sessions:
                            await ws.send_json({"type": "error", "message": "capacity exceeded"})
                            continue
                        rate = float(msg.get("rate", 10))
                        if not MIN_RATE <= rate <= MAX_RATE:
                            await ws.send_json(
                                {"type": "error", "message": f"rate must be in [{MIN_RATE}, {MAX_RATE}]"}
                            )
                            continue
                        theta1 = float(msg.get("theta1_deg", 0.0))
                        theta2 = float(msg.get("theta2_deg", 0.0))
                        session = SessionState(
                            model=build_model(math.radians(theta1), math.radians(theta2)),
                            clock=PhaseClock(
                                scheme=msg.get("scheme", "counter_hash"),
                                seed_offset=int(msg.get("seed", 0)),
                            ),
                            rate=rate,
                        )
                        app.state.open_sessions += 1
                        counted = True
                        await ws.send_json(
                            {
                                "type": "snapshot",
                                "seed": session.clock.seed_offset,
                                "scheme": session.clock.scheme,
                                "theta1_deg": theta1,
                                "theta2_deg": theta2,
                                "rate": rate,
                                "exact": session.exact,
                                "step": 0,
                            }
                        )
                    elif session is None:
                        await ws.send_json({"type": "error", "message": "no open session"})
                    elif kind == "set_angles":
                        # a parameter change always restarts the repetition,
                        # even when the new angles equal the old ones
                        session.set_angles(float(msg["theta1_deg"]), float(msg["theta2_deg"]))
                        await ws.send_json({"type": "reset", "exact": session.exact})
                    elif kind == "pause":
                        session.paused = True
                    elif kind == "resume":
                        session.paused = False
                    else:
                        await ws.send_json({"type": "error", "message": f"unknown message type {kind!r}"})
                elif session is not None and not session.paused:
                    await ws.send_json(session.next_sample())
        except (WebSocketDisconnect, RuntimeError):
            pass
        finally:
            reader.cancel()
            if counted:
                app.state.open_sessions -= 1

    if static_dir is None:
        candidate = os.path.join(os.getcwd(), "frontend", "dist")
        static_dir = candidate if os.path.isdir(candidate) else None
    if static_dir is not None and os.path.isdir(static_dir):
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
