import { drawArrows } from "./arrows.js";
import { defaultGeometry, drawChart } from "./chart.js";
import { parseServerMsg, type ClientMsg } from "./protocol.js";
import { RateLimiter } from "./ratelimit.js";
import {
  applyServerMsg,
  initialState,
  setAnglesLocal,
  setConnected,
  WINDOW,
  type ViewState,
} from "./state.js";

const SAMPLE_RATE = 25;
const ANGLE_MSG_INTERVAL_MS = 100; // at most 10 set_angles per second

function main(): void {
  const arrowCanvas = document.getElementById("arrows") as HTMLCanvasElement;
  const chartCanvas = document.getElementById("chart") as HTMLCanvasElement;
  const dial1 = document.getElementById("theta1") as HTMLInputElement;
  const dial2 = document.getElementById("theta2") as HTMLInputElement;
  const read1 = document.getElementById("theta1-value")!;
  const read2 = document.getElementById("theta2-value")!;
  const exactLabel = document.getElementById("exact-value")!;
  const cLabel = document.getElementById("c-value")!;
  const statusLabel = document.getElementById("status")!;
  const pauseButton = document.getElementById("pause") as HTMLButtonElement;

  const arrowCtx = arrowCanvas.getContext("2d")!;
  const chartCtx = chartCanvas.getContext("2d")!;
  const geometry = defaultGeometry(chartCanvas.width, chartCanvas.height);

  let state: ViewState = initialState();
  let paused = false;
  const limiter = new RateLimiter(ANGLE_MSG_INTERVAL_MS);

  const proto = location.protocol === "https:" ? "wss:" : "ws:";
  const socket = new WebSocket(`${proto}//${location.host}/ws`);

  function send(msg: ClientMsg): void {
    socket.send(JSON.stringify(msg));
  }

  function render(): void {
    drawArrows(
      arrowCtx,
      state.latest ? state.latest.red : null,
      state.latest ? state.latest.green : null,
      arrowCanvas.width,
    );
    drawChart(chartCtx, state.cWindow, state.exact, WINDOW, geometry);
    read1.textContent = `${state.theta1Deg}°`;
    read2.textContent = `${state.theta2Deg}°`;
    exactLabel.textContent = state.exact.toFixed(4);
    cLabel.textContent = state.latest ? state.latest.c.toFixed(4) : "–";
    statusLabel.textContent = state.error
      ? `error: ${state.error}`
      : state.connected
        ? paused
          ? "paused"
          : "streaming"
        : "disconnected";
    dial1.disabled = dial2.disabled = pauseButton.disabled = !state.connected;
  }

  function pushAngles(): void {
    state = setAnglesLocal(state, Number(dial1.value), Number(dial2.value));
    render();
    const t1 = state.theta1Deg;
    const t2 = state.theta2Deg;
    limiter.push(() => send({ type: "set_angles", theta1_deg: t1, theta2_deg: t2 }));
  }

  socket.addEventListener("open", () => {
    state = setConnected(state, true);
    send({
      type: "open",
      seed: Math.floor(Math.random() * 2 ** 31),
      theta1_deg: Number(dial1.value),
      theta2_deg: Number(dial2.value),
      rate: SAMPLE_RATE,
    });
    render();
  });

  socket.addEventListener("message", (event) => {
    state = applyServerMsg(state, parseServerMsg(event.data));
    render();
  });

  socket.addEventListener("close", () => {
    state = setConnected(state, false);
    limiter.cancel();
    render();
  });

  dial1.addEventListener("input", pushAngles);
  dial2.addEventListener("input", pushAngles);
  pauseButton.addEventListener("click", () => {
    paused = !paused;
    send({ type: paused ? "pause" : "resume" });
    pauseButton.textContent = paused ? "Resume" : "Pause";
    render();
  });

  render();
}

window.addEventListener("load", main);
