// Rolling correlation chart: jagged brownish curve of the last 200 running
// c values over a fixed y range of [-1, 1], with a blue horizontal line at
// the exact correlation.

export const Y_MIN = -1.05;
export const Y_MAX = 1.05;

export interface ChartGeometry {
  width: number;
  height: number;
  padLeft: number;
  padRight: number;
  padTop: number;
  padBottom: number;
}

export function defaultGeometry(width: number, height: number): ChartGeometry {
  return { width, height, padLeft: 36, padRight: 8, padTop: 8, padBottom: 18 };
}

export function cToY(c: number, geo: ChartGeometry): number {
  const inner = geo.height - geo.padTop - geo.padBottom;
  const frac = (Y_MAX - c) / (Y_MAX - Y_MIN);
  return geo.padTop + frac * inner;
}

export function indexToX(i: number, count: number, windowSize: number, geo: ChartGeometry): number {
  // the newest point is pinned to the right edge; the window scrolls left
  const inner = geo.width - geo.padLeft - geo.padRight;
  const slot = windowSize - count + i;
  return geo.padLeft + (slot / (windowSize - 1)) * inner;
}

export function drawChart(
  ctx: CanvasRenderingContext2D,
  cWindow: number[],
  exact: number,
  windowSize: number,
  geo: ChartGeometry,
): void {
  ctx.clearRect(0, 0, geo.width, geo.height);

  ctx.strokeStyle = "#ccc";
  ctx.lineWidth = 1;
  for (const tick of [-1, -0.5, 0, 0.5, 1]) {
    const y = cToY(tick, geo);
    ctx.beginPath();
    ctx.moveTo(geo.padLeft, y);
    ctx.lineTo(geo.width - geo.padRight, y);
    ctx.stroke();
    ctx.fillStyle = "#666";
    ctx.font = "11px sans-serif";
    ctx.textAlign = "right";
    ctx.textBaseline = "middle";
    ctx.fillText(tick.toFixed(1), geo.padLeft - 4, y);
  }

  const yExact = cToY(exact, geo);
  ctx.strokeStyle = "#1f5fd0";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(geo.padLeft, yExact);
  ctx.lineTo(geo.width - geo.padRight, yExact);
  ctx.stroke();

  if (cWindow.length === 0) {
    return;
  }
  ctx.strokeStyle = "#8b5a2b";
  ctx.fillStyle = "#8b5a2b";
  ctx.lineWidth = 1.5;
  if (cWindow.length === 1) {
    ctx.beginPath();
    ctx.arc(indexToX(0, 1, windowSize, geo), cToY(cWindow[0], geo), 2.5, 0, 2 * Math.PI);
    ctx.fill();
    return;
  }
  ctx.beginPath();
  for (let i = 0; i < cWindow.length; i++) {
    const x = indexToX(i, cWindow.length, windowSize, geo);
    const y = cToY(cWindow[i], geo);
    if (i === 0) {
      ctx.moveTo(x, y);
    } else {
      ctx.lineTo(x, y);
    }
  }
  ctx.stroke();
}
