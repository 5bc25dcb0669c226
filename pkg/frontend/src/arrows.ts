// Arrow panel: the latest pair of outcomes drawn as a red and a green arrow
// from the origin. Endpoints arrive from the server and are used verbatim;
// the client only maps model coordinates (|endpoint| <= 0.5) to pixels.

export const WORLD_HALF = 0.6;

export function toPixel(point: [number, number], size: number): [number, number] {
  const scale = size / (2 * WORLD_HALF);
  // canvas y grows downward, model y grows upward
  return [size / 2 + point[0] * scale, size / 2 - point[1] * scale];
}

function drawArrow(
  ctx: CanvasRenderingContext2D,
  tip: [number, number],
  size: number,
  color: string,
): void {
  const [x, y] = toPixel(tip, size);
  const [ox, oy] = [size / 2, size / 2];
  ctx.strokeStyle = color;
  ctx.fillStyle = color;
  ctx.lineWidth = 3;
  ctx.beginPath();
  ctx.moveTo(ox, oy);
  ctx.lineTo(x, y);
  ctx.stroke();

  const angle = Math.atan2(y - oy, x - ox);
  const headLen = 10;
  ctx.beginPath();
  ctx.moveTo(x, y);
  ctx.lineTo(x - headLen * Math.cos(angle - 0.4), y - headLen * Math.sin(angle - 0.4));
  ctx.lineTo(x - headLen * Math.cos(angle + 0.4), y - headLen * Math.sin(angle + 0.4));
  ctx.closePath();
  ctx.fill();
}

export function drawArrows(
  ctx: CanvasRenderingContext2D,
  red: [number, number] | null,
  green: [number, number] | null,
  size: number,
): void {
  ctx.clearRect(0, 0, size, size);
  ctx.strokeStyle = "#ddd";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.arc(size / 2, size / 2, (0.5 / (2 * WORLD_HALF)) * size * 2, 0, 2 * Math.PI);
  ctx.stroke();
  if (red !== null) {
    drawArrow(ctx, red, size, "#d02020");
  }
  if (green !== null) {
    drawArrow(ctx, green, size, "#1a8f1a");
  }
}
