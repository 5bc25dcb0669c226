// Trailing-edge rate limiter for dial input. Calls pushed faster than the
// configured interval are coalesced: the most recent one fires when the
// interval elapses, so the server always ends up at the final dial position
// while seeing at most 1000/minIntervalMs messages per second.

export class RateLimiter {
  private lastFired = Number.NEGATIVE_INFINITY;
  private pending: (() => void) | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly minIntervalMs: number,
    private readonly now: () => number = () => Date.now(),
  ) {}

  push(fn: () => void): void {
    const wait = this.lastFired + this.minIntervalMs - this.now();
    if (wait <= 0 && this.timer === null) {
      this.lastFired = this.now();
      fn();
      return;
    }
    this.pending = fn;
    if (this.timer === null) {
      this.timer = setTimeout(() => this.firePending(), Math.max(wait, 0));
    }
  }

  private firePending(): void {
    this.timer = null;
    const fn = this.pending;
    this.pending = null;
    if (fn !== null) {
      this.lastFired = this.now();
      fn();
    }
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.pending = null;
  }
}
