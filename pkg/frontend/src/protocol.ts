// Wire protocol of the streaming backend. One websocket connection hosts
// one session; the client opens it, may change angles (which resets the
// trace on the server), and receives timed sample events.

export interface OpenMsg {
  type: "open";
  seed: number;
  theta1_deg: number;
  theta2_deg: number;
  rate: number;
}

export interface SetAnglesMsg {
  type: "set_angles";
  theta1_deg: number;
  theta2_deg: number;
}

export interface PauseMsg {
  type: "pause";
}

export interface ResumeMsg {
  type: "resume";
}

export type ClientMsg = OpenMsg | SetAnglesMsg | PauseMsg | ResumeMsg;

export interface SnapshotMsg {
  type: "snapshot";
  seed: number;
  scheme: string;
  theta1_deg: number;
  theta2_deg: number;
  rate: number;
  exact: number;
  step: number;
}

export interface SampleMsg {
  type: "sample";
  step: number;
  a: number;
  b: number;
  c: number;
  red: [number, number];
  green: [number, number];
  exact: number;
}

export interface ResetMsg {
  type: "reset";
  exact: number;
}

export interface ErrorMsg {
  type: "error";
  message: string;
}

export type ServerMsg = SnapshotMsg | SampleMsg | ResetMsg | ErrorMsg;

export function parseServerMsg(raw: string): ServerMsg {
  const msg = JSON.parse(raw);
  if (
    msg === null ||
    typeof msg !== "object" ||
    !["snapshot", "sample", "reset", "error"].includes(msg.type)
  ) {
    throw new Error(`unrecognized server message: ${raw.slice(0, 80)}`);
  }
  return msg as ServerMsg;
}
