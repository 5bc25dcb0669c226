// View state reducer. All physics values come from the server; the client
// only accumulates them for display. The chart window holds at most the 200
// most recent running-correlation values and is wiped on every reset event,
// so values produced under previous angle settings never linger.

import type { SampleMsg, ServerMsg } from "./protocol.js";

export const WINDOW = 200;

export interface ViewState {
  connected: boolean;
  opened: boolean;
  theta1Deg: number;
  theta2Deg: number;
  exact: number;
  cWindow: number[];
  latest: SampleMsg | null;
  error: string | null;
}

export function initialState(): ViewState {
  return {
    connected: false,
    opened: false,
    theta1Deg: 0,
    theta2Deg: 0,
    exact: -1,
    cWindow: [],
    latest: null,
    error: null,
  };
}

export function applyServerMsg(state: ViewState, msg: ServerMsg): ViewState {
  switch (msg.type) {
    case "snapshot":
      return {
        ...state,
        opened: true,
        theta1Deg: msg.theta1_deg,
        theta2Deg: msg.theta2_deg,
        exact: msg.exact,
        cWindow: [],
        latest: null,
        error: null,
      };
    case "sample": {
      const cWindow = state.cWindow.concat(msg.c);
      if (cWindow.length > WINDOW) {
        cWindow.splice(0, cWindow.length - WINDOW);
      }
      return { ...state, cWindow, latest: msg, exact: msg.exact };
    }
    case "reset":
      // the server restarted the repetition: drop everything measured
      // under the old angles, including the arrows
      return { ...state, exact: msg.exact, cWindow: [], latest: null };
    case "error":
      return { ...state, error: msg.message };
  }
}

export function setConnected(state: ViewState, connected: boolean): ViewState {
  return connected
    ? { ...state, connected }
    : { ...state, connected, opened: false };
}

export function setAnglesLocal(state: ViewState, theta1Deg: number, theta2Deg: number): ViewState {
  return { ...state, theta1Deg, theta2Deg };
}
