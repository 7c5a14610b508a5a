// Counter-example drafting with a three-state control per attribute.
//
// Each attribute is in-lower, in-upper-only, or outside. The lower bound is
// always a subset of the upper bound by construction, and the question's
// premise attributes are locked to in-lower, so a draft that fails the
// basic refutation shape cannot even be expressed. The server remains the
// authority; these checks only catch mistakes before the round trip.

import type { WireQuestion } from "./types";

export type AttrState = "in-lower" | "in-upper-only" | "outside";

export interface Draft {
  attributes: string[];
  states: Record<string, AttrState>;
  premise: string[];
  asks: string[];
}

export interface SetResult {
  ok: boolean;
  reason?: string;
}

export function newDraft(question: WireQuestion, attributes: string[]): Draft {
  const premise = new Set(question.premise);
  const asks = new Set(question.asks ?? []);
  const states: Record<string, AttrState> = {};
  for (const attr of attributes) {
    if (premise.has(attr)) {
      states[attr] = "in-lower"; // locked: a counter-example must contain the premise
    } else if (asks.has(attr)) {
      states[attr] = "outside"; // start as a refutation candidate
    } else {
      states[attr] = "in-upper-only"; // undecided
    }
  }
  return {
    attributes: [...attributes],
    states,
    premise: [...question.premise],
    asks: [...(question.asks ?? [])],
  };
}

export function setAttribute(draft: Draft, attr: string, state: AttrState): SetResult {
  if (!(attr in draft.states)) {
    return { ok: false, reason: `unknown attribute ${attr}` };
  }
  if (draft.premise.includes(attr) && state !== "in-lower") {
    return { ok: false, reason: "premise attributes stay in the lower bound" };
  }
  draft.states[attr] = state;
  return { ok: true };
}

export function cycleAttribute(draft: Draft, attr: string): SetResult {
  const order: AttrState[] = ["in-lower", "in-upper-only", "outside"];
  const next = order[(order.indexOf(draft.states[attr]) + 1) % order.length];
  return setAttribute(draft, attr, next);
}

export function toCounterexample(draft: Draft): { lower: string[]; upper: string[] } {
  const lower = draft.attributes.filter((a) => draft.states[a] === "in-lower");
  const upper = draft.attributes.filter((a) => draft.states[a] !== "outside");
  return { lower, upper };
}

export interface Preflight {
  ok: boolean;
  warnings: string[];
}

// Warn before sending a draft that cannot refute the question: every
// conclusion attribute would sit inside the upper bound.
export function preflight(draft: Draft): Preflight {
  const warnings: string[] = [];
  if (draft.asks.length > 0) {
    const allInside = draft.asks.every((a) => draft.states[a] !== "outside");
    if (allInside) {
      warnings.push(
        "every conclusion attribute is inside the upper bound; this draft does not refute the question",
      );
    }
  }
  return { ok: warnings.length === 0, warnings };
}
