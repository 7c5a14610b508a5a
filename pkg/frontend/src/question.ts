// View models for the console: everything rendered comes from the state
// snapshot, so a reload reconstructs the exact same view.

import type { SessionState, WireImplication } from "./types";

export function formatImplication(imp: WireImplication): string {
  const left = imp.premise.length ? imp.premise.join(" ") : "{}";
  if (imp.conclusion === null) return `${left} -> FALSE`;
  const premise = new Set(imp.premise);
  const added = imp.conclusion.filter((a) => !premise.has(a));
  const right = added.length ? added.join(" ") : "{}";
  return `${left} -> ${right}`;
}

export interface QuestionView {
  kind: "question";
  premiseChips: string[];
  conclusionChips: string[];
  token: string;
  number: number;
  priorQuestions: number;
  implicationCount: number;
  exampleCount: number;
  consistent: boolean;
  validated: string[];
}

export interface CompletionView {
  kind: "complete";
  validated: string[];
  exampleCount: number;
  questionsAnswered: number;
}

export type ConsoleView = QuestionView | CompletionView;

export function renderQuestion(state: SessionState): ConsoleView {
  const validated = state.implications.map(formatImplication);
  if (state.status === "complete" || state.question === null) {
    return {
      kind: "complete",
      validated,
      exampleCount: state.examples.length,
      questionsAnswered: state.questions_answered,
    };
  }
  const q = state.question;
  return {
    kind: "question",
    premiseChips: [...q.premise],
    conclusionChips: [...(q.asks ?? [])],
    token: q.token,
    number: q.number,
    priorQuestions: state.questions_answered,
    implicationCount: state.implications.length,
    exampleCount: state.examples.length,
    consistent: state.consistent,
    validated,
  };
}
