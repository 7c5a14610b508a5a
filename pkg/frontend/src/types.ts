// Wire types for the session service (attribute names everywhere).

export interface WireImplication {
  premise: string[];
  conclusion: string[] | null;
}

export interface WireExample {
  lower: string[];
  upper: string[];
}

export interface WireQuestion {
  premise: string[];
  conclusion: string[] | null;
  asks: string[] | null;
  token: string;
  number: number;
}

export interface JournalEntry {
  seq: number;
  actor: string;
  action: string;
  payload: Record<string, unknown>;
  note: string;
}

export interface SessionState {
  session_id: string;
  status: "awaiting_answer" | "complete";
  consistent: boolean;
  question: WireQuestion | null;
  implications: WireImplication[];
  examples: WireExample[];
  journal_length: number;
  journal_tail: JournalEntry[];
  questions_answered: number;
  schema: { attributes: string[]; background: unknown[] };
}

export interface Rejection {
  reason: "condition_i" | "condition_iii" | "consistency" | "stale_token" | string;
  detail: string;
}
