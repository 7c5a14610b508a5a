// Thin client for the four session endpoints.

import type { JournalEntry, Rejection, SessionState } from "./types";

export type AnswerBody =
  | { token: string; valid: true }
  | { token: string; counterexample: { lower: string[]; upper: string[] } };

export type SubmitResult =
  | { ok: true; state: SessionState }
  | { ok: false; rejection: Rejection };

async function parseError(res: Response): Promise<Rejection> {
  try {
    const body = await res.json();
    if (body && typeof body.reason === "string") {
      return { reason: body.reason, detail: String(body.detail ?? "") };
    }
    return { reason: `http_${res.status}`, detail: JSON.stringify(body) };
  } catch {
    return { reason: `http_${res.status}`, detail: res.statusText };
  }
}

export async function createSession(
  baseUrl: string,
  schema: { attributes: string[]; background?: unknown[] },
  examples: { lower: string[]; upper: string[] }[] = [],
): Promise<SessionState> {
  const res = await fetch(`${baseUrl}/sessions`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ schema, examples }),
  });
  if (!res.ok) {
    const rejection = await parseError(res);
    throw new Error(`create failed: ${rejection.reason}: ${rejection.detail}`);
  }
  return res.json();
}

export async function getState(baseUrl: string, sessionId: string): Promise<SessionState> {
  const res = await fetch(`${baseUrl}/sessions/${sessionId}/state`);
  if (!res.ok) throw new Error(`state failed: ${res.status}`);
  return res.json();
}

export async function submitAnswer(
  baseUrl: string,
  sessionId: string,
  body: AnswerBody,
): Promise<SubmitResult> {
  const res = await fetch(`${baseUrl}/sessions/${sessionId}/answer`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  if (res.ok) return { ok: true, state: await res.json() };
  return { ok: false, rejection: await parseError(res) };
}

export async function getJournal(
  baseUrl: string,
  sessionId: string,
  offset = 0,
  limit = 100,
): Promise<{ total: number; offset: number; entries: JournalEntry[] }> {
  const res = await fetch(
    `${baseUrl}/sessions/${sessionId}/journal?offset=${offset}&limit=${limit}`,
  );
  if (!res.ok) throw new Error(`journal failed: ${res.status}`);
  return res.json();
}
