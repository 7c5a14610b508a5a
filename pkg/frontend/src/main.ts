// DOM glue for the console. All state lives on the server; a reload
// rebuilds the view from the state and journal endpoints alone.

import { createSession, getJournal, submitAnswer } from "./api";
import type { Draft } from "./draft";
import { cycleAttribute, newDraft, preflight, toCounterexample } from "./draft";
import { renderQuestion } from "./question";
import { filterEntries, paginate } from "./journal";
import type { JournalEntry, SessionState } from "./types";
import { getState } from "./api";

const PER_PAGE = 15;

interface Ui {
  baseUrl: string;
  sessionId: string | null;
  state: SessionState | null;
  draft: Draft | null;
  journalPage: number;
  actorFilter: string;
  actionFilter: string;
  notice: string;
}

const ui: Ui = {
  baseUrl: new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8000",
  sessionId: new URLSearchParams(location.search).get("session"),
  state: null,
  draft: null,
  journalPage: 0,
  actorFilter: "",
  actionFilter: "",
  notice: "",
};

function el(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element ${id}`);
  return found;
}

function chip(text: string, cls: string): string {
  return `<span class="chip ${cls}">${text}</span>`;
}

async function refresh(): Promise<void> {
  if (!ui.sessionId) return;
  ui.state = await getState(ui.baseUrl, ui.sessionId);
  if (ui.state.question) {
    ui.draft = newDraft(ui.state.question, ui.state.schema.attributes);
  } else {
    ui.draft = null;
  }
  await renderAll();
}

function renderQuestionPane(): void {
  const pane = el("question");
  if (!ui.state) {
    pane.innerHTML = "<p>No session loaded. Create one below.</p>";
    return;
  }
  const view = renderQuestion(ui.state);
  if (view.kind === "complete") {
    pane.innerHTML = `
      <h2>exploration complete</h2>
      <p>${view.questionsAnswered} questions answered, ${view.exampleCount} examples kept.</p>
      <h3>validated implications</h3>
      <ul>${view.validated.map((s) => `<li><code>${s}</code></li>`).join("") || "<li>(none)</li>"}</ul>`;
    return;
  }
  const premise = view.premiseChips.map((a) => chip(a, "premise")).join(" ") || chip("{}", "premise");
  const conclusion = view.conclusionChips.map((a) => chip(a, "conclusion")).join(" ");
  pane.innerHTML = `
    <h2>question ${view.number}</h2>
    <p class="q">${premise} <span class="arrow">-&gt;</span> ${conclusion}</p>
    <p>${view.priorQuestions} prior questions, ${view.implicationCount} implications,
       ${view.exampleCount} examples, consistent: ${view.consistent}</p>
    <button id="confirm">this always holds</button>
    <div id="draft"></div>
    <p id="notice" class="notice">${ui.notice}</p>
    <h3>validated so far</h3>
    <ul>${view.validated.map((s) => `<li><code>${s}</code></li>`).join("") || "<li>(none)</li>"}</ul>`;
  el("confirm").onclick = () => void answerValid();
  renderDraftPane();
}

function renderDraftPane(): void {
  const pane = document.getElementById("draft");
  if (!pane || !ui.draft) return;
  const rows = ui.draft.attributes
    .map((attr) => {
      const state = ui.draft!.states[attr];
      const locked = ui.draft!.premise.includes(attr);
      return `<tr>
        <td><code>${attr}</code></td>
        <td>${state}${locked ? " (premise, locked)" : ""}</td>
        <td>${locked ? "" : `<button data-attr="${attr}">cycle</button>`}</td>
      </tr>`;
    })
    .join("");
  const flight = preflight(ui.draft);
  pane.innerHTML = `
    <h3>partial counter-example</h3>
    <table><tr><th>attribute</th><th>state</th><th></th></tr>${rows}</table>
    ${flight.warnings.map((w) => `<p class="warn">${w}</p>`).join("")}
    <button id="send-counterexample">submit counter-example</button>`;
  for (const button of pane.querySelectorAll("button[data-attr]")) {
    (button as HTMLButtonElement).onclick = () => {
      cycleAttribute(ui.draft!, (button as HTMLButtonElement).dataset.attr!);
      renderDraftPane();
    };
  }
  const send = document.getElementById("send-counterexample") as HTMLButtonElement;
  send.onclick = () => void answerCounterexample();
}

async function answerValid(): Promise<void> {
  if (!ui.state?.question || !ui.sessionId) return;
  const result = await submitAnswer(ui.baseUrl, ui.sessionId, {
    token: ui.state.question.token,
    valid: true,
  });
  if (result.ok) {
    ui.notice = "";
    ui.state = result.state;
    ui.draft = result.state.question ? newDraft(result.state.question, result.state.schema.attributes) : null;
  } else {
    ui.notice = `${result.rejection.reason}: ${result.rejection.detail}`;
    if (result.rejection.reason === "stale_token") await refresh();
  }
  await renderAll();
}

async function answerCounterexample(): Promise<void> {
  if (!ui.state?.question || !ui.sessionId || !ui.draft) return;
  const result = await submitAnswer(ui.baseUrl, ui.sessionId, {
    token: ui.state.question.token,
    counterexample: toCounterexample(ui.draft),
  });
  if (result.ok) {
    ui.notice = "";
    ui.state = result.state;
    ui.draft = result.state.question ? newDraft(result.state.question, result.state.schema.attributes) : null;
  } else {
    ui.notice = `${result.rejection.reason}: ${result.rejection.detail}`;
    if (result.rejection.reason === "stale_token") await refresh();
  }
  await renderAll();
}

async function renderJournalPane(): Promise<void> {
  const pane = el("journal");
  if (!ui.sessionId) {
    pane.innerHTML = "";
    return;
  }
  const { entries } = await getJournal(ui.baseUrl, ui.sessionId, 0, 1000);
  const filter = {
    actor: ui.actorFilter || undefined,
    action: ui.actionFilter || undefined,
  };
  const filtered = filterEntries(entries as JournalEntry[], filter);
  const page = paginate(filtered, ui.journalPage, PER_PAGE);
  const rows = page.items
    .map(
      (e) =>
        `<tr id="seq-${e.seq}"><td>${e.seq}</td><td>${e.actor}</td><td>${e.action}</td>
         <td><code>${JSON.stringify(e.payload)}</code></td><td>${e.note}</td></tr>`,
    )
    .join("");
  pane.innerHTML = `
    <h2>journal</h2>
    <label>actor <select id="actor-filter">
      <option value="">all</option>
      ${["init", "expert", "engine", "normalizer"]
        .map((a) => `<option ${a === ui.actorFilter ? "selected" : ""}>${a}</option>`)
        .join("")}
    </select></label>
    <label>action <select id="action-filter">
      <option value="">all</option>
      ${["add_implication", "add_example", "tighten_example", "drop_example", "drop_implication"]
        .map((a) => `<option ${a === ui.actionFilter ? "selected" : ""}>${a}</option>`)
        .join("")}
    </select></label>
    <table><tr><th>seq</th><th>actor</th><th>action</th><th>payload</th><th>note</th></tr>${rows}</table>
    <p>page ${page.page + 1} of ${page.pages} (${page.total} entries)
      <button id="prev">prev</button><button id="next">next</button></p>`;
  (el("actor-filter") as HTMLSelectElement).onchange = (ev) => {
    ui.actorFilter = (ev.target as HTMLSelectElement).value;
    ui.journalPage = 0;
    void renderJournalPane();
  };
  (el("action-filter") as HTMLSelectElement).onchange = (ev) => {
    ui.actionFilter = (ev.target as HTMLSelectElement).value;
    ui.journalPage = 0;
    void renderJournalPane();
  };
  (el("prev") as HTMLButtonElement).onclick = () => {
    ui.journalPage = Math.max(0, ui.journalPage - 1);
    void renderJournalPane();
  };
  (el("next") as HTMLButtonElement).onclick = () => {
    ui.journalPage = Math.min(page.pages - 1, ui.journalPage + 1);
    void renderJournalPane();
  };
}

async function renderAll(): Promise<void> {
  renderQuestionPane();
  await renderJournalPane();
}

function wireCreateForm(): void {
  const form = el("create-form") as HTMLFormElement;
  form.onsubmit = (ev) => {
    ev.preventDefault();
    const attributes = (el("attributes-input") as HTMLInputElement).value
      .split(/[\s,]+/)
      .filter(Boolean);
    void (async () => {
      const state = await createSession(ui.baseUrl, { attributes, background: [] });
      ui.sessionId = state.session_id;
      ui.state = state;
      ui.draft = state.question ? newDraft(state.question, state.schema.attributes) : null;
      const params = new URLSearchParams(location.search);
      params.set("session", state.session_id);
      history.replaceState(null, "", `?${params}`);
      await renderAll();
    })();
  };
}

window.addEventListener("DOMContentLoaded", () => {
  wireCreateForm();
  void refresh();
});
