// Journal browsing: pagination, actor/action filters, deep links by seq.

import type { JournalEntry } from "./types";

export interface JournalFilter {
  actor?: string;
  action?: string;
}

export function filterEntries(entries: JournalEntry[], filter: JournalFilter): JournalEntry[] {
  return entries.filter(
    (e) =>
      (filter.actor === undefined || e.actor === filter.actor) &&
      (filter.action === undefined || e.action === filter.action),
  );
}

export interface Page<T> {
  items: T[];
  page: number;
  pages: number;
  total: number;
}

export function paginate<T>(items: T[], page: number, perPage: number): Page<T> {
  const pages = Math.max(1, Math.ceil(items.length / perPage));
  const current = Math.min(Math.max(page, 0), pages - 1);
  return {
    items: items.slice(current * perPage, (current + 1) * perPage),
    page: current,
    pages,
    total: items.length,
  };
}

// Which page shows the entry with this sequence number (for deep links)?
export function pageOfSeq(entries: JournalEntry[], seq: number, perPage: number): number | null {
  const index = entries.findIndex((e) => e.seq === seq);
  if (index < 0) return null;
  return Math.floor(index / perPage);
}
