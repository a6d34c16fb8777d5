// Session view state. Every value here is a pure function of the last
// service response plus local selection, so a session can be replayed from
// recorded responses and always renders identically.

import type { Candidate, ErrorPayload, SessionSummary } from './api.js';

export interface SessionView {
  summary: SessionSummary;
  selectedAxiom: string | null;
  candidates: Candidate[] | null;
  candidatesWarning: string | null;
  selectedCandidate: string | null;
  stillEntailed: boolean;
  exportText: string | null;
  error: ErrorPayload | null;
}

export function fromCreated(summary: SessionSummary): SessionView {
  return {
    summary,
    selectedAxiom: null,
    candidates: null,
    candidatesWarning: null,
    selectedCandidate: null,
    stillEntailed: false,
    exportText: null,
    error: null,
  };
}

export function afterApply(_view: SessionView, summary: SessionSummary): SessionView {
  // selection resets after each apply; the banner shows when the target
  // survived the replacement
  return {
    summary,
    selectedAxiom: null,
    candidates: null,
    candidatesWarning: null,
    selectedCandidate: null,
    stillEntailed: summary.status === 'awaiting_choice',
    exportText: null,
    error: null,
  };
}

export function afterAuto(view: SessionView, summary: SessionSummary): SessionView {
  return { ...afterApply(view, summary), stillEntailed: false };
}

export function withExport(view: SessionView, text: string): SessionView {
  return { ...view, exportText: text };
}

export function selectAxiom(view: SessionView, label: string): SessionView {
  if (!view.summary.choosable.includes(label)) return view;
  return {
    ...view,
    selectedAxiom: label,
    candidates: null,
    candidatesWarning: null,
    selectedCandidate: null,
    error: null,
  };
}

export function withCandidates(
  view: SessionView,
  axiom: string,
  candidates: Candidate[],
  warning: string | null,
): SessionView {
  if (view.selectedAxiom !== axiom) return view;
  return { ...view, candidates, candidatesWarning: warning, selectedCandidate: null };
}

export function selectCandidate(view: SessionView, text: string): SessionView {
  if (!view.candidates?.some((c) => c.text === text)) return view;
  return { ...view, selectedCandidate: text };
}

export function withError(view: SessionView, error: ErrorPayload): SessionView {
  return { ...view, error };
}

export function justificationLabels(view: SessionView): Set<string> {
  const labels = new Set<string>();
  for (const just of view.summary.justifications) {
    for (const label of just) labels.add(label);
  }
  return labels;
}

export function axiomText(view: SessionView, label: string): string {
  const hit = view.summary.ontology.refutable.find((a) => a.label === label);
  return hit ? hit.text : '';
}

export function canApply(view: SessionView): boolean {
  return (
    view.summary.status === 'awaiting_choice' &&
    view.selectedAxiom !== null &&
    view.selectedCandidate !== null
  );
}
