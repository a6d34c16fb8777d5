// Typed client for the elgr session API. All reasoning happens server-side;
// this module only moves JSON.

export interface AxiomRef {
  label: string;
  text: string;
}

export interface SessionSummary {
  id: string;
  status: 'awaiting_choice' | 'repaired' | 'failed';
  algorithm: string;
  weakening: string;
  target: string;
  ontology: { static: AxiomRef[]; refutable: AxiomRef[] };
  justifications: string[][];
  hitting_set: string[] | null;
  pending: string[];
  choosable: string[];
  iteration_count: number;
  warning: string | null;
}

export interface Candidate {
  text: string;
  is_tautology: boolean;
  satisfies_condition: boolean;
}

export interface CandidateListing {
  axiom: string;
  candidates: Candidate[];
  warning: string | null;
}

export interface ErrorPayload {
  error: string;
  detail: string;
  justification?: string[];
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public payload: ErrorPayload,
  ) {
    super(`${payload.error}: ${payload.detail}`);
  }
}

async function asError(response: Response): Promise<ApiError> {
  let payload: ErrorPayload;
  try {
    payload = (await response.json()) as ErrorPayload;
  } catch {
    payload = { error: 'unexpected', detail: response.statusText };
  }
  return new ApiError(response.status, payload);
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) throw await asError(response);
  return (await response.json()) as T;
}

async function postJson<T>(url: string, body: unknown): Promise<T> {
  const response = await fetch(url, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  });
  if (!response.ok) throw await asError(response);
  return (await response.json()) as T;
}

export interface CreateSessionInput {
  ontology: string;
  query: string;
  algorithm: string;
  weakening: string;
}

export function createSession(input: CreateSessionInput): Promise<SessionSummary> {
  return postJson('/api/sessions', input);
}

export function getState(id: string): Promise<SessionSummary> {
  return getJson(`/api/sessions/${id}`);
}

export function getJustifications(id: string): Promise<{ justifications: AxiomRef[][] }> {
  return getJson(`/api/sessions/${id}/justifications`);
}

export function getCandidates(
  id: string,
  axiom: string,
  mode?: 'one-step',
): Promise<CandidateListing> {
  const suffix = mode ? `&mode=${mode}` : '';
  return getJson(`/api/sessions/${id}/candidates?axiom=${encodeURIComponent(axiom)}${suffix}`);
}

export function applyChoice(
  id: string,
  axiom: string,
  replacement: string,
): Promise<SessionSummary> {
  return postJson(`/api/sessions/${id}/apply`, { axiom, replacement });
}

export function autoRun(id: string, strategy: string): Promise<SessionSummary> {
  return postJson(`/api/sessions/${id}/auto`, { strategy });
}

export async function exportOntology(id: string): Promise<string> {
  const response = await fetch(`/api/sessions/${id}/export`);
  if (!response.ok) throw await asError(response);
  return response.text();
}
