// Scripted walkthrough of the two-step assertion session, driving the real
// wizard DOM against the recorded service responses: create, weaken to
// B(a) (the consequence survives and the banner shows), weaken to the
// tautology, observe the repaired state, and export.

import { beforeEach, describe, expect, it, vi } from 'vitest';

import { Wizard } from '../src/wizard.js';
import walkthrough from './fixtures/two-step-walkthrough.json';

interface Exchange {
  step: string;
  method: string;
  url: string;
  status: number;
  text: boolean;
  body: unknown;
}

const ONTOLOGY = `[refutable]
B SubClassOf A
(A and B)(a)
`;

function makeFetch(exchanges: Exchange[]) {
  const remaining = [...exchanges];
  return vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = (init?.method ?? 'GET').toUpperCase();
    const index = remaining.findIndex(
      (e) => e.method === method && url.endsWith(e.url),
    );
    if (index < 0) {
      throw new Error(`unexpected request ${method} ${url}`);
    }
    const exchange = remaining.splice(index, 1)[0];
    if (exchange.text) {
      return new Response(String(exchange.body), {
        status: exchange.status,
        headers: { 'Content-Type': 'text/plain' },
      });
    }
    return new Response(JSON.stringify(exchange.body), {
      status: exchange.status,
      headers: { 'Content-Type': 'application/json' },
    });
  });
}

async function settle() {
  // let the wizard's async handlers and re-renders flush
  for (let i = 0; i < 8; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

function el<T extends HTMLElement>(selector: string): T {
  const node = document.querySelector(selector);
  if (!node) throw new Error(`missing element ${selector}`);
  return node as T;
}

function click(selector: string) {
  el(selector).dispatchEvent(new MouseEvent('click', { bubbles: true }));
}

function chooseCandidate(value: string) {
  const inputs = Array.from(
    document.querySelectorAll<HTMLInputElement>('input[name="candidate"]'),
  );
  const input = inputs.find((i) => i.value === value);
  if (!input) throw new Error(`no candidate ${value}`);
  input.checked = true;
  input.dispatchEvent(new Event('change', { bubbles: true }));
}

describe('session walkthrough', () => {
  beforeEach(() => {
    document.body.innerHTML = '<main id="app"></main>';
    vi.stubGlobal('fetch', makeFetch(walkthrough.exchanges as Exchange[]));
    if (typeof URL.createObjectURL !== 'function') {
      // happy-dom has no object URLs; the export path only needs a string
      (URL as unknown as Record<string, unknown>).createObjectURL = () => 'blob:fake';
    }
  });

  it('repairs the assertion ontology in two steps and exports', async () => {
    new Wizard(el('#app')).start();

    el<HTMLTextAreaElement>('#ontology').value = ONTOLOGY;
    el<HTMLInputElement>('#query').value = 'A(a)';
    click('[data-action="create"]');
    await settle();

    // session created: the single justification is highlighted
    expect(el('#status').textContent).toBe('awaiting_choice');
    expect(el('#justifications').textContent).toContain('r2');
    expect(document.querySelector('.axiom.highlighted[data-label="r2"]')).toBeTruthy();
    expect(document.querySelector('#still-entailed')).toBeNull();

    // first weakening: (A and B)(a) -> B(a)
    click('button[data-action="choose-axiom"][data-label="r2"]');
    await settle();
    const labels = Array.from(
      document.querySelectorAll('#candidates code'),
    ).map((n) => n.textContent);
    expect(labels).toEqual(['B(a)', 'Top(a)']);
    chooseCandidate('B(a)');
    await settle();
    expect(el('#diff').textContent).toContain('B(a)');
    click('#apply');
    await settle();

    // the consequence survived: banner shown, new justification listed
    expect(el('#status').textContent).toBe('awaiting_choice');
    expect(el('#still-entailed').textContent).toContain('still entailed');
    expect(el('#justifications').textContent).toContain('r1, r2');

    // second weakening: B(a) -> Top(a) repairs the ontology
    click('button[data-action="choose-axiom"][data-label="r2"]');
    await settle();
    chooseCandidate('Top(a)');
    await settle();
    click('#apply');
    await settle();

    expect(el('#status').textContent).toBe('repaired');
    expect(document.querySelector('#still-entailed')).toBeNull();
    expect(document.querySelector('#repaired-box')).toBeTruthy();

    // export: the recorded text round-trips through the textarea
    click('#export');
    await settle();
    const exported = el<HTMLTextAreaElement>('#export-text').value;
    expect(exported).toContain('[refutable]');
    expect(exported).toContain('B SubClassOf A');
    expect(exported).toContain('Top(a)');
    expect(exported).not.toContain('(A and B)(a)');
  });

  it('never displays a candidate the service did not return', async () => {
    new Wizard(el('#app')).start();
    el<HTMLTextAreaElement>('#ontology').value = ONTOLOGY;
    el<HTMLInputElement>('#query').value = 'A(a)';
    click('[data-action="create"]');
    await settle();
    click('button[data-action="choose-axiom"][data-label="r2"]');
    await settle();
    const served = new Set(
      (walkthrough.exchanges[1].body as { candidates: { text: string }[] }).candidates.map(
        (c) => c.text,
      ),
    );
    for (const input of document.querySelectorAll<HTMLInputElement>(
      'input[name="candidate"]',
    )) {
      expect(served.has(input.value)).toBe(true);
    }
  });
});
