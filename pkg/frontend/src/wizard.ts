// The repair-session wizard. Renders the whole panel from the current view
// on every change (the view is a pure function of the last response plus
// selection), wires events, and keeps exactly one mutation in flight.

import {
  applyChoice,
  autoRun,
  createSession,
  exportOntology,
  getCandidates,
  ApiError,
  type ErrorPayload,
} from './api.js';
import { diffAxioms, type DiffSegment } from './diff.js';
import {
  afterApply,
  afterAuto,
  axiomText,
  canApply,
  fromCreated,
  justificationLabels,
  selectAxiom,
  selectCandidate,
  withCandidates,
  withError,
  withExport,
  type SessionView,
} from './state.js';

const EXAMPLE_ONTOLOGY = `[refutable]
Prof SubClassOf some employed.Uni and some enrolled.Uni
some enrolled.Uni SubClassOf Studi
`;

export class Wizard {
  private view: SessionView | null = null;
  private busy = false;
  private setupError: string | null = null;

  constructor(private root: HTMLElement) {
    this.root.addEventListener('click', (event) => this.onClick(event));
    this.root.addEventListener('change', (event) => this.onChange(event));
  }

  start(): void {
    this.render();
  }

  // -- event handling --------------------------------------------------

  private onClick(event: Event): void {
    const target = event.target as HTMLElement;
    const action = target.dataset.action;
    if (!action || this.busy) return;
    if (action === 'create') void this.create();
    if (action === 'apply') void this.apply();
    if (action === 'auto') void this.auto();
    if (action === 'export') void this.download();
    if (action === 'restart') {
      this.view = null;
      this.render();
    }
    if (action === 'choose-axiom' && target.dataset.label) {
      void this.chooseAxiom(target.dataset.label);
    }
  }

  private onChange(event: Event): void {
    const target = event.target as HTMLInputElement;
    if (target.name === 'candidate' && this.view) {
      this.view = selectCandidate(this.view, target.value);
      this.render();
    }
  }

  private async guard(work: () => Promise<void>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.render();
    try {
      await work();
    } catch (err) {
      const payload: ErrorPayload =
        err instanceof ApiError
          ? err.payload
          : { error: 'network', detail: String(err) };
      if (this.view) {
        this.view = withError(this.view, payload);
      } else {
        this.setupError = `${payload.error}: ${payload.detail}`;
      }
    } finally {
      this.busy = false;
      this.render();
    }
  }

  private async create(): Promise<void> {
    await this.guard(async () => {
      const ontology = (this.root.querySelector('#ontology') as HTMLTextAreaElement).value;
      const query = (this.root.querySelector('#query') as HTMLInputElement).value;
      const algorithm = (this.root.querySelector('#algorithm') as HTMLSelectElement).value;
      const weakening = (this.root.querySelector('#weakening') as HTMLSelectElement).value;
      this.setupError = null;
      const summary = await createSession({ ontology, query, algorithm, weakening });
      this.view = fromCreated(summary);
    });
  }

  private async chooseAxiom(label: string): Promise<void> {
    if (!this.view) return;
    await this.guard(async () => {
      this.view = selectAxiom(this.view!, label);
      this.render();
      const listing = await getCandidates(this.view!.summary.id, label);
      this.view = withCandidates(this.view!, label, listing.candidates, listing.warning);
    });
  }

  private async apply(): Promise<void> {
    if (!this.view || !canApply(this.view)) return;
    const { summary, selectedAxiom, selectedCandidate } = this.view;
    await this.guard(async () => {
      const next = await applyChoice(summary.id, selectedAxiom!, selectedCandidate!);
      this.view = afterApply(this.view!, next);
    });
  }

  private async auto(): Promise<void> {
    if (!this.view) return;
    await this.guard(async () => {
      const next = await autoRun(this.view!.summary.id, 'max-strong');
      this.view = afterAuto(this.view!, next);
    });
  }

  private async download(): Promise<void> {
    if (!this.view) return;
    await this.guard(async () => {
      const text = await exportOntology(this.view!.summary.id);
      this.view = withExport(this.view!, text);
      const blob = new Blob([text], { type: 'text/plain' });
      const link = document.createElement('a');
      link.href = URL.createObjectURL(blob);
      link.download = 'repaired.el';
      link.click();
    });
  }

  // -- rendering --------------------------------------------------------

  private render(): void {
    this.root.innerHTML = this.view ? this.sessionHtml(this.view) : this.setupHtml();
  }

  private setupHtml(): string {
    return `
      <section class="panel" id="setup">
        <h2>Start a repair session</h2>
        <p>Paste an ontology, name the unwanted consequence, and step
        through weakenings until it is gone.</p>
        <label>Ontology
          <textarea id="ontology" rows="8">${escapeHtml(EXAMPLE_ONTOLOGY)}</textarea>
        </label>
        <label>Unwanted consequence
          <input id="query" value="Prof SubClassOf Studi" />
        </label>
        <div class="row">
          <label>Algorithm
            <select id="algorithm">
              <option value="modified" selected>modified gentle</option>
              <option value="gentle">gentle</option>
            </select>
          </label>
          <label>Weakening
            <select id="weakening">
              <option value="syn" selected>syn</option>
              <option value="sub">sub</option>
            </select>
          </label>
        </div>
        ${this.setupError ? `<div class="error" id="setup-error">${escapeHtml(this.setupError)}</div>` : ''}
        <button data-action="create" ${this.busy ? 'disabled' : ''}>Create session</button>
      </section>`;
  }

  private sessionHtml(view: SessionView): string {
    const s = view.summary;
    const parts = [
      `<section class="panel" id="session">`,
      `<header>
        <h2>Session ${escapeHtml(s.id)}</h2>
        <span class="status status-${s.status}" id="status">${s.status}</span>
        <span class="meta">${escapeHtml(s.algorithm)} / ${escapeHtml(s.weakening)},
          iteration ${s.iteration_count}</span>
      </header>`,
      `<p class="target">Unwanted: <code>${escapeHtml(s.target)}</code></p>`,
    ];
    if (view.stillEntailed) {
      parts.push(
        `<div class="banner" id="still-entailed">Consequence still entailed:
         another weakening step is needed.</div>`,
      );
    }
    if (view.error) {
      const just = view.error.justification
        ? ` (justification: ${view.error.justification.join(', ')})`
        : '';
      parts.push(
        `<div class="error" id="apply-error">${escapeHtml(view.error.error)}:
         ${escapeHtml(view.error.detail)}${escapeHtml(just)}</div>`,
      );
    }
    if (s.warning) {
      parts.push(`<div class="warning">${escapeHtml(s.warning)}</div>`);
    }
    parts.push(this.ontologyHtml(view));
    if (s.status === 'awaiting_choice') {
      parts.push(this.choicesHtml(view));
      parts.push(
        `<div class="row">
          <button data-action="apply" id="apply"
            ${canApply(view) && !this.busy ? '' : 'disabled'}>Apply replacement</button>
          <button data-action="auto" id="auto" ${this.busy ? 'disabled' : ''}>
            Auto-finish (max-strong)</button>
        </div>`,
      );
    }
    if (s.status === 'repaired') {
      parts.push(
        `<div class="done" id="repaired-box">
          <p>The consequence is gone. Download or copy the repaired ontology.</p>
          <button data-action="export" id="export">Export ontology</button>
          <textarea id="export-text" rows="6" readonly>${escapeHtml(view.exportText ?? '')}</textarea>
          <button data-action="restart">New session</button>
        </div>`,
      );
    }
    parts.push(`</section>`);
    return parts.join('\n');
  }

  private ontologyHtml(view: SessionView): string {
    const inJustification = justificationLabels(view);
    const rows = view.summary.ontology.refutable
      .map((a) => {
        const highlighted = inJustification.has(a.label) ? ' highlighted' : '';
        const choosable = view.summary.choosable.includes(a.label);
        const selected = view.selectedAxiom === a.label ? ' selected' : '';
        const button = choosable
          ? `<button data-action="choose-axiom" data-label="${a.label}"
               class="choose" ${this.busy ? 'disabled' : ''}>weaken</button>`
          : '';
        return `<li class="axiom${highlighted}${selected}" data-label="${a.label}">
          <span class="label">${a.label}</span>
          <code>${escapeHtml(a.text)}</code> ${button}</li>`;
      })
      .join('\n');
    const statics = view.summary.ontology.static
      .map(
        (a) => `<li class="axiom static"><span class="label">${a.label}</span>
          <code>${escapeHtml(a.text)}</code></li>`,
      )
      .join('\n');
    const justs = view.summary.justifications
      .map((j) => `<span class="just">{ ${j.join(', ')} }</span>`)
      .join(' ');
    return `
      <div class="ontology">
        <h3>Refutable axioms <small id="justifications">justifications: ${justs || 'none'}</small></h3>
        <ul id="refutable">${rows}</ul>
        ${statics ? `<h3>Static axioms</h3><ul>${statics}</ul>` : ''}
      </div>`;
  }

  private choicesHtml(view: SessionView): string {
    if (!view.selectedAxiom) {
      return `<p class="hint" id="hint">Pick an axiom from the justification to weaken.</p>`;
    }
    if (!view.candidates) {
      return `<p class="hint" id="hint">Loading candidates…</p>`;
    }
    const oldText = axiomText(view, view.selectedAxiom);
    const options = view.candidates
      .map((candidate, index) => {
        const checked = view.selectedCandidate === candidate.text ? 'checked' : '';
        const tag = candidate.is_tautology ? ' <em>(tautology: removes the axiom)</em>' : '';
        return `<li>
          <label>
            <input type="radio" name="candidate" value="${escapeHtml(candidate.text)}"
              id="candidate-${index}" ${checked} ${this.busy ? 'disabled' : ''} />
            <code>${escapeHtml(candidate.text)}</code>${tag}
          </label>
        </li>`;
      })
      .join('\n');
    const warning = view.candidatesWarning
      ? `<div class="warning">${escapeHtml(view.candidatesWarning)}</div>`
      : '';
    const diff = view.selectedCandidate
      ? this.diffHtml(oldText, view.selectedCandidate)
      : '';
    return `
      <div class="choices" id="choices">
        <h3>Candidates for ${view.selectedAxiom}</h3>
        ${warning}
        <ul id="candidates">${options}</ul>
        ${diff}
      </div>`;
  }

  private diffHtml(oldText: string, newText: string): string {
    const sides = diffAxioms(oldText, newText);
    const span = (seg: DiffSegment) =>
      `<span class="diff-${seg.kind}">${escapeHtml(seg.text)}</span>`;
    return `
      <div class="diff" id="diff">
        <div class="diff-col"><h4>current</h4><p>${sides.before.map(span).join(' ')}</p></div>
        <div class="diff-col"><h4>replacement</h4><p>${sides.after.map(span).join(' ')}</p></div>
      </div>`;
  }
}

export function escapeHtml(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;');
}
