// DOM view: collapsible refinement outline, move palette, completeness
// dialog, knowledge-base and goal panels, export preview.  The view never
// rewrites formulas itself; every string comes from the server.

import type { Workbench, WorkbenchState } from './state.js';
import type { GoalDoc, MacroDoc, MoveDoc, TreeNodeDoc } from './types.js';

const CASE_LABELS: Record<number, string> = {
  0: 'Formalize',
  1: 'Domain knowledge',
  2: 'Goal model',
};

export function mount(root: HTMLElement, bench: Workbench): void {
  bench.subscribe((state) => render(root, bench, state));
  render(root, bench, bench.state);
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === 'class') node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function formula(text: string, macros: MacroDoc[]): HTMLElement {
  const span = el('span', { class: 'formula' }, text);
  const used = macros.filter((m) => new RegExp(`\\b${m.name}\\b`).test(text));
  if (used.length) {
    span.title = used
      .map((m) => `${m.name}${m.params.length ? `(${m.params.join(', ')})` : ''} := ${m.body}`)
      .join('\n');
    span.classList.add('has-macro');
  }
  return span;
}

function render(root: HTMLElement, bench: Workbench, state: WorkbenchState): void {
  root.textContent = '';
  if (!state.session) {
    root.append(el('p', { class: 'notice' }, 'Loading session…'));
    return;
  }
  const macros = state.session.kb.macros;

  const header = el(
    'header',
    {},
    el('h1', {}, `Tenet: ${state.session.tenet}`),
    el(
      'div',
      { class: 'header-meta' },
      el('code', { class: 'hash', title: state.session.hash }, state.session.hash.slice(0, 12)),
      button('Export properties', () => void bench.loadExport('props')),
      button('Export report', () => void bench.loadExport('report')),
    ),
  );

  const notices = el('div', { class: 'notices' });
  if (state.notice) {
    notices.append(el('div', { class: state.conflict ? 'notice conflict' : 'notice error' }, state.notice));
  }

  const layout = el(
    'div',
    { class: 'layout' },
    el('section', { class: 'pane tree-pane' }, el('h2', {}, 'Refinement tree'), renderTree(bench, state, macros)),
    el('section', { class: 'pane side-pane' }, ...renderSide(bench, state)),
    el(
      'aside',
      { class: 'pane kb-pane' },
      renderKb(state, macros),
      renderGoals(state),
    ),
  );

  root.append(header, notices, layout);
  const dialog = renderCompleteness(bench, state, macros);
  if (dialog) root.append(dialog);
}

function button(label: string, onClick: () => void, cls = ''): HTMLButtonElement {
  const node = el('button', cls ? { class: cls } : {}, label);
  node.addEventListener('click', onClick);
  return node;
}

// -- refinement outline ------------------------------------------------------

function renderTree(bench: Workbench, state: WorkbenchState, macros: MacroDoc[]): HTMLElement {
  const rootNode = state.order.length ? state.nodes.get(state.order[0]!) : undefined;
  if (!rootNode) return el('p', {}, 'empty tree');
  return el('ul', { class: 'outline' }, renderNode(bench, state, rootNode, macros));
}

function renderNode(
  bench: Workbench,
  state: WorkbenchState,
  node: TreeNodeDoc,
  macros: MacroDoc[],
): HTMLElement {
  const row = el('div', {
    class: `node-row${state.selected === node.id ? ' selected' : ''}`,
    'data-node': node.id,
  });
  if (node.children.length) {
    const collapsed = state.collapsed.has(node.id);
    row.append(button(collapsed ? '▸' : '▾', () => bench.toggleCollapsed(node.id), 'twist'));
  } else {
    row.append(el('span', { class: 'twist' }, node.status === 'formalized' ? '✓' : '·'));
  }
  row.append(el('span', { class: 'node-id' }, node.id), formula(node.expr, macros));
  if (node.annotation) {
    row.append(el('span', { class: `badge badge-${badgeKind(node.annotation)}` }, node.annotation));
  }
  if (node.completeness?.answer === 'incomplete') {
    row.append(el('span', { class: 'badge badge-risk', title: node.completeness.rationale }, '⚠ incomplete'));
  }
  row.addEventListener('click', (event) => {
    if ((event.target as HTMLElement).classList.contains('twist')) return;
    void bench.select(node.id);
  });

  const item = el('li', {}, row);
  if (node.children.length && !state.collapsed.has(node.id)) {
    const list = el('ul', { class: 'outline' });
    for (const childId of node.children) {
      const child = state.nodes.get(childId);
      if (child) list.append(renderNode(bench, state, child, macros));
    }
    item.append(list);
  }
  return item;
}

function badgeKind(annotation: string): string {
  if (annotation === 'g') return 'goal';
  if (annotation === 'f') return 'formal';
  return 'rule';
}

// -- right-hand pane -----------------------------------------------------------

function renderSide(bench: Workbench, state: WorkbenchState): HTMLElement[] {
  const parts: HTMLElement[] = [];
  const selected = state.selected ? state.nodes.get(state.selected) : undefined;
  const macros = state.session?.kb.macros ?? [];
  if (!selected) {
    parts.push(el('p', { class: 'hint' }, 'Select a node to see its moves.'));
  } else {
    parts.push(
      el('h2', {}, `Node ${selected.id}`),
      el('p', {}, formula(selected.expr, macros)),
    );
    if (selected.children.length) {
      parts.push(el('p', { class: 'hint' }, `Already refined (${selected.annotation ?? 'no tag'}).`));
    } else if (selected.status === 'formalized') {
      parts.push(el('p', { class: 'hint' }, 'Formalized leaf.'));
    } else if (state.palette) {
      parts.push(renderPalette(bench, state, macros));
    }
  }
  if (state.exportPreview) {
    parts.push(
      el('h2', {}, state.exportPreview.format === 'props' ? 'Properties' : 'Report'),
      el('pre', { class: 'export-preview' }, state.exportPreview.text),
    );
  }
  return parts;
}

function renderPalette(bench: Workbench, state: WorkbenchState, macros: MacroDoc[]): HTMLElement {
  const palette = state.palette!;
  const container = el('div', { class: 'palette' });
  const byCase = new Map<number, MoveDoc[]>();
  for (const move of palette.moves) {
    const bucket = byCase.get(move.case) ?? [];
    bucket.push(move);
    byCase.set(move.case, bucket);
  }
  for (const caseId of [0, 1, 2]) {
    const bucket = byCase.get(caseId);
    if (!bucket) continue;
    container.append(el('h3', {}, CASE_LABELS[caseId]!));
    for (const move of bucket) {
      const entry = el(
        'div',
        { class: 'move' },
        button('apply', () => void bench.applyMove(move.index), 'apply'),
        el('span', { class: `badge badge-${badgeKind(move.annotation)}` }, move.source),
      );
      const results = el('div', { class: 'move-children' });
      for (const child of move.children) results.append(formula(child, macros));
      entry.append(results);
      container.append(entry);
    }
  }
  if (palette.formalizable) {
    container.append(
      el('h3', {}, 'Formalize'),
      el(
        'div',
        { class: 'move' },
        button('mark formalized', () => void bench.formalizeSelected(), 'apply'),
        el('span', { class: 'hint' }, 'node is fully formal'),
      ),
    );
  }
  if (palette.needsExpansion) {
    container.append(renderExpansionForms(bench, state));
  }
  return container;
}

function renderExpansionForms(bench: Workbench, state: WorkbenchState): HTMLElement {
  const goalRoot = state.session?.goalRoots[0] ?? '';
  const wrap = el('div', { class: 'expansion' });
  wrap.append(
    el('h3', {}, 'Nothing applies'),
    el('p', { class: 'hint' }, 'Add a missing goal (3a) or elicit domain knowledge (3b).'),
  );

  const parent = input('parent goal', goalRoot);
  const goalId = input('new goal id', '');
  const label = input('goal label, e.g. !"harm"', '');
  const adopt = input('adopt children (comma separated)', '');
  const strengthened = el('input', { type: 'checkbox', checked: '' }) as HTMLInputElement;
  const phantomForm = el(
    'form',
    { class: 'stack' },
    el('h4', {}, 'Add goal'),
    parent,
    goalId,
    label,
    adopt,
    el('label', { class: 'check' }, strengthened, ' strengthened'),
    el('button', { type: 'submit' }, 'insert phantom goal'),
  );
  phantomForm.addEventListener('submit', (event) => {
    event.preventDefault();
    void bench.insertPhantom(
      parent.value.trim(),
      goalId.value.trim(),
      label.value.trim(),
      'and',
      strengthened.checked,
      adopt.value.split(',').map((s) => s.trim()).filter(Boolean),
    );
  });

  const ruleLine = input('rule, e.g. d10: "a" => "b"', '');
  const ruleForm = el(
    'form',
    { class: 'stack' },
    el('h4', {}, 'Add rule'),
    ruleLine,
    el('button', { type: 'submit' }, 'add rule'),
  );
  ruleForm.addEventListener('submit', (event) => {
    event.preventDefault();
    void bench.addRule(ruleLine.value);
  });

  wrap.append(phantomForm, ruleForm);
  return wrap;
}

function input(placeholder: string, value: string): HTMLInputElement {
  const node = el('input', { type: 'text', placeholder }) as HTMLInputElement;
  node.value = value;
  return node;
}

// -- completeness dialog ---------------------------------------------------------

function renderCompleteness(
  bench: Workbench,
  state: WorkbenchState,
  macros: MacroDoc[],
): HTMLElement | null {
  const prompt = state.prompts[0];
  if (!prompt) return null;
  const rationale = el('textarea', {
    placeholder: 'Why is this exhaustive (or what is missing)?',
  }) as HTMLTextAreaElement;
  const completeChoice = el('input', { type: 'radio', name: 'verdict', value: 'complete' }) as HTMLInputElement;
  const incompleteChoice = el('input', { type: 'radio', name: 'verdict', value: 'incomplete' }) as HTMLInputElement;
  completeChoice.checked = true;

  const note = prompt.preAnswered
    ? el('p', { class: 'hint' }, 'Definition-based step: complete by construction.')
    : el('p', {}, 'If all of these refinements fail to hold, does the node also fail to hold?');

  const dialog = el(
    'div',
    { class: 'dialog', 'data-dialog': 'completeness' },
    el('h3', {}, `Is the refinement of ${prompt.nodeId} complete?`),
    el('p', {}, formula(prompt.expr, macros)),
    note,
    el('label', { class: 'check' }, completeChoice, ' complete'),
    el('label', { class: 'check' }, incompleteChoice, ' incomplete'),
    rationale,
    el(
      'div',
      { class: 'dialog-buttons' },
      button('record', () => {
        const answer = incompleteChoice.checked ? 'incomplete' : 'complete';
        void bench.answerCompleteness(answer, rationale.value);
      }),
      button('skip', () => bench.dismissCompleteness()),
    ),
  );
  return dialog;
}

// -- side panels --------------------------------------------------------------------

function renderKb(state: WorkbenchState, macros: MacroDoc[]): HTMLElement {
  const kb = state.session!.kb;
  const rules = el('ul', { class: 'panel-list' });
  for (const rule of kb.rules) {
    rules.append(
      el(
        'li',
        {},
        el('span', { class: 'badge badge-rule' }, rule.id),
        formula(`${rule.lhs} ${rule.kind === 'implication' ? '=>' : '=='} ${rule.rhs}`, macros),
      ),
    );
  }
  const macroList = el('ul', { class: 'panel-list' });
  for (const macro of kb.macros) {
    macroList.append(
      el('li', {}, formula(`${macro.name}${macro.params.length ? `(${macro.params.join(', ')})` : ''} := ${macro.body}`, [])),
    );
  }
  const forms = el('ul', { class: 'panel-list' });
  for (const entry of kb.formalizations) {
    const guard = entry.guard.length
      ? ` where ${entry.guard.map(([v, cs]) => `${v} in {${cs.join(', ')}}`).join(', ')}`
      : '';
    forms.append(el('li', {}, formula(`${entry.pattern} ~> ${entry.template}${guard}`, macros)));
  }
  return el(
    'div',
    { class: 'panel' },
    el('h2', {}, 'Domain knowledge'),
    rules,
    el('h3', {}, 'Macros'),
    macroList,
    el('h3', {}, 'Formalizations'),
    forms,
  );
}

function renderGoals(state: WorkbenchState): HTMLElement {
  const goals = state.session!.goals;
  const byId = new Map(goals.map((g) => [g.id, g]));
  const list = el('ul', { class: 'outline' });
  for (const rootId of state.session!.goalRoots) {
    const root = byId.get(rootId);
    if (root) list.append(renderGoal(root, byId));
  }
  return el('div', { class: 'panel' }, el('h2', {}, 'Goal graph'), list);
}

function renderGoal(goal: GoalDoc, byId: Map<string, GoalDoc>): HTMLElement {
  const row = el(
    'div',
    { class: 'node-row' },
    el('span', { class: 'node-id' }, goal.id),
    el('span', { class: 'formula' }, goal.label),
  );
  if (goal.decomp !== 'leaf') row.append(el('span', { class: 'badge badge-goal' }, goal.decomp));
  if (goal.strengthened) row.append(el('span', { class: 'badge badge-strong' }, 'strengthened'));
  if (goal.phantom) row.append(el('span', { class: 'badge badge-phantom' }, 'phantom'));
  const item = el('li', {}, row);
  if (goal.children.length) {
    const list = el('ul', { class: 'outline' });
    for (const childId of goal.children) {
      const child = byId.get(childId);
      if (child) list.append(renderGoal(child, byId));
    }
    item.append(list);
  }
  return item;
}
