// @vitest-environment jsdom
import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { ApiClient } from '../src/api.js';
import { mount } from '../src/render.js';
import { Workbench } from '../src/state.js';
import { FakeBackend } from './fake-backend.js';

let backend: FakeBackend;
let bench: Workbench;
let root: HTMLElement;

beforeEach(async () => {
  backend = new FakeBackend();
  vi.stubGlobal('fetch', backend.fetch);
  bench = new Workbench(new ApiClient());
  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById('app')!;
  mount(root, bench);
  await bench.refresh();
});

afterEach(() => {
  vi.unstubAllGlobals();
});

function texts(selector: string): string[] {
  return [...root.querySelectorAll(selector)].map((n) => n.textContent ?? '');
}

describe('workbench view', () => {
  it('renders the tree outline with engine-supplied badges', () => {
    expect(texts('.tree-pane .formula')).toContain('"harm"');
    expect(texts('.tree-pane .badge')).toContain('g');
    // Formalized leaves get a check mark, open leaves a dot.
    expect(texts('.tree-pane .twist')).toContain('✓');
  });

  it('shows the move palette grouped by case after selecting a leaf', async () => {
    await bench.select('n2');
    expect(texts('.palette h3')).toContain('Domain knowledge');
    expect(texts('.move .badge')).toContain('d6');
  });

  it('clicking apply issues the API call with the shown hash', async () => {
    await bench.select('n2');
    const apply = root.querySelector<HTMLButtonElement>('.move button.apply')!;
    apply.click();
    await vi.waitFor(() => {
      expect(backend.appliedMoves).toEqual([{ node: 'n2', index: 0 }]);
    });
  });

  it('renders the completeness dialog after a refinement', async () => {
    await bench.select('n2');
    await bench.applyMove(0);
    const dialog = root.querySelector('[data-dialog="completeness"]')!;
    expect(dialog.textContent).toContain('Is the refinement of n2 complete?');
  });

  it('macro hovers carry the engine-printed definition', () => {
    const phi = [...root.querySelectorAll('.formula.has-macro')].find((n) =>
      n.textContent?.includes('PHI'),
    ) as HTMLElement;
    expect(phi.title).toBe('PHI(X) := [](time(X) -> eating(X))');
  });

  it('marks incomplete nodes with a residual-risk badge', async () => {
    backend.tree = () => ({
      hash: backend.hash,
      root: 'n1',
      nodes: [
        {
          id: 'n1', expr: '"harm"', status: 'open', annotation: 'd6', parent: null,
          children: ['n2'],
          completeness: { answer: 'incomplete', rationale: 'exercise missing' },
        },
        { id: 'n2', expr: '!"x"', status: 'open', annotation: null, parent: 'n1', children: [], completeness: null },
      ],
    });
    await bench.refresh();
    const risk = root.querySelector<HTMLElement>('.badge-risk')!;
    expect(risk.textContent).toContain('incomplete');
    expect(risk.title).toBe('exercise missing');
  });

  it('offers the expansion forms with the goal root prefilled', async () => {
    backend.moves = (node) => ({
      node,
      hash: backend.hash,
      moves: [],
      needsExpansion: true,
      formalizable: false,
    });
    await bench.select('n2');
    const parent = root.querySelector<HTMLInputElement>('.expansion input')!;
    expect(parent.value).toBe('support');
    expect(texts('.expansion h4')).toEqual(['Add goal', 'Add rule']);
  });
});
