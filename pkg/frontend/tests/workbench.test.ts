import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { ApiClient } from '../src/api.js';
import { Workbench } from '../src/state.js';
import { FakeBackend } from './fake-backend.js';

let backend: FakeBackend;
let bench: Workbench;

beforeEach(() => {
  backend = new FakeBackend();
  vi.stubGlobal('fetch', backend.fetch);
  bench = new Workbench(new ApiClient());
});

afterEach(() => {
  vi.unstubAllGlobals();
});

describe('workbench view model', () => {
  it('loads the session snapshot and document order', async () => {
    await bench.refresh();
    expect(bench.state.session?.tenet).toBe('do not harm');
    expect(bench.state.order).toEqual(['n1', 'n2', 'n3']);
  });

  it('fetches the move palette when selecting an open leaf', async () => {
    await bench.refresh();
    await bench.select('n2');
    expect(bench.state.palette?.moves.map((m) => m.source)).toEqual(['d6']);
    // Formalized leaves and refined nodes get no palette.
    await bench.select('n3');
    expect(bench.state.palette).toBeNull();
  });

  it('sends the displayed hash with every mutation', async () => {
    await bench.refresh();
    const shown = bench.state.session!.hash;
    await bench.select('n2');
    const ok = await bench.applyMove(0);
    expect(ok).toBe(true);
    expect(backend.appliedMoves).toEqual([{ node: 'n2', index: 0 }]);
    expect(shown).toBe('hash-1'); // the mutation consumed the displayed hash
    expect(bench.state.session!.hash).not.toBe(shown);
  });

  it('refetches on 409 and waits for a user-confirmed retry', async () => {
    await bench.refresh();
    await bench.select('n2');
    backend.conflictOnce = true;
    const ok = await bench.applyMove(0);
    expect(ok).toBe(false);
    expect(bench.state.conflict).toBe(true);
    expect(backend.appliedMoves).toEqual([]);
    // The state was refreshed before any retry...
    expect(bench.state.session!.hash).toBe(backend.hash);
    // ...and an explicit second attempt succeeds.
    const retried = await bench.applyMove(0);
    expect(retried).toBe(true);
    expect(backend.appliedMoves.length).toBe(1);
  });

  it('queues a completeness prompt after a refinement', async () => {
    await bench.refresh();
    await bench.select('n2');
    await bench.applyMove(0);
    expect(bench.state.prompts.length).toBe(1);
    expect(bench.state.prompts[0]?.nodeId).toBe('n2');
  });

  it('marks definition-based prompts as pre-answered', async () => {
    await bench.refresh();
    await bench.select('n1');
    bench.state.nodes.get('n1')!.children = [];
    bench.state.nodes.get('n1')!.status = 'open';
    await bench.applyMove(0);
    // n1's refreshed snapshot carries an auto-complete record.
    expect(bench.state.prompts[0]?.preAnswered).toBe(true);
  });

  it('blocks an incomplete verdict without a rationale locally', async () => {
    await bench.refresh();
    await bench.select('n2');
    await bench.applyMove(0);
    const ok = await bench.answerCompleteness('incomplete', '   ');
    expect(ok).toBe(false);
    expect(backend.completenessCalls).toEqual([]);
    expect(bench.state.notice).toMatch(/rationale/);
    const recorded = await bench.answerCompleteness('incomplete', 'exercise missing');
    expect(recorded).toBe(true);
    expect(backend.completenessCalls).toEqual([
      { node: 'n2', answer: 'incomplete', rationale: 'exercise missing' },
    ]);
    expect(bench.state.prompts).toEqual([]);
  });

  it('cancel leaves the node unreviewed and sends nothing', async () => {
    await bench.refresh();
    await bench.select('n2');
    await bench.applyMove(0);
    bench.dismissCompleteness();
    expect(bench.state.prompts).toEqual([]);
    expect(backend.completenessCalls).toEqual([]);
  });

  it('loads export previews', async () => {
    await bench.refresh();
    await bench.loadExport('props');
    expect(bench.state.exportPreview?.text).toBe('PHI(breakfast)\n');
  });

  it('logs every request so mutations are observable', async () => {
    await bench.refresh();
    await bench.select('n2');
    await bench.applyMove(0);
    const posts = bench.api.log.filter((r) => r.method === 'POST');
    expect(posts).toEqual([{ method: 'POST', path: '/api/nodes/n2/apply' }]);
  });
});
