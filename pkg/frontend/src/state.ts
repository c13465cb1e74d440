// View model for the workbench.  All tree changes go through the API with
// the currently displayed hash; a 409 refreshes the snapshot and waits for
// the user to confirm a retry.  One mutation is in flight at a time.

import { ApiClient, ApiError } from './api.js';
import type {
  MovesPayload,
  SessionSummary,
  TreeNodeDoc,
} from './types.js';

export interface CompletenessPrompt {
  nodeId: string;
  expr: string;
  preAnswered: boolean;
}

export interface ExportPreview {
  format: 'props' | 'report';
  text: string;
}

export interface WorkbenchState {
  session: SessionSummary | null;
  nodes: Map<string, TreeNodeDoc>;
  order: string[];
  selected: string | null;
  palette: MovesPayload | null;
  prompts: CompletenessPrompt[];
  exportPreview: ExportPreview | null;
  notice: string | null;
  conflict: boolean;
  busy: boolean;
  collapsed: Set<string>;
}

type Listener = (state: WorkbenchState) => void;

export class Workbench {
  readonly state: WorkbenchState = {
    session: null,
    nodes: new Map(),
    order: [],
    selected: null,
    palette: null,
    prompts: [],
    exportPreview: null,
    notice: null,
    conflict: false,
    busy: false,
    collapsed: new Set(),
  };

  private listeners: Listener[] = [];

  constructor(readonly api: ApiClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  private get hash(): string {
    if (!this.state.session) throw new Error('no session loaded');
    return this.state.session.hash;
  }

  node(id: string): TreeNodeDoc | undefined {
    return this.state.nodes.get(id);
  }

  async refresh(): Promise<void> {
    const [session, tree] = await Promise.all([this.api.getSession(), this.api.getTree()]);
    this.state.session = session;
    this.state.nodes = new Map(tree.nodes.map((n) => [n.id, n]));
    this.state.order = tree.nodes.map((n) => n.id);
    this.emit();
  }

  async select(nodeId: string | null): Promise<void> {
    this.state.selected = nodeId;
    this.state.palette = null;
    this.state.notice = null;
    if (nodeId !== null) {
      const node = this.state.nodes.get(nodeId);
      if (node && !node.children.length && node.status === 'open') {
        try {
          this.state.palette = await this.api.getMoves(nodeId);
        } catch (error) {
          this.state.notice = describe(error);
        }
      }
    }
    this.emit();
  }

  toggleCollapsed(nodeId: string): void {
    if (this.state.collapsed.has(nodeId)) this.state.collapsed.delete(nodeId);
    else this.state.collapsed.add(nodeId);
    this.emit();
  }

  /** Run a mutation against the displayed hash, refreshing afterwards. */
  private async mutate(operation: (hash: string) => Promise<unknown>): Promise<boolean> {
    if (this.state.busy) return false;
    this.state.busy = true;
    this.state.notice = null;
    this.state.conflict = false;
    this.emit();
    try {
      await operation(this.hash);
      await this.refresh();
      return true;
    } catch (error) {
      if (error instanceof ApiError && error.isConflict) {
        // Someone else moved the session on: refetch, then let the user
        // decide whether to retry against the new state.
        await this.refresh();
        this.state.conflict = true;
        this.state.notice = 'Session changed elsewhere; review the refreshed state and retry.';
      } else {
        this.state.notice = describe(error);
      }
      return false;
    } finally {
      this.state.busy = false;
      if (this.state.selected !== null) await this.select(this.state.selected);
      else this.emit();
    }
  }

  async applyMove(moveIndex: number): Promise<boolean> {
    const nodeId = this.state.selected;
    if (nodeId === null) return false;
    const ok = await this.mutate((hash) => this.api.applyMove(nodeId, moveIndex, hash));
    if (ok) {
      const refined = this.state.nodes.get(nodeId);
      if (refined) {
        this.state.prompts.push({
          nodeId,
          expr: refined.expr,
          preAnswered: refined.completeness?.answer === 'complete',
        });
        const firstChild = refined.children[0];
        await this.select(firstChild ?? nodeId);
      }
    }
    return ok;
  }

  async formalizeSelected(): Promise<boolean> {
    const nodeId = this.state.selected;
    if (nodeId === null) return false;
    return this.mutate((hash) => this.api.formalize(nodeId, hash));
  }

  /** Answer the completeness question at the head of the queue. */
  async answerCompleteness(answer: 'complete' | 'incomplete', rationale: string): Promise<boolean> {
    const prompt = this.state.prompts[0];
    if (!prompt) return false;
    if (answer === 'incomplete' && !rationale.trim()) {
      this.state.notice = 'An incomplete verdict needs a rationale.';
      this.emit();
      return false;
    }
    const ok = await this.mutate((hash) =>
      this.api.recordCompleteness(prompt.nodeId, answer, rationale, hash),
    );
    if (ok) {
      this.state.prompts.shift();
      this.emit();
    }
    return ok;
  }

  /** Cancel the pending completeness question; the node stays unreviewed. */
  dismissCompleteness(): void {
    this.state.prompts.shift();
    this.emit();
  }

  async addRule(line: string): Promise<boolean> {
    return this.mutate((hash) => this.api.addRule(line, hash));
  }

  async insertPhantom(
    parent: string,
    goalId: string,
    label: string,
    decomp: 'and' | 'or',
    strengthened: boolean,
    adopt: string[],
  ): Promise<boolean> {
    return this.mutate((hash) =>
      this.api.insertPhantom({ parent, goal: { id: goalId, label, decomp, strengthened }, adopt }, hash),
    );
  }

  async loadExport(format: 'props' | 'report'): Promise<boolean> {
    try {
      const text = await this.api.export(format);
      this.state.exportPreview = { format, text };
      this.state.notice = null;
      this.emit();
      return true;
    } catch (error) {
      this.state.notice = describe(error);
      this.emit();
      return false;
    }
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return error.detail;
  return error instanceof Error ? error.message : String(error);
}
