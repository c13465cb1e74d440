// Payload shapes served by the session API.

export interface RuleDoc {
  id: string;
  kind: 'implication' | 'definition';
  lhs: string;
  rhs: string;
  note: string | null;
}

export interface MacroDoc {
  name: string;
  params: string[];
  body: string;
}

export interface FormalizationDoc {
  pattern: string;
  template: string;
  guard: [string, string[]][];
}

export interface KnowledgeBaseDoc {
  rules: RuleDoc[];
  macros: MacroDoc[];
  formalizations: FormalizationDoc[];
}

export interface GoalDoc {
  id: string;
  label: string;
  decomp: 'and' | 'or' | 'leaf';
  strengthened: boolean;
  phantom: boolean;
  children: string[];
}

export interface SessionSummary {
  tenet: string;
  hash: string;
  root: string;
  nodeCount: number;
  openLeaves: string[];
  kb: KnowledgeBaseDoc;
  goals: GoalDoc[];
  goalRoots: string[];
}

export interface CompletenessDoc {
  answer: 'complete' | 'incomplete' | 'unreviewed';
  rationale: string;
}

export interface TreeNodeDoc {
  id: string;
  expr: string;
  status: 'open' | 'formalized';
  annotation: string | null;
  parent: string | null;
  children: string[];
  completeness: CompletenessDoc | null;
}

export interface TreePayload {
  hash: string;
  root: string;
  nodes: TreeNodeDoc[];
}

export interface MoveDoc {
  index: number;
  case: 0 | 1 | 2;
  source: string;
  path: number[] | null;
  children: string[];
  annotation: string;
}

export interface MovesPayload {
  node: string;
  hash: string;
  moves: MoveDoc[];
  needsExpansion: boolean;
  formalizable: boolean;
}

export interface PhantomGoalRequest {
  parent: string;
  goal: { id: string; label: string; decomp: 'and' | 'or'; strengthened: boolean };
  adopt: string[];
}
