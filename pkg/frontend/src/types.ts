/** Wire shapes of the exploration service, as the endpoints return them. */

export interface Counts {
  candidates: number;
  n1: number;
  n2: number;
  elapsed?: number;
}

export interface SessionSummary {
  session: string;
  problem: string;
  sha256: string;
  spaces: number;
  jobs: Record<string, string>;
  counts?: Counts;
  aborted?: boolean;
}

export interface JobInfo {
  job: string;
  kind: "enumerate" | "optimize";
  status: "running" | "done" | "failed";
  progress: Record<string, number>;
  error?: string;
  counts?: Counts;
}

/** One signature entry: a relation value, a side, or an or-branch pick. */
export type SignatureValue = string | number | [number, number];

export interface TopologyRow {
  index: number;
  signature: Record<string, SignatureValue>;
}

export interface TopologyPage {
  n1: number;
  n2: number;
  items: TopologyRow[];
}

/** Box of one placed space; staircases add climb/first_step. */
export interface Box {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  climb?: string;
  first_step?: number;
}

export type Witness = Record<string, Box>;

/** [lo, hi] intervals per attribute, plus config tuples for staircases. */
export type DomainTable = Record<string, Record<string, number[][]>>;

export interface TopologyDetail {
  index: number;
  signature: Record<string, SignatureValue>;
  witness: Witness;
  refinements: ConstraintRecord[][];
  consistent: boolean;
  domains: DomainTable;
  sketch: string;
}

export interface DiffResult {
  a: number;
  b: number;
  differences: Record<string, [SignatureValue, SignatureValue]>;
  sketch: string;
}

/** A constraint record in the problem-document schema (bound, adjacent, ...). */
export type ConstraintRecord = Record<string, unknown> & { type: string };

export interface FilterResult {
  survivors: number[];
}

export interface RefineResult {
  index: number;
  depth: number;
  consistent: boolean;
  witness: Witness | null;
  domains: DomainTable;
}

export interface CostCriterion {
  name: string;
  weight: number | [number, number];
}

export interface CostSpec {
  criteria: CostCriterion[];
}

export interface CostEcho {
  criteria: { name: string; weight: [number, number] }[];
  scale: number;
}

export interface OptimizeResult {
  index: number;
  cost: number;
  solutions: Witness[];
  count: number;
  first_cost: number;
  steps_to_first: number;
  steps_to_best: number;
  sketches: string[];
}

export interface RankingEntry {
  index: number;
  cost: number;
}

export interface Ranking {
  ranking: RankingEntry[];
}

/** Saved solutions document, as the command line writes it. */
export interface SolutionFile {
  format: string;
  problem: { name: string; sha256: string };
  counts: Counts & { nodes: number };
  aborted: boolean;
  topologies: { index: number; signature: Record<string, unknown>; witness: Witness }[];
}
