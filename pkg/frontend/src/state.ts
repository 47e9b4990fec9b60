import type {
  CostCriterion,
  CostSpec,
  DomainTable,
  RankingEntry,
  TopologyRow,
} from "./types.js";

/**
 * The whole view state is one plain object updated by pure helpers, so
 * every interaction is testable without a DOM.  Domains, survivors,
 * costs and counts are stored exactly as the service sent them.
 */
export interface ViewState {
  session: string | null;
  problem: string | null;
  counts: { n1: number; n2: number } | null;
  page: number;
  perPage: number;
  rows: TopologyRow[];
  /** survivor set of the last hypothetical filter, null = no filter */
  survivors: Set<number> | null;
  comparePair: { a: number | null; b: number | null };
  refine: {
    index: number | null;
    depth: number;
    consistent: boolean;
    domains: DomainTable;
    /** displayed-domain snapshots, one per applied refinement */
    trail: DomainTable[];
  };
  cost: CostCriterion[];
  ranking: RankingEntry[];
  /** scroll position through tied optima of the selected ranked class */
  layoutScroll: number;
  layoutCount: number;
}

export function initialState(): ViewState {
  return {
    session: null,
    problem: null,
    counts: null,
    page: 0,
    perPage: 12,
    rows: [],
    survivors: null,
    comparePair: { a: null, b: null },
    refine: { index: null, depth: 0, consistent: true, domains: {}, trail: [] },
    cost: [],
    ranking: [],
    layoutScroll: 0,
    layoutCount: 0,
  };
}

export interface GalleryCell {
  index: number;
  dimmed: boolean;
}

/** Rows of the current page with filter dimming applied. */
export function galleryModel(st: ViewState): GalleryCell[] {
  const start = st.page * st.perPage;
  return st.rows.slice(start, start + st.perPage).map((r) => ({
    index: r.index,
    dimmed: st.survivors !== null && !st.survivors.has(r.index),
  }));
}

export function pageCount(st: ViewState): number {
  return Math.max(1, Math.ceil(st.rows.length / st.perPage));
}

export function setPage(st: ViewState, page: number): void {
  st.page = Math.min(Math.max(0, page), pageCount(st) - 1);
}

export function applyFilter(st: ViewState, survivors: number[]): void {
  st.survivors = new Set(survivors);
}

export function clearFilter(st: ViewState): void {
  st.survivors = null;
}

/**
 * Pick a solution for comparison.  The first pick pairs with its
 * consecutive neighbour by default; a second pick replaces that
 * neighbour; picking again restarts.
 */
export function pickForCompare(st: ViewState, index: number): void {
  const p = st.comparePair;
  if (p.a === null || p.b !== null) {
    const next = st.rows.some((r) => r.index === index + 1) ? index + 1 : null;
    st.comparePair = { a: index, b: next };
  } else if (index !== p.a) {
    p.b = index;
  }
}

export function comparisonReady(st: ViewState): boolean {
  return st.comparePair.a !== null && st.comparePair.b !== null;
}

/** Open the refine panel on a topology with its unrefined domain snapshot. */
export function openRefine(st: ViewState, index: number, domains: DomainTable): void {
  st.refine = { index, depth: 0, consistent: true, domains, trail: [] };
}

export function applyRefine(
  st: ViewState,
  resp: { depth: number; consistent: boolean; domains: DomainTable },
): void {
  // keep the snapshot we were displaying so undo can be checked against it
  st.refine.trail.push(st.refine.domains);
  st.refine.depth = resp.depth;
  st.refine.consistent = resp.consistent;
  st.refine.domains = resp.domains;
}

export function applyUndo(
  st: ViewState,
  resp: { depth: number; consistent: boolean; domains: DomainTable },
): void {
  st.refine.trail.pop();
  st.refine.depth = resp.depth;
  st.refine.consistent = resp.consistent;
  st.refine.domains = resp.domains;
}

export function canUndo(st: ViewState): boolean {
  return st.refine.depth > 0;
}

// -- cost editor

export function setCriterion(st: ViewState, name: string, weight: number): void {
  const row = st.cost.find((c) => c.name === name);
  if (weight <= 0) {
    st.cost = st.cost.filter((c) => c.name !== name);
  } else if (row) {
    row.weight = weight;
  } else {
    st.cost.push({ name, weight });
  }
}

export function costSpec(st: ViewState): CostSpec {
  return { criteria: st.cost.map((c) => ({ ...c })) };
}

// -- ranked results

export function setRanking(st: ViewState, entries: RankingEntry[]): void {
  st.ranking = entries;
  st.layoutScroll = 0;
  st.layoutCount = 0;
}

export function scrollLayouts(st: ViewState, delta: number): void {
  if (st.layoutCount === 0) return;
  st.layoutScroll = Math.min(
    Math.max(0, st.layoutScroll + delta),
    st.layoutCount - 1,
  );
}
