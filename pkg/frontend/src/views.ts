import type { GalleryCell, ViewState } from "./state.js";
import { canUndo, comparisonReady, galleryModel, pageCount } from "./state.js";
import type { DiffResult, DomainTable, OptimizeResult } from "./types.js";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/**
 * Gallery page: server-rendered sketches in enumeration order with the
 * candidate counters.  Sketch markup is inserted as delivered; the
 * client only adds selection and dimming chrome around it.
 */
export function renderGallery(st: ViewState, sketches: Map<number, string>): string {
  const counters = st.counts
    ? `<span class="counters">N1 ${st.counts.n1} / N2 ${st.counts.n2}</span>`
    : "";
  const cells = galleryModel(st)
    .map((c: GalleryCell) => {
      const cls = [
        "cell",
        c.dimmed ? "dimmed" : "",
        st.comparePair.a === c.index || st.comparePair.b === c.index ? "picked" : "",
      ]
        .filter(Boolean)
        .join(" ");
      const sketch = sketches.get(c.index) ?? "<span class=\"pending\">...</span>";
      return `<figure class="${cls}" data-index="${c.index}">${sketch}` +
        `<figcaption>#${c.index}</figcaption></figure>`;
    })
    .join("\n");
  const pager = `<nav class="pager">page ${st.page + 1} / ${pageCount(st)}</nav>`;
  return `<section class="gallery">${counters}\n${cells}\n${pager}</section>`;
}

/** Compare view: the diff sketch plus one line per disagreeing label. */
export function renderCompare(st: ViewState, diff: DiffResult | null): string {
  if (!comparisonReady(st) || !diff) {
    return `<section class="compare"><p>pick two solutions to compare</p></section>`;
  }
  const rows = Object.entries(diff.differences)
    .map(
      ([label, [va, vb]]) =>
        `<tr><td>${esc(label)}</td><td>${esc(String(va))}</td><td>${esc(String(vb))}</td></tr>`,
    )
    .join("");
  const table = rows
    ? `<table><thead><tr><th></th><th>#${diff.a}</th><th>#${diff.b}</th></tr></thead>` +
      `<tbody>${rows}</tbody></table>`
    : `<p>no differences</p>`;
  return `<section class="compare">${diff.sketch}${table}</section>`;
}

/** Filter form plus the survivor summary after a hypothetical filter. */
export function renderFilter(st: ViewState): string {
  const status =
    st.survivors === null
      ? "no filter applied"
      : `${st.survivors.size} of ${st.rows.length} solutions survive`;
  return (
    `<section class="filter">` +
    `<form id="filter-form">` +
    `<input name="space" placeholder="space" required> ` +
    `<select name="attr"><option>area</option><option>length</option><option>width</option>` +
    `<option>x1</option><option>y1</option><option>x2</option><option>y2</option></select> ` +
    `<input name="min" type="number" placeholder="min"> ` +
    `<input name="max" type="number" placeholder="max"> ` +
    `<button type="submit">try</button>` +
    `<button type="button" id="filter-clear">clear</button>` +
    `</form>` +
    `<p class="filter-status">${status}</p>` +
    `</section>`
  );
}

function domainRows(domains: DomainTable): string {
  return Object.entries(domains)
    .map(([space, attrs]) => {
      const cells = ["x1", "y1", "x2", "y2", "length", "width", "area"]
        .filter((a) => a in attrs)
        .map((a) => {
          const ivs = attrs[a].map(([lo, hi]) => (lo === hi ? `${lo}` : `${lo}..${hi}`));
          return `<td data-attr="${a}">${ivs.join(" | ")}</td>`;
        })
        .join("");
      return `<tr><th>${esc(space)}</th>${cells}</tr>`;
    })
    .join("");
}

/**
 * Refine panel: live domains of the chosen topology, one row per space,
 * with the undo button enabled while the stack is non-empty.
 */
export function renderRefine(st: ViewState): string {
  if (st.refine.index === null) {
    return `<section class="refine"><p>open a solution to refine it</p></section>`;
  }
  const badge = st.refine.consistent
    ? `<span class="ok">consistent</span>`
    : `<span class="dead">inconsistent</span>`;
  return (
    `<section class="refine">` +
    `<header>#${st.refine.index} at depth ${st.refine.depth} ${badge}` +
    `<button id="refine-undo"${canUndo(st) ? "" : " disabled"}>undo</button></header>` +
    `<table class="domains"><thead><tr><th></th><th>x1</th><th>y1</th><th>x2</th>` +
    `<th>y2</th><th>L</th><th>W</th><th>S</th></tr></thead>` +
    `<tbody>${domainRows(st.refine.domains)}</tbody></table>` +
    `<form id="refine-form">` +
    `<input name="space" placeholder="space" required> ` +
    `<select name="attr"><option>area</option><option>length</option><option>width</option>` +
    `<option>x1</option><option>y1</option><option>x2</option><option>y2</option></select> ` +
    `<input name="min" type="number" placeholder="min"> ` +
    `<input name="max" type="number" placeholder="max"> ` +
    `<button type="submit">apply</button>` +
    `</form>` +
    `</section>`
  );
}

/**
 * Ranked results with the tied-optima scroller of the selected class:
 * a small window over the layouts, stepped by the two buttons.
 */
export function renderRanking(st: ViewState, selected: OptimizeResult | null): string {
  const rows = st.ranking
    .map(
      (e, pos) =>
        `<tr data-index="${e.index}"><td>${pos + 1}</td><td>#${e.index}</td>` +
        `<td>${e.cost}</td></tr>`,
    )
    .join("");
  let detail = "";
  if (selected) {
    const k = Math.min(st.layoutScroll, selected.sketches.length - 1);
    detail =
      `<div class="layouts">` +
      `<header>#${selected.index}: ${selected.count} optimal layout(s), cost ${selected.cost}</header>` +
      `<div class="scroller">` +
      `<button id="layout-prev"${k <= 0 ? " disabled" : ""}>&lt;</button>` +
      `<span>${k + 1} / ${selected.count}</span>` +
      `<button id="layout-next"${k >= selected.count - 1 ? " disabled" : ""}>&gt;</button>` +
      `</div>` +
      (selected.sketches[k] ?? "") +
      `</div>`;
  }
  return (
    `<section class="ranking">` +
    `<table><thead><tr><th>rank</th><th>solution</th><th>cost</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>` +
    detail +
    `</section>`
  );
}

/** Cost-weight editor rows with the known criteria preloaded. */
export function renderCostEditor(st: ViewState, criteria: string[]): string {
  const rows = criteria
    .map((name) => {
      const row = st.cost.find((c) => c.name === name);
      const w = row ? String(row.weight) : "";
      return (
        `<tr><td>${esc(name)}</td>` +
        `<td><input data-criterion="${name}" type="number" min="0" value="${w}"></td></tr>`
      );
    })
    .join("");
  return (
    `<section class="cost"><table>` +
    `<thead><tr><th>criterion</th><th>weight</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>` +
    `<button id="cost-apply">apply cost</button></section>`
  );
}
