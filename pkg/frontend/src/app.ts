import { Api, ApiError } from "./api.js";
import { pollJob } from "./poll.js";
import {
  applyFilter,
  applyRefine,
  applyUndo,
  clearFilter,
  costSpec,
  initialState,
  openRefine,
  pickForCompare,
  comparisonReady,
  scrollLayouts,
  setCriterion,
  setPage,
  setRanking,
  ViewState,
} from "./state.js";
import {
  renderCompare,
  renderCostEditor,
  renderFilter,
  renderGallery,
  renderRanking,
  renderRefine,
} from "./views.js";
import type { ConstraintRecord, DiffResult, OptimizeResult } from "./types.js";

const CRITERIA = [
  "corridor_area",
  "internal_wall",
  "external_wall",
  "combined_wall",
  "extra_space",
];

/**
 * Browser wiring: everything below delegates to the pure state helpers
 * and the Api client; this file only moves strings into the DOM.
 */
export function mount(root: HTMLElement, api: Api = new Api("")): void {
  const st: ViewState = initialState();
  const sketches = new Map<number, string>();
  let diff: DiffResult | null = null;
  let selectedOpt: OptimizeResult | null = null;

  const el = (id: string) => root.querySelector<HTMLElement>(`#${id}`)!;

  function flash(msg: string): void {
    el("status").textContent = msg;
  }

  function redraw(): void {
    el("gallery").innerHTML = renderGallery(st, sketches);
    el("compare").innerHTML = renderCompare(st, diff);
    el("filter").innerHTML = renderFilter(st);
    el("refine").innerHTML = renderRefine(st);
    el("ranking").innerHTML = renderRanking(st, selectedOpt);
    el("cost").innerHTML = renderCostEditor(st, CRITERIA);
  }

  async function loadSketch(index: number): Promise<void> {
    if (sketches.has(index)) return;
    const detail = await api.topology(st.session!, index);
    sketches.set(index, detail.sketch);
  }

  async function openSession(benchmark: string): Promise<void> {
    const summary = await api.createSession({ benchmark });
    st.session = summary.session;
    st.problem = summary.problem;
    flash(`enumerating ${summary.problem} ...`);
    const job = await api.enumerate(st.session);
    const done = await pollJob(api, st.session, job.job, {
      onProgress: (j) => {
        const p = j.progress;
        if (p.candidates !== undefined) {
          flash(`candidates ${p.candidates}, N1 ${p.n1}, N2 ${p.n2}`);
        }
      },
    });
    st.counts = done.counts ? { n1: done.counts.n1, n2: done.counts.n2 } : null;
    const page = await api.topologies(st.session, 0, 1000);
    st.rows = page.items;
    st.page = 0;
    await Promise.all(page.items.slice(0, st.perPage).map((r) => loadSketch(r.index)));
    flash(`${page.n2} topological solutions`);
    redraw();
  }

  root.addEventListener("click", async (ev) => {
    const t = ev.target as HTMLElement;
    try {
      const fig = t.closest<HTMLElement>("figure.cell");
      if (fig) {
        pickForCompare(st, Number(fig.dataset.index));
        if (comparisonReady(st)) {
          const { a, b } = st.comparePair;
          diff = await api.diff(st.session!, a!, b!);
        }
        redraw();
        return;
      }
      if (t.id === "filter-clear") {
        clearFilter(st);
        redraw();
      } else if (t.id === "refine-undo") {
        const resp = await api.undo(st.session!, st.refine.index!);
        applyUndo(st, resp);
        redraw();
      } else if (t.id === "layout-prev" || t.id === "layout-next") {
        scrollLayouts(st, t.id === "layout-next" ? 1 : -1);
        redraw();
      } else if (t.id === "cost-apply") {
        await api.setCost(st.session!, costSpec(st));
        flash("cost updated; rankings cleared");
      } else if (t.id === "optimize-all") {
        const job = await api.optimizeAll(st.session!);
        const final = await pollJob(api, st.session!, job.job, {
          onProgress: (j) =>
            flash(`optimizing ${j.progress.optimized ?? 0}/${j.progress.total ?? "?"}`),
        });
        void final;
        const rk = await api.ranking(st.session!);
        setRanking(st, rk.ranking);
        if (rk.ranking.length) {
          selectedOpt = await api.layouts(st.session!, rk.ranking[0].index);
          st.layoutCount = selectedOpt.count;
        }
        redraw();
      } else {
        const row = t.closest<HTMLElement>("tr[data-index]");
        if (row && row.closest(".ranking")) {
          selectedOpt = await api.layouts(st.session!, Number(row.dataset.index));
          st.layoutCount = selectedOpt.count;
          st.layoutScroll = 0;
          redraw();
        }
      }
    } catch (err) {
      flash(err instanceof ApiError ? err.detail : String(err));
    }
  });

  root.addEventListener("dblclick", async (ev) => {
    const fig = (ev.target as HTMLElement).closest<HTMLElement>("figure.cell");
    if (!fig) return;
    const index = Number(fig.dataset.index);
    const detail = await api.topology(st.session!, index);
    openRefine(st, index, detail.domains);
    redraw();
  });

  root.addEventListener("submit", async (ev) => {
    const form = ev.target as HTMLFormElement;
    ev.preventDefault();
    const data = new FormData(form);
    const rec = boundRecord(data);
    try {
      if (form.id === "filter-form") {
        const res = await api.filter(st.session!, [rec]);
        applyFilter(st, res.survivors);
      } else if (form.id === "refine-form") {
        const resp = await api.refine(st.session!, st.refine.index!, [rec]);
        applyRefine(st, resp);
      }
      redraw();
    } catch (err) {
      flash(err instanceof ApiError ? err.detail : String(err));
    }
  });

  root.addEventListener("change", (ev) => {
    const input = ev.target as HTMLInputElement;
    if (input.dataset.criterion) {
      setCriterion(st, input.dataset.criterion, Number(input.value || 0));
    }
  });

  el("open").addEventListener("click", () => {
    const pick = root.querySelector<HTMLSelectElement>("#benchmark")!;
    openSession(pick.value).catch((err) => flash(String(err)));
  });

  el("page-prev").addEventListener("click", async () => {
    setPage(st, st.page - 1);
    await preloadPage();
    redraw();
  });
  el("page-next").addEventListener("click", async () => {
    setPage(st, st.page + 1);
    await preloadPage();
    redraw();
  });

  async function preloadPage(): Promise<void> {
    const start = st.page * st.perPage;
    await Promise.all(
      st.rows.slice(start, start + st.perPage).map((r) => loadSketch(r.index)),
    );
  }

  api
    .benchmarks()
    .then(({ benchmarks }) => {
      const pick = root.querySelector<HTMLSelectElement>("#benchmark")!;
      pick.innerHTML = benchmarks.map((b) => `<option>${b}</option>`).join("");
    })
    .catch((err) => flash(String(err)));

  redraw();
}

/** Build a bound record from the shared space/attr/min/max form fields. */
export function boundRecord(data: FormData): ConstraintRecord {
  const rec: ConstraintRecord = {
    type: "bound",
    var: [String(data.get("space")), String(data.get("attr"))],
  };
  const mn = data.get("min");
  const mx = data.get("max");
  if (mn !== null && mn !== "") rec.min = Number(mn);
  if (mx !== null && mx !== "") rec.max = Number(mx);
  return rec;
}
