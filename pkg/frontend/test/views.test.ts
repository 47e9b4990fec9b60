import { describe, expect, it } from "vitest";

import { applyFilter, initialState, openRefine, pickForCompare, setRanking } from "../src/state";
import {
  renderCompare,
  renderCostEditor,
  renderFilter,
  renderGallery,
  renderRanking,
  renderRefine,
} from "../src/views";
import { fixture } from "./helpers";

function withRows(n: number) {
  const st = initialState();
  st.rows = Array.from({ length: n }, (_, i) => ({ index: i, signature: {} }));
  return st;
}

describe("gallery", () => {
  it("inserts server sketches as delivered and marks picks", () => {
    const st = withRows(3);
    st.counts = { n1: 3, n2: 3 };
    pickForCompare(st, 1);
    const html = renderGallery(st, new Map([[1, "<svg data-t='1'/>"]]));
    expect(html).toContain("<svg data-t='1'/>");
    expect(html).toContain('data-index="1"');
    expect(html.split('class="cell picked"').length - 1).toBe(2);
    expect(html).toContain("page 1 / 1");
  });

  it("shows a placeholder while a sketch is loading", () => {
    const st = withRows(1);
    expect(renderGallery(st, new Map())).toContain('class="pending"');
  });
});

describe("compare", () => {
  it("prompts until two solutions are picked", () => {
    const st = withRows(2);
    expect(renderCompare(st, null)).toContain("pick two solutions");
  });

  it("lists each disagreeing relation from the recorded diff", () => {
    const st = withRows(6);
    pickForCompare(st, 0);
    const diff = fixture("diff01.json");
    const html = renderCompare(st, diff);
    expect(html).toContain(`<th>#${diff.a}</th>`);
    for (const [label, [va, vb]] of Object.entries<any>(diff.differences)) {
      expect(html).toContain(label);
      expect(html).toContain(`<td>${va}</td>`);
      expect(html).toContain(`<td>${vb}</td>`);
    }
    expect(html).toContain("<svg");
  });

  it("escapes markup in labels and values", () => {
    const st = withRows(2);
    pickForCompare(st, 0);
    const html = renderCompare(st, {
      a: 0,
      b: 1,
      differences: { "rel:<a>:b": ["<E", "W&"] },
      sketch: "<svg/>",
    } as any);
    expect(html).toContain("rel:&lt;a&gt;:b");
    expect(html).toContain("&lt;E");
    expect(html).toContain("W&amp;");
    expect(html).not.toContain("rel:<a>");
  });
});

describe("filter and refine panels", () => {
  it("summarises the surviving fraction", () => {
    const st = withRows(6);
    expect(renderFilter(st)).toContain("no filter applied");
    applyFilter(st, [2, 5]);
    expect(renderFilter(st)).toContain("2 of 6 solutions survive");
  });

  it("renders interval domains row by row", () => {
    const st = initialState();
    const detail = fixture("detail0.json");
    openRefine(st, detail.index, detail.domains);
    const html = renderRefine(st);
    for (const space of Object.keys(detail.domains)) {
      expect(html).toContain(`<th>${space}</th>`);
    }
    // fixed contour strip: a lives somewhere on the 6x2 band
    expect(html).toContain('data-attr="x1"');
    expect(html).toContain("disabled>undo");
  });

  it("single-point intervals drop the dots", () => {
    const st = initialState();
    openRefine(st, 0, { a: { x1: [[2, 2]], y1: [[0, 3]] } } as any);
    const html = renderRefine(st);
    expect(html).toContain('<td data-attr="x1">2</td>');
    expect(html).toContain('<td data-attr="y1">0..3</td>');
  });

  it("flags an inconsistent refinement", () => {
    const st = initialState();
    openRefine(st, 0, {} as any);
    st.refine.consistent = false;
    expect(renderRefine(st)).toContain("inconsistent");
  });
});

describe("ranking", () => {
  it("orders rows and windows the tied optima", () => {
    const st = initialState();
    const ranking = fixture("ranking.json");
    const opt = fixture("optimize0.json");
    setRanking(st, ranking.ranking);
    st.layoutCount = opt.count;
    const html = renderRanking(st, opt);
    expect(html.split("<tr data-index=").length - 1).toBe(ranking.ranking.length);
    expect(html).toContain(`cost ${opt.cost}`);
    expect(html).toContain(`1 / ${opt.count}`);
    expect(html).toContain("<svg");
    expect(html).toContain("<button id=\"layout-prev\" disabled>");
  });

  it("enables the forward button only while layouts remain", () => {
    const st = initialState();
    setRanking(st, [{ index: 0, cost: 1 }]);
    st.layoutCount = 2;
    st.layoutScroll = 1;
    const html = renderRanking(st, {
      index: 0,
      cost: 1,
      count: 2,
      sketches: ["<svg a/>", "<svg b/>"],
    } as any);
    expect(html).toContain("<svg b/>");
    expect(html).toContain("<button id=\"layout-next\" disabled>");
    expect(html).toContain("<button id=\"layout-prev\">");
  });
});

describe("cost editor", () => {
  it("prefills configured weights and leaves the rest blank", () => {
    const st = initialState();
    st.cost = [{ name: "internal_wall", weight: 2 }];
    const html = renderCostEditor(st, ["internal_wall", "extra_space"]);
    expect(html).toContain('data-criterion="internal_wall" type="number" min="0" value="2"');
    expect(html).toContain('data-criterion="extra_space" type="number" min="0" value=""');
  });
});
