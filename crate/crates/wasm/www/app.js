import init, { model_report, zero_pattern_counts, segre_tropical_demo } from "./pkg/mldeg_wasm.js";

const status = document.getElementById("status");

function table(headers, rows) {
  const t = document.createElement("table");
  const tr = document.createElement("tr");
  for (const h of headers) {
    const th = document.createElement("th");
    th.textContent = h;
    tr.appendChild(th);
  }
  t.appendChild(tr);
  for (const row of rows) {
    const tr = document.createElement("tr");
    for (const cell of row) {
      const td = document.createElement("td");
      td.textContent = cell;
      tr.appendChild(td);
    }
    t.appendChild(tr);
  }
  return t;
}

function show(el, node) {
  el.replaceChildren(node);
}

function busy(el, fn) {
  el.replaceChildren(document.createTextNode("computing…"));
  // let the browser paint before the synchronous solve
  setTimeout(() => {
    try {
      fn();
    } catch (e) {
      el.replaceChildren(document.createTextNode(`error: ${e}`));
    }
  }, 30);
}

async function main() {
  await init();
  status.textContent = "Solver ready.";

  // 1: model explorer
  const modelOut = document.getElementById("model-out");
  document.getElementById("model-run").addEventListener("click", () => {
    busy(modelOut, () => {
      const spec = document.getElementById("model-select").value;
      const seed = BigInt(document.getElementById("model-seed").value || "0");
      const facets = document.getElementById("model-facets").checked;
      const res = JSON.parse(model_report(spec, seed, facets));
      if (res.error) throw res.error;
      const rows = [["model", res.provenance], ["columns", res.columns],
        ["dimension", res.dimension], ["ML degree", res.ml_degree], ["degree", res.degree]];
      const frag = document.createDocumentFragment();
      frag.appendChild(table(["quantity", "value"], rows));
      if (res.facets) {
        frag.appendChild(table(
          ["dimension", "face", "ML degree", "degree"],
          res.facets.map(r => [r.dimension, r.face, r.ml_degree, r.degree])));
      }
      show(modelOut, frag);
    });
  });

  // 2: zero patterns
  const grid = document.getElementById("pattern-grid");
  const cells = [];
  for (let i = 0; i < 9; i++) {
    const b = document.createElement("button");
    b.textContent = "u";
    b.addEventListener("click", () => {
      b.textContent = b.textContent === "u" ? "0" : "u";
      b.classList.toggle("zero", b.textContent === "0");
    });
    grid.appendChild(b);
    cells.push(b);
  }
  const zerosOut = document.getElementById("zeros-out");
  document.getElementById("zeros-run").addEventListener("click", () => {
    busy(zerosOut, () => {
      const pattern = cells.map(b => b.textContent).join("");
      const res = JSON.parse(zero_pattern_counts(pattern, 0n));
      if (res.error) throw res.error;
      const headers = ["pattern", "c1", "c2", "c3", "c4", "c5", "c6"];
      const row = [res.pattern, ...["c1","c2","c3","c4","c5","c6"].map(k => res.counts[k])];
      show(zerosOut, table(headers, [row]));
    });
  });

  // 3: tropical degeneration
  const tropicalOut = document.getElementById("tropical-out");
  document.getElementById("tropical-run").addEventListener("click", () => {
    busy(tropicalOut, () => {
      const v = id => document.getElementById(id).value.trim();
      const res = JSON.parse(segre_tropical_demo(v("w3"), v("w4"), v("wd3"), v("wd4")));
      if (res.error) throw res.error;
      const frag = document.createDocumentFragment();
      const rows = res.eliminant_coefficients.map((c, i) => [`θ₁^${i}`, c]);
      frag.appendChild(table(["term", "coefficient in Z[t]"], rows));
      const cells = res.cayley_cells.map((c, i) => [i + 1, c.length, c.map(x => x + 1).join(" ")]);
      const sub = table(["cell", "size", "Cayley points"], cells);
      frag.appendChild(sub);
      const p = document.createElement("p");
      p.textContent = res.is_triangulation
        ? "The induced Cayley subdivision is a triangulation: the deformed equations are certified to be a tropical basis for these weights."
        : "The induced Cayley subdivision is not a triangulation: the sufficient criterion is inconclusive for these weights.";
      frag.appendChild(p);
      show(tropicalOut, frag);
    });
  });
}

main().catch(e => { status.textContent = `failed to load: ${e}`; });
