import init, { testNames, testDirections, submodelNames, statistics, testSample, drawAlternative } from "./pkg/laplace_gof_wasm.js";

const $ = (id) => document.getElementById(id);

function fill(select, names) {
  for (const name of names) select.add(new Option(name));
}

function fmt(v) {
  return Number.isNaN(v) ? "-" : v.toPrecision(6);
}

function showError(target, err) {
  target.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = err.message ?? String(err);
  target.append(p);
}

function row(cells, tag = "td") {
  const tr = document.createElement("tr");
  for (const c of cells) {
    const td = document.createElement(tag);
    td.textContent = c;
    tr.append(td);
  }
  return tr;
}

function drawSample() {
  try {
    const xs = drawAlternative($("submodel").value, Number($("case").value), Number($("n").value), BigInt($("draw-seed").value));
    $("data").value = Array.from(xs, (x) => x.toPrecision(8)).join("\n");
  } catch (err) {
    showError($("stats"), err);
  }
}

function computeAll(names, directions) {
  const out = $("stats");
  try {
    const values = statistics($("data").value);
    const table = document.createElement("table");
    table.append(row(["test", "tail", "statistic"], "th"));
    names.forEach((name, i) => table.append(row([name, directions[i], fmt(values[i])])));
    out.replaceChildren(table);
  } catch (err) {
    showError(out, err);
  }
}

function runTest() {
  const out = $("result");
  out.textContent = "running...";
  // let the page repaint before the blocking simulation
  setTimeout(() => {
    try {
      const d = testSample($("data").value, $("test").value, Number($("alpha").value), Number($("reps").value), BigInt($("test-seed").value));
      const dl = document.createElement("dl");
      const items = [
        ["n", d.n],
        ["mu_hat", fmt(d.mu_hat)],
        ["sigma_hat", fmt(d.sigma_hat)],
        ["statistic", fmt(d.statistic)],
        ["critical lower", fmt(d.lower)],
        ["critical upper", fmt(d.upper)],
        ["decision", d.reject ? "reject Laplace" : "do not reject Laplace"],
        ["p-value", fmt(d.p_value)],
      ];
      for (const [k, v] of items) {
        const dt = document.createElement("dt");
        const dd = document.createElement("dd");
        dt.textContent = k;
        dd.textContent = v;
        dl.append(dt, dd);
      }
      d.free();
      out.replaceChildren(dl);
    } catch (err) {
      showError(out, err);
    }
  }, 20);
}

await init();
const names = testNames();
const directions = testDirections();
fill($("submodel"), submodelNames());
fill($("test"), names);
$("draw").onclick = drawSample;
$("compute").onclick = () => computeAll(names, directions);
$("run").onclick = runTest;
drawSample();
computeAll(names, directions);
