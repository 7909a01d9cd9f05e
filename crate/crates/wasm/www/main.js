import init, { sort, bounds, exact } from "./pkg/pancake_wasm.js";

const $ = (id) => document.getElementById(id);
const out = $("out");

function show(text, failed = false) {
  out.textContent = text;
  out.className = failed ? "err" : "";
}

function run(f) {
  try {
    show(f());
  } catch (e) {
    show(String(e.message ?? e), true);
  }
}

function sortText() {
  const r = JSON.parse(sort($("algo").value, $("stack").value, BigInt($("seed").value || 0)));
  const lines = r.states.map((s, i) => (i < r.flips.length ? `${s}    flip ${r.flips[i]}` : s));
  return `${lines.join("\n")}\n\n${r.flips.length} flips`;
}

function boundsText() {
  const r = JSON.parse(bounds($("stack").value));
  const lines = [`stack: ${r.stack}`];
  if (r.potential_bound !== undefined) {
    lines.push(`potential: ${r.potential_thirds}/3, at least ${r.potential_bound} flips`);
  }
  lines.push(`greedy: at least ${r.greedy_bound} flips${r.greedy_exact ? " (exact)" : ""}`);
  return lines.join("\n");
}

function exactText() {
  const r = JSON.parse(exact($("stack").value));
  return `stack: ${r.stack}\ndistance: ${r.distance}`;
}

await init();
show("ready");
$("sort").onclick = () => run(sortText);
$("bounds").onclick = () => run(boundsText);
$("exact").onclick = () => run(exactText);
