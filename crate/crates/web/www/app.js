import init, { sumsets, bound_curves, exact_signed_minimum } from "./pkg/signed_sumset_web.js";

const $ = (id) => document.getElementById(id);
let selected = new Set();
let currentGroup = "";

function call(f, ...args) {
  try {
    $("group-error").textContent = "";
    return JSON.parse(f(...args));
  } catch (e) {
    $("group-error").textContent = e.message ?? String(e);
    return null;
  }
}

function fold() {
  return Math.max(0, parseInt($("h").value, 10) || 0);
}

function renderGrid() {
  const group = $("group").value;
  if (group !== currentGroup) {
    selected = new Set();
    currentGroup = group;
  }
  const data = call(sumsets, group, Uint32Array.from(selected), fold());
  const grid = $("grid");
  grid.replaceChildren();
  if (!data) return;
  // last factor runs along the rows, everything before it down the columns
  const cols = data.factors[data.factors.length - 1];
  grid.style.gridTemplateColumns = `repeat(${cols}, auto)`;
  data.cells.forEach((cell, i) => {
    const b = document.createElement("button");
    b.type = "button";
    b.textContent = cell.label;
    b.title = cell.label;
    if (cell.in_plain) b.classList.add("plain");
    if (cell.in_signed) b.classList.add("signed");
    if (cell.in_set) b.classList.add("set");
    b.addEventListener("click", () => {
      selected.has(i) ? selected.delete(i) : selected.add(i);
      renderGrid();
    });
    grid.appendChild(b);
  });
  const cls = data.class ? `, ${data.class}` : "";
  $("sizes").textContent =
    `|A| = ${data.size}${cls}; |${data.h}A| = ${data.plain_size}; |${data.h}±A| = ${data.signed_size}`;
}

function renderCurves() {
  const data = call(bound_curves, $("group").value, fold());
  const canvas = $("curves");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!data) return;
  const pad = 30;
  const n = data.m.length;
  const top = Math.max(...data.u_pm, 1);
  const x = (m) => pad + ((m - 1) / Math.max(n - 1, 1)) * (canvas.width - 2 * pad);
  const y = (v) => canvas.height - pad - (v / top) * (canvas.height - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, canvas.width - 2 * pad, canvas.height - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.fillText(String(top), 2, pad + 4);
  ctx.fillText(`m = ${n}`, canvas.width - pad - 30, canvas.height - 10);
  const line = (values, color, dash) => {
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.setLineDash(dash);
    ctx.beginPath();
    values.forEach((v, i) => (i ? ctx.lineTo : ctx.moveTo).call(ctx, x(data.m[i]), y(v)));
    ctx.stroke();
  };
  line(data.u_pm, "#e08a00", []);
  line(data.u, "#1f5fbf", []);
  line(data.predicted, "#2a8a2a", [5, 4]);
  ctx.setLineDash([]);
}

function runExact(event) {
  event.preventDefault();
  const m = parseInt($("m").value, 10);
  const budget = parseInt($("budget").value, 10);
  const data = call(exact_signed_minimum, $("group").value, m, fold(), budget);
  if (!data) {
    $("exact").textContent = $("group-error").textContent;
    return;
  }
  $("exact").textContent = [
    `minimum |${data.h}±A| over ${data.m}-subsets of ${data.group}: ${data.value}`,
    `plain minimum ${data.u}, signed upper bound ${data.u_pm}`,
    `witness (${data.class}): {${data.witness_labels.join(", ")}}`,
    `${data.enumerated} sets searched`,
  ].join("\n");
  selected = new Set(data.witness);
  renderGrid();
}

function refresh() {
  renderGrid();
  renderCurves();
}

await init();
$("group").addEventListener("change", refresh);
$("h").addEventListener("input", refresh);
$("controls").addEventListener("submit", (e) => {
  e.preventDefault();
  refresh();
});
$("exact-form").addEventListener("submit", runExact);
refresh();
