import init, { fringe_grid, visibility_curves, separability_map, classify } from "./pkg/gsswit_wasm.js";

const ids = ["n", "m", "mc", "l1", "l2"];
const M_MAX = 3;
const el = (id) => document.getElementById(id);

function params() {
  const v = Object.fromEntries(ids.map((id) => [id, parseFloat(el(id).value)]));
  return { n: v.n, m: v.m, mc: v.mc, l1: v.l1 * Math.PI, l2: v.l2 * Math.PI };
}

function drawFringe(p) {
  const canvas = el("fringe");
  const k = 64;
  const values = fringe_grid(p.n, p.m, p.mc, p.l1, p.l2, k);
  const max = Math.max(...values.map(Math.abs), 1e-12);
  const ctx = canvas.getContext("2d");
  const cell = canvas.width / k;
  for (let i = 0; i < k; i++) {
    for (let j = 0; j < k; j++) {
      const t = values[i * k + j] / max;
      const c = Math.round(255 * Math.min(Math.max(t, 0), 1));
      ctx.fillStyle = `rgb(${c},${Math.round(c * 0.8)},${255 - c})`;
      ctx.fillRect(j * cell, i * cell, cell + 1, cell + 1);
    }
  }
}

function drawSeparability(p) {
  const canvas = el("sepmap");
  const res = 128;
  const map = separability_map(p.n, p.l1 + p.l2, M_MAX, res);
  const colors = ["#ddd", "#7ab", "#d73"];
  const ctx = canvas.getContext("2d");
  const cell = canvas.width / res;
  for (let i = 0; i < res; i++) {
    for (let j = 0; j < res; j++) {
      ctx.fillStyle = colors[map[i * res + j]];
      ctx.fillRect(j * cell, i * cell, cell + 1, cell + 1);
    }
  }
  const scale = canvas.width / M_MAX;
  ctx.fillStyle = "#000";
  ctx.beginPath();
  ctx.arc(p.mc * scale, p.m * scale, 4, 0, 2 * Math.PI);
  ctx.fill();
}

function drawCurves(p) {
  const canvas = el("curves");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let data;
  try {
    data = visibility_curves(p.n, p.m, 181);
  } catch (e) {
    ctx.fillText(`inputs not physical: ${e.message ?? e}`, 10, 20);
    return;
  }
  const points = data.length / 3;
  const x = (i) => 40 + (i / (points - 1)) * (canvas.width - 50);
  const y = (v) => canvas.height - 20 - v * (canvas.height - 30);
  ctx.fillStyle = "rgba(221,119,51,0.2)";
  for (let i = 0; i < points; i++) {
    if (data[3 * i + 2] === 1) ctx.fillRect(x(i) - 1.5, y(1), 3, y(0) - y(1));
  }
  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#000";
  for (const g of [0.25, 0.5]) {
    ctx.setLineDash([2, 3]);
    ctx.beginPath();
    ctx.moveTo(x(0), y(g));
    ctx.lineTo(x(points - 1), y(g));
    ctx.stroke();
    ctx.fillText(String(g), 5, y(g) + 4);
  }
  ctx.fillText("0", x(0) - 3, canvas.height - 5);
  ctx.fillText("π/2", x((points - 1) / 2) - 8, canvas.height - 5);
  ctx.fillText("π", x(points - 1) - 5, canvas.height - 5);
  for (const [offset, dash] of [[0, []], [1, [6, 4]]]) {
    ctx.setLineDash(dash);
    ctx.strokeStyle = "#225";
    ctx.beginPath();
    for (let i = 0; i < points; i++) {
      const v = data[3 * i + offset];
      if (i === 0) ctx.moveTo(x(i), y(v));
      else ctx.lineTo(x(i), y(v));
    }
    ctx.stroke();
  }
  ctx.setLineDash([]);
}

function update() {
  for (const id of ids) el(id).nextElementSibling.value = parseFloat(el(id).value).toFixed(2);
  const p = params();
  drawCurves(p);
  drawSeparability(p);
  try {
    const s = classify(p.n, p.m, p.mc, p.l1, p.l2);
    el("error").textContent = "";
    el("summary").textContent =
      `v-     ${s.v_minus.toFixed(4)}\nv+     ${s.v_plus.toFixed(4)}\nv_m    ${s.v_m.toFixed(4)}\n` +
      `W_HBT  ${s.w_hbt.toFixed(4)}\npurity ${s.purity.toFixed(4)}\n${s.separable ? "separable" : "entangled"}`;
    drawFringe(p);
  } catch (e) {
    el("summary").textContent = "";
    el("error").textContent = e.message ?? String(e);
    el("fringe").getContext("2d").clearRect(0, 0, 256, 256);
  }
}

await init();
for (const id of ids) el(id).addEventListener("input", update);
update();
