import init, { barcode, components, loops } from "./pkg/devtopo_demo.js";

const SIZE = 500;
const COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];
const NS = "http://www.w3.org/2000/svg";

const board = document.getElementById("board");
const epsInput = document.getElementById("eps");
const capInput = document.getElementById("cap");
const status = document.getElementById("status");

// unit-square coordinates
let points = [];
let cycles = [];
let shown = -1;

const flat = () => Float64Array.from(points.flat());

function el(name, attrs) {
  const e = document.createElementNS(NS, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  return e;
}

function drawBoard() {
  board.replaceChildren();
  if (points.length === 0) return;
  const eps = Number(epsInput.value);
  const slice = JSON.parse(components(flat(), eps));
  for (const [i, j] of slice.edges) {
    board.append(el("line", {
      x1: points[i][0] * SIZE, y1: points[i][1] * SIZE,
      x2: points[j][0] * SIZE, y2: points[j][1] * SIZE,
      stroke: "#bbb",
    }));
  }
  if (shown >= 0 && cycles[shown]) {
    for (const loop of cycles[shown].loops) {
      const pts = loop.map((v) => `${points[v][0] * SIZE},${points[v][1] * SIZE}`).join(" ");
      board.append(el("polygon", { points: pts, fill: "rgba(214,39,40,0.12)", stroke: "#d62728", "stroke-width": 2 }));
    }
  }
  points.forEach(([x, y], i) => {
    const c = slice.cluster[i];
    board.append(el("circle", {
      cx: x * SIZE, cy: y * SIZE, r: 4,
      fill: c < COLORS.length ? COLORS[c] : "#444",
    }));
  });
  document.getElementById("summary").textContent =
    `${points.length} points, ${slice.sizes.length} components at ε = ${eps.toFixed(3)}`;
}

function drawLoops() {
  const list = document.getElementById("loops");
  list.replaceChildren();
  cycles.forEach((c, i) => {
    const li = document.createElement("li");
    const death = c.death === null ? "∞" : c.death.toFixed(3);
    li.textContent = `[${c.birth.toFixed(3)}, ${death}) through ${c.loops.map((l) => l.length).join("+")} points`;
    if (i === shown) li.className = "on";
    li.onclick = () => { shown = shown === i ? -1 : i; drawLoops(); drawBoard(); };
    list.append(li);
  });
}

function update() {
  status.textContent = "";
  document.getElementById("eps-value").textContent = Number(epsInput.value).toFixed(3);
  try {
    if (points.length === 0) {
      cycles = [];
      document.getElementById("barcode").replaceChildren();
      document.getElementById("summary").textContent = "";
    } else {
      const cap = Number(capInput.value);
      document.getElementById("barcode").innerHTML = barcode(flat(), cap);
      cycles = JSON.parse(loops(flat(), cap));
    }
    if (shown >= cycles.length) shown = -1;
    drawLoops();
    drawBoard();
  } catch (e) {
    status.textContent = e.message ?? String(e);
  }
}

board.addEventListener("click", (ev) => {
  const r = board.getBoundingClientRect();
  const p = [(ev.clientX - r.left) / r.width, (ev.clientY - r.top) / r.height];
  if (ev.shiftKey) {
    let best = -1, bd = 0.02 * 0.02;
    points.forEach(([x, y], i) => {
      const d = (x - p[0]) ** 2 + (y - p[1]) ** 2;
      if (d < bd) { bd = d; best = i; }
    });
    if (best >= 0) points.splice(best, 1);
  } else {
    points.push(p);
  }
  shown = -1;
  update();
});

epsInput.addEventListener("input", () => {
  document.getElementById("eps-value").textContent = Number(epsInput.value).toFixed(3);
  try { drawBoard(); } catch (e) { status.textContent = e.message ?? String(e); }
});
capInput.addEventListener("change", () => {
  epsInput.max = capInput.value;
  update();
});

function seeded(seed) {
  return () => {
    seed = (seed * 1664525 + 1013904223) % 4294967296;
    return seed / 4294967296;
  };
}

document.getElementById("preset-ring").onclick = () => {
  const rnd = seeded(7);
  points = Array.from({ length: 24 }, (_, i) => {
    const t = (2 * Math.PI * i) / 24;
    const r = 0.3 + 0.03 * (rnd() - 0.5);
    return [0.5 + r * Math.cos(t), 0.5 + r * Math.sin(t)];
  });
  shown = -1;
  update();
};
document.getElementById("preset-blobs").onclick = () => {
  const rnd = seeded(11);
  points = Array.from({ length: 40 }, (_, i) => {
    const cx = i < 20 ? 0.3 : 0.7;
    return [cx + 0.12 * (rnd() - 0.5), 0.5 + 0.12 * (rnd() - 0.5)];
  });
  shown = -1;
  update();
};
document.getElementById("clear").onclick = () => { points = []; shown = -1; update(); };

await init();
document.getElementById("preset-ring").click();
