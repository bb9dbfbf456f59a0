import init, { oam_curve, conjugate_pair_audit, weak_value_sweep } from "./pkg/kirkwood_demo.js";

const $ = (id) => document.getElementById(id);

// Maps complex points into a canvas with equal axis scales.
function frame(canvas, points) {
  const xs = points.map((p) => p[0]).concat([0]);
  const ys = points.map((p) => p[1]).concat([0]);
  const [x0, x1, y0, y1] = [Math.min(...xs), Math.max(...xs), Math.min(...ys), Math.max(...ys)];
  const span = Math.max(x1 - x0, y1 - y0, 1e-9) * 1.15;
  const cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
  const s = canvas.width / span;
  return ([x, y]) => [canvas.width / 2 + (x - cx) * s, canvas.height / 2 - (y - cy) * s];
}

function axes(ctx, map) {
  const [ox, oy] = map([0, 0]);
  ctx.strokeStyle = "#ddd";
  ctx.beginPath();
  ctx.moveTo(0, oy); ctx.lineTo(ctx.canvas.width, oy);
  ctx.moveTo(ox, 0); ctx.lineTo(ox, ctx.canvas.height);
  ctx.stroke();
}

function polyline(ctx, map, points, color) {
  ctx.strokeStyle = color;
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  points.forEach((p, k) => {
    const [x, y] = map(p);
    k === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
  });
  ctx.stroke();
}

function dots(ctx, map, points, color, r = 3) {
  ctx.fillStyle = color;
  for (const p of points) {
    const [x, y] = map(p);
    ctx.beginPath();
    ctx.arc(x, y, r, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function show(out, verdict, lines) {
  out.className = verdict === "Admissible" ? "good" : "bad";
  out.textContent = [`verdict: ${verdict}`, ...lines].join("\n");
}

function guard(out, f) {
  try {
    f();
  } catch (e) {
    out.className = "bad";
    out.textContent = String(e);
  }
}

function drawOam() {
  const delta = +$("delta").value, dmn = +$("dmn").value, dim = +$("dim").value;
  $("delta-v").textContent = delta.toFixed(2);
  $("dmn-v").textContent = dmn;
  $("dim-v").textContent = dim;
  guard($("oam-out"), () => {
    const r = JSON.parse(oam_curve(dim, dmn, 0, delta));
    const canvas = $("oam-canvas"), ctx = canvas.getContext("2d");
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const map = frame(canvas, r.points);
    axes(ctx, map);
    polyline(ctx, map, r.points, "#1f77b4");
    dots(ctx, map, [r.fit.center], "#d62728");
    show($("oam-out"), r.verdict, [
      `center ${r.fit.center[0].toFixed(7)} (expected ${r.expected_center.toFixed(7)})`,
      `radius ${r.fit.radius.toFixed(7)} (expected ${r.expected_radius.toFixed(7)})`,
    ]);
  });
}

function drawPair() {
  const theta = +$("theta").value;
  $("theta-v").textContent = theta.toFixed(2);
  guard($("pair-out"), () => {
    const r = JSON.parse(conjugate_pair_audit(theta, 65, $("rotation").checked));
    const canvas = $("pair-canvas"), ctx = canvas.getContext("2d");
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const map = frame(canvas, r.k.concat(r.k_conj));
    axes(ctx, map);
    polyline(ctx, map, r.k, "#1f77b4");
    polyline(ctx, map, r.k_conj, "#ff7f0e");
    dots(ctx, map, r.intersections.map((x) => x[0]), "#d62728", 4);
    show($("pair-out"), r.verdict, [`${r.intersections.length} intersection(s)`, r.notes]);
  });
}

function drawSweep() {
  const eta = +$("eta").value, gmax = +$("gmax").value;
  $("eta-v").textContent = eta.toFixed(2);
  $("gmax-v").textContent = gmax.toFixed(2);
  guard($("sweep-out"), () => {
    const r = JSON.parse(weak_value_sweep(eta, gmax, 8, +$("shots").value, +$("seed").value));
    const canvas = $("sweep-canvas"), ctx = canvas.getContext("2d");
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const estimates = r.rows.map((row) => row.estimate);
    const map = frame(canvas, estimates.concat([r.weak_value]));
    axes(ctx, map);
    polyline(ctx, map, estimates, "#1f77b4");
    dots(ctx, map, estimates, "#1f77b4");
    dots(ctx, map, [r.weak_value], "#d62728", 5);
    $("sweep-out").className = "";
    $("sweep-out").textContent = [
      `weak value ${r.weak_value[0].toFixed(4)} ${r.weak_value[1] >= 0 ? "+" : "-"} ${Math.abs(r.weak_value[1]).toFixed(4)}i`,
      ...r.rows.map((row) => `g ${row.g.toFixed(4)}  error ${row.error.toExponential(2)}  stderr ${row.stderr.toExponential(2)}`),
    ].join("\n");
  });
}

await init();
for (const id of ["delta", "dmn", "dim"]) $(id).addEventListener("input", drawOam);
for (const id of ["theta", "rotation"]) $(id).addEventListener("input", drawPair);
for (const id of ["eta", "gmax", "shots", "seed"]) $(id).addEventListener("input", drawSweep);
drawOam();
drawPair();
drawSweep();
