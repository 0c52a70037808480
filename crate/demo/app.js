// Interactive well explorer: potential curve, bound levels, and the selected
// eigenfunction drawn at its energy. Plain canvas 2D, no framework.

import init, { potential_curve, spectrum, wavefunction } from "./pkg/triwell_wasm.js";

const depthInput = document.getElementById("depth");
const depthOut = document.getElementById("depthOut");
const conventionInput = document.getElementById("convention");
const stateInput = document.getElementById("state");
const levelsDiv = document.getElementById("levels");
const errorP = document.getElementById("error");
const canvas = document.getElementById("plot");
const ctx = canvas.getContext("2d");

const V_MIN = 0.01;
const V_MAX = 40.0;

function depthValue() {
  const t = parseFloat(depthInput.value);
  return V_MIN * Math.pow(V_MAX / V_MIN, t);
}

function redraw() {
  errorP.textContent = "";
  try {
    const vbar0 = depthValue();
    const conv = conventionInput.value;
    depthOut.value = vbar0.toPrecision(3);

    const spec = JSON.parse(spectrum(vbar0, conv));
    syncStateSelector(spec.states.length);
    const sel = Math.min(parseInt(stateInput.value || "0", 10), spec.states.length - 1);

    const edge = conv === "halfwidth2" ? 2 : 1;
    const span = Math.max(edge + 1.5, edge * 2);
    const pot = JSON.parse(potential_curve(vbar0, conv, span, 400));
    const wave = JSON.parse(wavefunction(vbar0, conv, sel, 600));

    draw(vbar0, span, pot, spec, wave, sel);
    listLevels(spec, sel);
  } catch (e) {
    errorP.textContent = String(e);
  }
}

function syncStateSelector(count) {
  if (stateInput.options.length !== count) {
    const prev = parseInt(stateInput.value || "0", 10);
    stateInput.replaceChildren(
      ...Array.from({ length: count }, (_, i) => new Option(`n = ${i}`, i))
    );
    stateInput.value = String(Math.min(prev, count - 1));
  }
}

function listLevels(spec, sel) {
  levelsDiv.replaceChildren(
    ...spec.states.map((s) => {
      const div = document.createElement("div");
      div.textContent = `n=${s.n}  (${s.parity})  Ē = ${s.ebar.toPrecision(10)}`;
      if (s.n === sel) div.className = "sel";
      return div;
    })
  );
}

function draw(vbar0, span, pot, spec, wave, sel) {
  const W = canvas.width;
  const H = canvas.height;
  ctx.clearRect(0, 0, W, H);

  const margin = { l: 70, r: 20, t: 20, b: 40 };
  const eTop = 0.15 * vbar0;
  const eBot = -1.12 * vbar0;
  const X = (y) => margin.l + ((y + span) / (2 * span)) * (W - margin.l - margin.r);
  const Y = (e) => margin.t + ((eTop - e) / (eTop - eBot)) * (H - margin.t - margin.b);

  const dark = matchMedia("(prefers-color-scheme: dark)").matches;
  const fg = dark ? "#ddd" : "#222";
  const grid = dark ? "#555" : "#bbb";

  // axes
  ctx.strokeStyle = grid;
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(margin.l, Y(0));
  ctx.lineTo(W - margin.r, Y(0));
  ctx.stroke();

  ctx.fillStyle = fg;
  ctx.font = "12px system-ui";
  ctx.fillText("0", margin.l - 18, Y(0) + 4);
  ctx.fillText((-vbar0).toPrecision(3), margin.l - 58, Y(-vbar0) + 4);
  ctx.fillText("y (units of a)", W / 2 - 30, H - 12);

  // potential
  ctx.strokeStyle = dark ? "#7ab8ff" : "#1f5fbf";
  ctx.lineWidth = 2;
  ctx.beginPath();
  pot.y.forEach((y, i) => {
    const px = X(y);
    const py = Y(pot.v[i]);
    i === 0 ? ctx.moveTo(px, py) : ctx.lineTo(px, py);
  });
  ctx.stroke();

  // energy levels across the classically allowed width
  spec.states.forEach((s) => {
    const frac = 1 + s.ebar / vbar0; // turning point fraction of the edge
    const xw = pot.edge * frac;
    ctx.strokeStyle = s.n === sel ? (dark ? "#ffb366" : "#c55a11") : grid;
    ctx.lineWidth = s.n === sel ? 2 : 1;
    ctx.setLineDash(s.n === sel ? [] : [5, 4]);
    ctx.beginPath();
    ctx.moveTo(X(-xw), Y(s.ebar));
    ctx.lineTo(X(xw), Y(s.ebar));
    ctx.stroke();
  });
  ctx.setLineDash([]);

  // selected wavefunction riding on its level
  const psiMax = Math.max(...wave.psi.map(Math.abs));
  const scale = 0.22 * vbar0 / (psiMax || 1);
  ctx.strokeStyle = dark ? "#ffb366" : "#c55a11";
  ctx.lineWidth = 2;
  ctx.beginPath();
  let started = false;
  wave.y.forEach((y, i) => {
    if (y < -span || y > span) return;
    const px = X(y);
    const py = Y(wave.ebar + scale * wave.psi[i]);
    started ? ctx.lineTo(px, py) : ctx.moveTo(px, py);
    started = true;
  });
  ctx.stroke();
}

await init();
depthInput.addEventListener("input", redraw);
conventionInput.addEventListener("input", redraw);
stateInput.addEventListener("input", redraw);
redraw();
