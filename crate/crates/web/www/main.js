import init, { spectrumJson, angularProfile, fdDegrees } from "./pkg/wedge_spectrum_web.js";

const $ = (id) => document.getElementById(id);
const colours = { TM: "#1f5fa8", TE: "#c0392b" };

function fill(table, header, rows) {
  table.innerHTML = "";
  const head = table.insertRow();
  for (const h of header) head.insertCell().outerHTML = `<th>${h}</th>`;
  for (const row of rows) {
    const tr = table.insertRow();
    for (const cell of row) tr.insertCell().textContent = cell;
  }
}

function drawSpectrum(modes, fmax) {
  const c = $("spectrum-plot");
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  const x = (f) => 40 + (c.width - 60) * f / fmax;
  g.strokeStyle = "#888";
  g.beginPath();
  g.moveTo(x(0), 130);
  g.lineTo(x(fmax), 130);
  g.stroke();
  g.fillStyle = "#444";
  for (let f = 0; f <= fmax; f += 2) g.fillText(`${f}`, x(f) - 4, 148);
  for (const mode of modes) {
    g.strokeStyle = colours[mode.pol];
    g.lineWidth = mode.family === "sectoral" ? 2 : 1;
    const top = mode.pol === "TM" ? 20 : 60;
    g.beginPath();
    g.moveTo(x(mode.freq_ghz), top);
    g.lineTo(x(mode.freq_ghz), 130);
    g.stroke();
  }
  g.lineWidth = 1;
  g.fillStyle = colours.TM;
  g.fillText("TM", 6, 30);
  g.fillStyle = colours.TE;
  g.fillText("TE", 6, 70);
}

function updateSpectrum() {
  const radius = Number($("radius").value);
  const wedge = Number($("wedge").value);
  const fmax = Number($("fmax").value);
  $("wedge-out").textContent = wedge;
  try {
    const modes = JSON.parse(spectrumJson(radius, wedge, fmax));
    $("spectrum-error").textContent = "";
    drawSpectrum(modes, fmax);
    fill($("spectrum-table"), ["pol", "n", "k", "m", "ν", "f (GHz)", "family"],
      modes.map((r) => [r.pol, r.n, r.k, r.m, r.nu, r.freq_ghz, r.family]));
  } catch (e) {
    $("spectrum-error").textContent = e.message ?? String(e);
  }
}

function updateProfile() {
  const m = Number($("m").value);
  const k = Number($("k").value);
  const c = $("profile-plot");
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  try {
    const p = JSON.parse(angularProfile(m, k, 1024));
    const x = (t) => 30 + (c.width - 40) * t / Math.PI;
    const y = (v) => c.height / 2 - (c.height / 2 - 10) * v;
    g.strokeStyle = "#bbb";
    g.beginPath();
    g.moveTo(x(0), y(0));
    g.lineTo(x(Math.PI), y(0));
    g.stroke();
    g.strokeStyle = "#1f5fa8";
    g.beginPath();
    p.theta.forEach((t, i) => (i ? g.lineTo(x(t), y(p.value[i])) : g.moveTo(x(t), y(p.value[i]))));
    g.stroke();
    $("profile-info").textContent =
      `Rayleigh quotient ${p.casimir.toFixed(8)}, ν(ν+1) = ${p.expected.toFixed(8)}`;
  } catch (e) {
    $("profile-info").textContent = e.message ?? String(e);
  }
}

function runFd() {
  const m = Number($("fd-m").value);
  const grid = Number($("fd-grid").value);
  try {
    const nus = fdDegrees(m, grid, 3);
    fill($("fd-table"), ["k", "ν (FD)", "m + k", "rel. dev."],
      Array.from(nus, (nu, k) => [k, nu.toFixed(6), (m + k).toFixed(6), ((nu - m - k) / (m + k)).toExponential(2)]));
  } catch (e) {
    fill($("fd-table"), ["error"], [[e.message ?? String(e)]]);
  }
}

await init();
for (const id of ["radius", "wedge", "fmax"]) $(id).addEventListener("input", updateSpectrum);
for (const id of ["m", "k"]) $(id).addEventListener("input", updateProfile);
$("fd-run").addEventListener("click", runFd);
updateSpectrum();
updateProfile();
runFd();
