import init, { world_svg, plan, compare } from "./pkg/pathbench_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Math.max(0, parseInt($(id).value, 10) || 0);

function inputs() {
  return { scenario: $("scenario").value, seed: num("seed"), obstacles: num("obstacles") };
}

function show(html) {
  $("view").innerHTML = html;
}

function fail(err) {
  $("stats").innerHTML = `<pre>error: ${err}</pre>`;
}

function drawWorld() {
  const { scenario, seed, obstacles } = inputs();
  try {
    show(world_svg(scenario, seed, obstacles));
    $("stats").innerHTML = "";
  } catch (e) {
    fail(e);
  }
}

function runPlanner(planner) {
  const { scenario, seed, obstacles } = inputs();
  try {
    const out = JSON.parse(plan(scenario, planner, seed, obstacles));
    show(out.svg);
    const r = out.result;
    $("stats").innerHTML = `<pre>${r.planner} seed ${r.seed}: feasible=${r.feasible} ` +
      `length=${r.length.toFixed(3)} iterations=${r.iterations_used} ` +
      `time=${(r.elapsed_s * 1000).toFixed(1)} ms</pre>`;
  } catch (e) {
    fail(e);
  }
}

function runCompare() {
  const { scenario, seed, obstacles } = inputs();
  $("stats").textContent = "running...";
  setTimeout(() => {
    try {
      const rows = JSON.parse(compare(scenario, Math.max(1, num("trials")), seed, obstacles));
      const cell = (v, d) => (v == null ? "–" : v.toFixed(d));
      $("stats").innerHTML = "<table><tr><th>planner</th><th>feasible</th><th>mean length</th>" +
        "<th>std length</th><th>median ms</th></tr>" +
        rows.map((s) => `<tr><td>${s.planner}</td><td>${s.feasible_runs}/${s.runs}</td>` +
          `<td>${cell(s.length && s.length.mean, 3)}</td><td>${cell(s.length && s.length.std, 3)}</td>` +
          `<td>${cell(s.time.median * 1000, 1)}</td></tr>`).join("") + "</table>";
    } catch (e) {
      fail(e);
    }
  }, 0);
}

await init();
$("show").addEventListener("click", drawWorld);
document.querySelectorAll("button[data-planner]").forEach((b) =>
  b.addEventListener("click", () => runPlanner(b.dataset.planner)));
$("compare").addEventListener("click", runCompare);
drawWorld();
