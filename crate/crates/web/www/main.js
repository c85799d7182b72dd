import init, { tree_svg, tiling_svg, line, chi, ones_proportion } from "./pkg/jacaranda_web.js";

const $ = (id) => document.getElementById(id);

function show(el, f, asHtml) {
  try {
    const v = f();
    el.classList.remove("err");
    if (asHtml) el.innerHTML = v; else el.textContent = v;
  } catch (e) {
    el.classList.add("err");
    el.textContent = String(e.message || e);
  }
}

function drawTree() {
  const depth = Number($("tree-depth").value);
  $("tree-depth-v").textContent = depth;
  show($("tree-out"), () => tree_svg($("tree-system").value, Number($("tree-root").value), depth, 940), true);
}

function drawTiling() {
  const depth = Number($("tiling-depth").value);
  $("tiling-depth-v").textContent = depth;
  show($("tiling-out"), () => tiling_svg("bbab", 0, depth, Number($("tiling-res").value)), true);
}

function showLine() {
  const level = Number($("line-level").value);
  show($("line-out"), () => {
    const w = line("bbab", 0, level);
    const ones = [...w].filter((c) => c === "1").length;
    let note = `${ones} ones of ${w.length}`;
    if (level > 0) {
      let u = 0;
      while (level % 2 ** (u + 1) === 0) u++;
      note += `, expected proportion ${ones_proportion(u)}`;
    }
    return `${w}\n${note}`;
  });
}

function showChi() {
  show($("chi-out"), () => chi($("chi-word").value.trim(), Number($("chi-pow").value)));
}

await init();
for (const id of ["tree-system", "tree-root", "tree-depth"]) $(id).addEventListener("input", drawTree);
$("tiling-depth").addEventListener("input", () => ($("tiling-depth-v").textContent = $("tiling-depth").value));
$("tiling-go").addEventListener("click", drawTiling);
$("line-level").addEventListener("input", showLine);
for (const id of ["chi-word", "chi-pow"]) $(id).addEventListener("input", showChi);
drawTree();
drawTiling();
showLine();
showChi();
