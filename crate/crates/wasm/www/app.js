// Plain-JS glue for the qconv demo. Build the wasm package first:
//   wasm-pack build crates/wasm --target web --out-dir www/pkg
// then serve crates/wasm/www/ from any static file server.

import init, {
  demo_image,
  filter_image,
  spectrum_image,
  verify_report,
} from "./pkg/qconv_wasm.js";

const SIZE = 128; // power of two keeps every transform on the fast path

const el = (id) => document.getElementById(id);
const inputCanvas = el("input-canvas");
const outputCanvas = el("output-canvas");
const spectrumCanvas = el("spectrum-canvas");
const readout = el("readout");

let inputPixels = null; // Uint8ClampedArray, RGBA, SIZE x SIZE

function drawPixels(canvas, pixels) {
  const ctx = canvas.getContext("2d");
  ctx.putImageData(new ImageData(new Uint8ClampedArray(pixels), SIZE, SIZE), 0, 0);
}

function rootsSpec() {
  const preset = el("roots-preset").value;
  return preset === "custom" ? el("roots-custom").value : preset;
}

function setBusy(busy) {
  el("run-filter").disabled = busy;
  el("run-verify").disabled = busy;
}

// yield past the next paint so busy indicators render before wasm blocks
function afterPaint(work) {
  requestAnimationFrame(() => setTimeout(work, 0));
}

function runFilter() {
  if (!inputPixels) return;
  setBusy(true);
  readout.textContent = "computing…";
  afterPaint(() => {
    try {
      const method = el("method").value;
      const started = performance.now();
      const result = filter_image(
        inputPixels,
        SIZE,
        SIZE,
        el("kernel").value,
        method,
        rootsSpec(),
      );
      const elapsed = performance.now() - started;
      drawPixels(outputCanvas, result.pixels);
      drawPixels(spectrumCanvas, spectrum_image(inputPixels, SIZE, SIZE, rootsSpec()));
      const deviation =
        method === "spatial"
          ? "0 (reference)"
          : result.deviation.toExponential(3);
      readout.textContent =
        `method=${method}  deviation-vs-spatial=${deviation}  ` +
        `scalar-leak=${result.scalarLeak.toExponential(3)}  time=${elapsed.toFixed(0)}ms`;
    } catch (err) {
      readout.textContent = `error: ${err}`;
    } finally {
      setBusy(false);
    }
  });
}

function runVerify() {
  setBusy(true);
  const status = el("verify-status");
  status.textContent = "running…";
  afterPaint(() => {
    try {
      const started = performance.now();
      const rows = JSON.parse(
        verify_report(
          Number(el("seed").value) >>> 0,
          Number(el("size").value) >>> 0,
          el("suite").value,
        ),
      );
      const elapsed = performance.now() - started;
      const body = el("verify-table").querySelector("tbody");
      body.replaceChildren(
        ...rows.map((r) => {
          const tr = document.createElement("tr");
          const label = r.pass ? "pass" : "FAIL";
          tr.innerHTML =
            `<td>${r.suite}</td><td>${r.identity}</td>` +
            `<td class="num">${r.max_err.toExponential(3)}</td>` +
            `<td class="num">${r.tolerance.toExponential(1)}</td>` +
            `<td class="${r.pass ? "pass" : "fail"}">${label}</td>`;
          return tr;
        }),
      );
      el("verify-table").hidden = false;
      const failures = rows.filter((r) => !r.pass).length;
      status.textContent = `${rows.length} identities, ${failures} failures, ${elapsed.toFixed(0)}ms`;
    } catch (err) {
      status.textContent = `error: ${err}`;
    } finally {
      setBusy(false);
    }
  });
}

function loadUpload(file) {
  const img = new Image();
  img.onload = () => {
    const scratch = document.createElement("canvas");
    scratch.width = SIZE;
    scratch.height = SIZE;
    const ctx = scratch.getContext("2d");
    // cover-crop to a square, then scale down to SIZE
    const side = Math.min(img.width, img.height);
    ctx.drawImage(
      img,
      (img.width - side) / 2,
      (img.height - side) / 2,
      side,
      side,
      0,
      0,
      SIZE,
      SIZE,
    );
    inputPixels = ctx.getImageData(0, 0, SIZE, SIZE).data;
    drawPixels(inputCanvas, inputPixels);
    URL.revokeObjectURL(img.src);
    runFilter();
  };
  img.src = URL.createObjectURL(file);
}

await init();

inputPixels = demo_image(SIZE, SIZE);
drawPixels(inputCanvas, inputPixels);

el("roots-preset").addEventListener("change", () => {
  el("roots-custom").disabled = el("roots-preset").value !== "custom";
});
el("upload").addEventListener("change", (e) => {
  if (e.target.files.length > 0) loadUpload(e.target.files[0]);
});
el("run-filter").addEventListener("click", runFilter);
el("run-verify").addEventListener("click", runVerify);

runFilter();
