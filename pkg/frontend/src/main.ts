import { createClient } from "./api.js";
import { createState, runSearch, selectReference } from "./state.js";
import type { TuningState } from "./state.js";
import { buildOverlay, decodeRle } from "./overlay.js";
import type { DrawCommand } from "./overlay.js";
import type { SearchParams } from "./types.js";

const state: TuningState = createState();
const client = createClient(
  (window as { SERVICE_URL?: string }).SERVICE_URL ?? "http://127.0.0.1:8000",
);

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const fileInput = $<HTMLInputElement>("file");
const canvas = $<HTMLCanvasElement>("canvas");
const runButton = $<HTMLButtonElement>("run");
const maskToggle = $<HTMLInputElement>("show-mask");
const errorBox = $<HTMLElement>("error");
const statusBox = $<HTMLElement>("status");
const historyBody = $<HTMLTableSectionElement>("history-body");

let imageBitmap: ImageBitmap | null = null;
let dragStart: { x: number; y: number } | null = null;

function renderCommands(ctx: CanvasRenderingContext2D, commands: DrawCommand[]): void {
  for (const cmd of commands) {
    if (cmd.kind === "mask") {
      const flat = decodeRle(cmd.mask);
      ctx.save();
      ctx.globalAlpha = cmd.alpha;
      ctx.fillStyle = cmd.color;
      for (let x = 0; x < cmd.mask.n_rows; x += 1) {
        let runStart = -1;
        for (let y = 0; y <= cmd.mask.n_cols; y += 1) {
          const on = y < cmd.mask.n_cols && flat[x * cmd.mask.n_cols + y] === 1;
          if (on && runStart < 0) runStart = y;
          if (!on && runStart >= 0) {
            ctx.fillRect(runStart, x, y - runStart, 1);
            runStart = -1;
          }
        }
      }
      ctx.restore();
    } else if (cmd.kind === "box") {
      ctx.strokeStyle = cmd.color;
      ctx.lineWidth = 1;
      ctx.strokeRect(cmd.y + 0.5, cmd.x + 0.5, cmd.w - 1, cmd.h - 1);
      if (cmd.label) {
        ctx.fillStyle = cmd.color;
        ctx.font = "10px sans-serif";
        ctx.fillText(cmd.label, cmd.y, Math.max(8, cmd.x - 2));
      }
    } else {
      ctx.strokeStyle = cmd.color;
      ctx.lineWidth = 1;
      ctx.beginPath();
      cmd.points.forEach(([x, y], i) => {
        if (i === 0) ctx.moveTo(y, x);
        else ctx.lineTo(y, x);
      });
      ctx.closePath();
      ctx.stroke();
    }
  }
}

function redraw(): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (imageBitmap) ctx.drawImage(imageBitmap, 0, 0);
  const commands: DrawCommand[] = state.lastResponse
    ? buildOverlay(state.lastResponse, {
        refRect: state.refRect,
        showMask: maskToggle.checked,
      })
    : state.refRect
      ? buildOverlay(
          {
            convention: "",
            method: "",
            params: {},
            solve_time_s: 0,
            cost_evals: 0,
            space_size: 0,
            candidates: [],
            patches: [],
            space_mask_rle: { n_rows: 0, n_cols: 0, counts: [] },
            warnings: [],
          },
          { refRect: state.refRect },
        )
      : [];
  renderCommands(ctx, commands);
}

function syncControls(): void {
  runButton.disabled = state.pending || !state.imageId || !state.refRect;
  errorBox.textContent = state.error ?? "";
  if (state.pending) {
    statusBox.textContent = "searching…";
  } else if (state.lastResponse) {
    const r = state.lastResponse;
    statusBox.textContent =
      `${r.candidates.length} match(es), ${r.cost_evals} cost evaluations, ` +
      `${r.solve_time_s.toFixed(3)} s` +
      (r.warnings.length ? ` — ${r.warnings.join("; ")}` : "");
  } else if (state.refRect) {
    const r = state.refRect;
    statusBox.textContent = `reference x=${r.x} y=${r.y} h=${r.h} w=${r.w}`;
  } else {
    statusBox.textContent = state.imageId ? "drag on the image to pick a reference" : "";
  }
}

function renderHistory(): void {
  historyBody.replaceChildren(
    ...state.history.map((row, i) => {
      const tr = document.createElement("tr");
      const cells = [
        `${i + 1}`,
        row.method,
        `x=${row.refRect.x} y=${row.refRect.y} h=${row.refRect.h} w=${row.refRect.w}`,
        `M=${row.params.top_m} K=${row.params.k_max} p=${row.params.p} ` +
          `stride=${row.params.stride_x}×${row.params.stride_y}` +
          (row.params.gray ? " gray" : ""),
        `${row.costEvals}`,
        row.solveTimeS.toFixed(3),
        `${row.candidateCount}`,
      ];
      for (const text of cells) {
        const td = document.createElement("td");
        td.textContent = text;
        tr.appendChild(td);
      }
      return tr;
    }),
  );
}

function readParams(): SearchParams {
  return {
    method: $<HTMLSelectElement>("method").value as SearchParams["method"],
    top_m: Number($<HTMLInputElement>("top-m").value),
    k_max: Number($<HTMLInputElement>("k-max").value),
    p: Number($<HTMLInputElement>("p").value),
    stride_x: Number($<HTMLInputElement>("stride-x").value),
    stride_y: Number($<HTMLInputElement>("stride-y").value),
    gray: $<HTMLInputElement>("gray").checked,
    patches: $<HTMLInputElement>("patches").checked,
    link_factor: Number($<HTMLInputElement>("link-factor").value),
  };
}

function canvasPoint(ev: MouseEvent): { x: number; y: number } {
  const rect = canvas.getBoundingClientRect();
  return { x: ev.clientY - rect.top, y: ev.clientX - rect.left };
}

fileInput.addEventListener("change", () => {
  const file = fileInput.files?.[0];
  if (!file) return;
  void (async () => {
    state.error = null;
    try {
      const info = await client.uploadImage(file);
      state.imageId = info.id;
      state.imageRows = info.nx;
      state.imageCols = info.ny;
      state.refRect = null;
      state.lastResponse = null;
      imageBitmap = await createImageBitmap(file);
      canvas.width = info.ny;
      canvas.height = info.nx;
    } catch (err) {
      state.error = err instanceof Error ? err.message : String(err);
    }
    redraw();
    syncControls();
  })();
});

canvas.addEventListener("mousedown", (ev) => {
  dragStart = canvasPoint(ev);
});

canvas.addEventListener("mouseup", (ev) => {
  if (!dragStart || !state.imageId) {
    dragStart = null;
    return;
  }
  const rect = selectReference(dragStart, canvasPoint(ev), state.imageRows, state.imageCols);
  dragStart = null;
  if (rect) {
    state.refRect = rect;
    state.lastResponse = null;
    redraw();
    syncControls();
  }
});

runButton.addEventListener("click", () => {
  state.params = readParams();
  syncControls();
  void runSearch(state, client).then(() => {
    redraw();
    renderHistory();
    syncControls();
  });
  syncControls();
});

maskToggle.addEventListener("change", redraw);

syncControls();
