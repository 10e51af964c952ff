/** Wiring: load the map list, handle focus selection and what-if runs. */

import { ApiClient, ApiError } from "./api.js";
import {
  renderFocusPanel,
  renderHistory,
  renderJunctionBadges,
  renderMap,
  renderWhatIfResult,
  toast,
} from "./render.js";
import { ExplorerState, parseAssignment } from "./state.js";
import type { WhatIfRequest } from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

export async function boot(client = new ApiClient("")): Promise<ExplorerState> {
  const state = new ExplorerState(client);
  const svg = byId<HTMLElement>("map-canvas") as unknown as SVGSVGElement;
  const toasts = byId<HTMLDivElement>("toasts");
  const mapSelect = byId<HTMLSelectElement>("map-select");
  const causeSelect = byId<HTMLSelectElement>("cause-select");
  const effectSelect = byId<HTMLSelectElement>("effect-select");
  const focusError = byId<HTMLSpanElement>("focus-error");

  const fail = (err: unknown) => {
    if (err instanceof ApiError) toast(toasts, err.code, err.message);
    else toast(toasts, "ERROR", String(err));
  };

  const refresh = () => {
    renderMap(svg, state);
    renderJunctionBadges(byId("junction-badges"), state);
    renderFocusPanel(byId("focus-panel"), state);
  };

  const fillNodeSelects = () => {
    for (const select of [causeSelect, effectSelect]) {
      select.replaceChildren();
      for (const node of state.adjacency?.nodes ?? []) {
        const option = document.createElement("option");
        option.value = node;
        option.textContent = state.labelOf(node);
        select.appendChild(option);
      }
    }
  };

  const loadMap = async (mapId: string) => {
    try {
      await state.loadMap(mapId);
      fillNodeSelects();
      refresh();
    } catch (err) {
      fail(err);
    }
  };

  try {
    const maps = await client.maps();
    mapSelect.replaceChildren();
    for (const id of maps.maps) {
      const option = document.createElement("option");
      option.value = id;
      option.textContent = id;
      mapSelect.appendChild(option);
    }
    if (maps.maps.length === 0) {
      byId("empty-state").hidden = false;
    } else {
      await loadMap(maps.maps[0] as string);
    }
  } catch (err) {
    fail(err);
  }

  mapSelect.addEventListener("change", () => void loadMap(mapSelect.value));

  byId<HTMLButtonElement>("focus-button").addEventListener("click", async () => {
    focusError.textContent = "";
    if (causeSelect.value === effectSelect.value) {
      focusError.textContent = "pick two different variables";
      return;
    }
    try {
      await state.selectFocus(causeSelect.value, effectSelect.value);
      refresh();
    } catch (err) {
      fail(err);
    }
  });

  // node clicks fill the cause first, then the effect
  svg.addEventListener("click", (event) => {
    const group = (event.target as Element).closest("g.node") as SVGGElement | null;
    const node = group?.dataset.node;
    if (!node) return;
    if (!causeSelect.dataset.clicked) {
      causeSelect.value = node;
      causeSelect.dataset.clicked = "1";
    } else {
      effectSelect.value = node;
      delete causeSelect.dataset.clicked;
    }
  });

  const historyBox = byId<HTMLDivElement>("whatif-history");
  const resultBox = byId<HTMLDivElement>("whatif-result");

  const showEntry = (entry: Awaited<ReturnType<ExplorerState["runWhatIf"]>>) => {
    renderWhatIfResult(resultBox, entry.response);
    renderHistory(historyBox, state.history, (past) => {
      void state.replay(past).then(showEntry).catch(fail);
    });
  };

  byId<HTMLButtonElement>("whatif-button").addEventListener("click", async () => {
    try {
      const scmName = byId<HTMLSelectElement>("scm-select").value;
      const scm = await client.scmFixture(scmName);
      const request: WhatIfRequest = {
        scm,
        observe: parseAssignment(byId<HTMLInputElement>("observe-input").value),
        do: parseAssignment(byId<HTMLInputElement>("do-input").value),
        query: byId<HTMLInputElement>("query-input").value.trim(),
      };
      showEntry(await state.runWhatIf(request));
    } catch (err) {
      fail(err);
    }
  });

  return state;
}

if (typeof document !== "undefined" && document.getElementById("map-canvas")) {
  void boot();
}
