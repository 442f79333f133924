import { ApiError, GatewayClient, type FetchLike } from "./api.js";
import { renderForm } from "./form.js";
import { renderMap } from "./map.js";
import { highlightRow, renderResults } from "./results.js";
import { UiState, collectBindings, validateFields } from "./state.js";

const SUGGESTIONS = [
  "find places related to this place",
  "find the provider of this phone number",
  "find the signal strength of the provider of this phone number",
  "find the owner of this phone number",
];

export interface AppOptions {
  baseUrl?: string;
  fetchFn?: FetchLike;
}

let appCounter = 0;

export interface App {
  state: UiState;
  analyze(query: string): Promise<void>;
  run(): Promise<void>;
}

/** Wire the single-page search loop into the given root element. */
export function createApp(root: HTMLElement, options: AppOptions = {}): App {
  const doc = root.ownerDocument;
  const baseUrl = options.baseUrl ?? "";
  const fetchFn: FetchLike =
    options.fetchFn ?? ((url, init) => fetch(url, init));
  const client = new GatewayClient(baseUrl, fetchFn);
  const state = new UiState();

  // ids must stay unique per document; hooks are data-role attributes so
  // several app instances (tests) can coexist
  const listId = `query-suggestions-${++appCounter}`;
  root.innerHTML = `
    <header class="masthead">
      <h1>SMART search</h1>
      <p class="tagline">describe what to find; services are discovered and
      chained for you</p>
    </header>
    <div class="search-box">
      <input data-role="query-input" type="text" list="${listId}"
             placeholder="${SUGGESTIONS[0]}" />
      <datalist id="${listId}" data-role="query-suggestions"></datalist>
      <button data-role="analyze-button" type="button">Search</button>
    </div>
    <div data-role="error-banner" class="banner error" hidden></div>
    <div data-role="warning-banner" class="banner warning" hidden>
      <span data-role="warning-text"></span>
      <button data-role="warning-dismiss" type="button">dismiss</button>
    </div>
    <div data-role="match-summary" class="match-summary" hidden></div>
    <form data-role="input-form" class="input-form" hidden></form>
    <div data-role="result-pane" class="result-pane" hidden>
      <div data-role="result-list"></div>
      <div data-role="map-pane" class="map-pane" hidden></div>
    </div>
  `;

  const el = <T extends HTMLElement>(role: string): T =>
    root.querySelector<T>(`[data-role="${role}"]`)!;
  const queryInput = el<HTMLInputElement>("query-input");
  const suggestions = el<HTMLElement>("query-suggestions");
  const errorBanner = el<HTMLElement>("error-banner");
  const warningBanner = el<HTMLElement>("warning-banner");
  const matchSummary = el<HTMLElement>("match-summary");
  const formEl = el<HTMLFormElement>("input-form");
  const resultPane = el<HTMLElement>("result-pane");
  const resultList = el<HTMLElement>("result-list");
  const mapPane = el<HTMLElement>("map-pane");

  for (const text of SUGGESTIONS) {
    const option = doc.createElement("option");
    option.value = text;
    suggestions.appendChild(option);
  }

  function showError(code: string, message: string): void {
    state.fail({ code, message });
    errorBanner.textContent = `${message} [${code}]`;
    errorBanner.dataset.code = code;
    errorBanner.hidden = false;
  }

  function clearError(): void {
    errorBanner.hidden = true;
    errorBanner.textContent = "";
    delete errorBanner.dataset.code;
  }

  function showWarnings(warnings: string[]): void {
    if (warnings.length === 0) {
      warningBanner.hidden = true;
      return;
    }
    el<HTMLElement>("warning-text").textContent = warnings.join(" · ");
    warningBanner.hidden = false;
  }

  el<HTMLButtonElement>("warning-dismiss").addEventListener("click", () => {
    warningBanner.hidden = true;
  });

  function renderCurrentForm(): void {
    const analyze = state.analyze;
    if (!analyze) return;
    matchSummary.hidden = false;
    matchSummary.textContent = analyze.matchedServices
      .map((m) => `stage ${m.stage + 1}: ${m.serviceLabel}`)
      .join("  ·  ");
    formEl.hidden = false;
    renderForm(
      formEl,
      analyze.formSpec,
      state.fieldValues,
      (param, value) => state.setFieldValue(param, value),
      () => void run(),
    );
  }

  async function analyze(query: string): Promise<void> {
    clearError();
    const token = state.beginAnalyze(query);
    try {
      const response = await client.analyze(query);
      if (!state.acceptAnalyze(token, response)) return; // superseded
      resultPane.hidden = true;
      renderCurrentForm();
    } catch (error) {
      if (error instanceof ApiError) {
        showError(error.code, error.message);
      } else {
        showError("network_error", String(error));
      }
    }
  }

  async function run(): Promise<void> {
    const analyzeResponse = state.analyze;
    if (!analyzeResponse) return;
    clearError();
    const fields = analyzeResponse.formSpec.fields;
    const problem = validateFields(fields, state.fieldValues);
    if (problem) {
      showError(problem.code, problem.message); // same code the server sends
      return;
    }
    const token = state.beginExecute();
    try {
      const response = await client.execute(
        state.queryText,
        collectBindings(fields, state.fieldValues),
      );
      if (!state.acceptExecute(token, response)) return; // superseded
      resultPane.hidden = false;
      renderResults(resultList, response);
      showWarnings(response.warnings);
      const markers = renderMap(mapPane, response.geo, (nodeId) => {
        highlightRow(resultList, nodeId);
      });
      void markers;
    } catch (error) {
      if (error instanceof ApiError) {
        showError(error.code, error.message);
      } else {
        showError("network_error", String(error));
      }
    }
  }

  el<HTMLButtonElement>("analyze-button").addEventListener("click", () => {
    void analyze(queryInput.value);
  });
  queryInput.addEventListener("keydown", (event) => {
    if ((event as KeyboardEvent).key === "Enter") void analyze(queryInput.value);
  });

  return { state, analyze, run };
}
