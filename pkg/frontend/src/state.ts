import type {
  AnalyzeResponse,
  ErrorPayload,
  ExecuteResponse,
  FormFieldPayload,
} from "./types.js";

/**
 * Page state. At most one analyze and one execute request are live at a
 * time: responses carry the token they were issued under, and a response
 * whose token has been superseded is dropped on the floor.
 */
export class UiState {
  queryText = "";
  analyze: AnalyzeResponse | null = null;
  fieldValues: Record<string, string> = {};
  results: ExecuteResponse | null = null;
  errorBanner: ErrorPayload | null = null;

  private analyzeToken = 0;
  private executeToken = 0;

  beginAnalyze(queryText: string): number {
    this.queryText = queryText;
    this.errorBanner = null;
    return ++this.analyzeToken;
  }

  acceptAnalyze(token: number, response: AnalyzeResponse): boolean {
    if (token !== this.analyzeToken) return false;
    this.analyze = response;
    this.results = null;
    const keep = new Set(response.formSpec.fields.map((f) => f.paramIri));
    for (const key of Object.keys(this.fieldValues)) {
      if (!keep.has(key)) delete this.fieldValues[key];
    }
    return true;
  }

  beginExecute(): number {
    this.errorBanner = null;
    return ++this.executeToken;
  }

  acceptExecute(token: number, response: ExecuteResponse): boolean {
    if (token !== this.executeToken) return false;
    this.results = response;
    return true;
  }

  setFieldValue(paramIri: string, value: string): void {
    const known = this.analyze?.formSpec.fields.some(
      (f) => f.paramIri === paramIri,
    );
    if (!known) return; // fieldValues keys stay within the current form
    this.fieldValues[paramIri] = value;
  }

  fail(error: ErrorPayload): void {
    this.errorBanner = error;
  }
}

export interface FieldProblem {
  code: "missing_mandatory_input" | "invalid_value";
  paramIri: string;
  message: string;
}

const DECIMAL_RE = /^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$/;

/**
 * Client-side check mirroring the server's binding validation, so a bad
 * submission is blocked with the same error code the gateway would return.
 */
export function validateFields(
  fields: FormFieldPayload[],
  values: Record<string, string>,
): FieldProblem | null {
  for (const field of fields) {
    const raw = (values[field.paramIri] ?? "").trim();
    if (!raw) {
      if (field.mandatory) {
        return {
          code: "missing_mandatory_input",
          paramIri: field.paramIri,
          message: `${field.label} is required`,
        };
      }
      continue;
    }
    if (field.valueType === "decimal" && !DECIMAL_RE.test(raw)) {
      return {
        code: "invalid_value",
        paramIri: field.paramIri,
        message: `${field.label} must be a number`,
      };
    }
    if (field.valueType === "boolean" && raw !== "true" && raw !== "false") {
      return {
        code: "invalid_value",
        paramIri: field.paramIri,
        message: `${field.label} must be true or false`,
      };
    }
  }
  return null;
}

/** Non-empty trimmed values, ready to post as execute bindings. */
export function collectBindings(
  fields: FormFieldPayload[],
  values: Record<string, string>,
): Record<string, string> {
  const bindings: Record<string, string> = {};
  for (const field of fields) {
    const raw = (values[field.paramIri] ?? "").trim();
    if (raw) bindings[field.paramIri] = raw;
  }
  return bindings;
}
