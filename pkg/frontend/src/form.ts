import type { FormFieldPayload, FormSpecPayload } from "./types.js";

/**
 * Render the dynamically generated input form: one control per field,
 * grouped under its pathLabels heading, mandatory fields marked. An empty
 * field list collapses to the Run button alone.
 */
export function renderForm(
  container: HTMLElement,
  spec: FormSpecPayload,
  values: Record<string, string>,
  onChange: (paramIri: string, value: string) => void,
  onSubmit: () => void,
): void {
  const doc = container.ownerDocument;
  container.textContent = "";

  const title = doc.createElement("h2");
  title.className = "form-title";
  title.textContent = spec.title;
  container.appendChild(title);

  const groups = new Map<string, FormFieldPayload[]>();
  for (const field of spec.fields) {
    const key = field.pathLabels.join(" / ");
    const bucket = groups.get(key) ?? [];
    bucket.push(field);
    groups.set(key, bucket);
  }

  for (const [heading, fields] of groups) {
    const section = doc.createElement("section");
    section.className = "form-group";
    if (heading) {
      const h = doc.createElement("h3");
      h.className = "form-group-heading";
      h.textContent = heading;
      section.appendChild(h);
    }
    for (const field of fields) {
      section.appendChild(renderField(doc, field, values, onChange, onSubmit));
    }
    container.appendChild(section);
  }

  const run = doc.createElement("button");
  run.type = "button";
  run.className = "run-button";
  run.textContent = "Run";
  run.addEventListener("click", onSubmit);
  container.appendChild(run);
}

function renderField(
  doc: Document,
  field: FormFieldPayload,
  values: Record<string, string>,
  onChange: (paramIri: string, value: string) => void,
  onSubmit: () => void,
): HTMLElement {
  const row = doc.createElement("label");
  row.className = "form-field";
  row.dataset.paramIri = field.paramIri;

  const caption = doc.createElement("span");
  caption.className = "field-label";
  caption.textContent = field.mandatory ? `${field.label} *` : field.label;
  row.appendChild(caption);

  const input = doc.createElement("input");
  input.className = "field-input";
  input.name = field.paramIri;
  if (field.valueType === "boolean") {
    input.type = "checkbox";
    input.checked = values[field.paramIri] === "true";
    input.addEventListener("change", () => {
      onChange(field.paramIri, input.checked ? "true" : "false");
    });
  } else {
    input.type = "text";
    if (field.valueType === "decimal") {
      input.inputMode = "decimal";
      input.dataset.valueType = "decimal";
    }
    input.value = values[field.paramIri] ?? "";
    input.addEventListener("input", () => {
      onChange(field.paramIri, input.value);
      if (field.valueType === "decimal") {
        input.classList.toggle(
          "invalid",
          input.value.trim() !== "" &&
            !/^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)$/.test(input.value.trim()),
        );
      }
    });
    input.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") onSubmit();
    });
  }
  row.appendChild(input);
  return row;
}
