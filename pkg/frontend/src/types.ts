/** Payload shapes of the gateway API, mirrored verbatim. */

export interface TermInfo {
  iri: string;
  label: string;
}

export interface PlanStage {
  inputType: TermInfo | null;
  predicate: TermInfo;
  outputType: TermInfo | null;
}

export interface PlanPayload {
  seedType: TermInfo;
  stages: PlanStage[];
}

export interface FormFieldPayload {
  paramIri: string;
  label: string;
  valueType: "string" | "decimal" | "boolean";
  mandatory: boolean;
  pathLabels: string[];
}

export interface FormSpecPayload {
  serviceIri: string;
  title: string;
  fields: FormFieldPayload[];
}

export interface MatchedService {
  stage: number;
  service: string;
  serviceLabel: string;
  relation: string;
  rank: { predicate: number; input: number; output: number };
  inverted: boolean;
}

export interface AnalyzeResponse {
  plan: PlanPayload;
  matchedServices: MatchedService[];
  formSpec: FormSpecPayload;
}

export interface NodeLink {
  predicate: string;
  targetId: string;
}

export interface NodePayload {
  id: string;
  type: string | null;
  typeLabel: string | null;
  literals: Record<string, string[]>;
  links: NodeLink[];
}

export interface GeoPoint {
  id: string;
  label: string;
  lat: number;
  lng: number;
}

export interface ExecuteResponse {
  nodes: NodePayload[];
  roots: string[];
  geo: GeoPoint[];
  warnings: string[];
}

export interface ErrorPayload {
  code: string;
  message: string;
  [key: string]: unknown;
}
