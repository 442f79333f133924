"""Exception taxonomy for the whole engine.

Every error carries a stable machine-readable ``code`` plus structured
``details`` so the HTTP gateway can map it to a response without string
matching.
"""

from __future__ import annotations


class SmartError(Exception):
    """Base class; ``code`` identifies the error kind to API clients."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, **self.details}


class MalformedTriple(SmartError):
    code = "malformed_triple"


class SaturationBudgetExceeded(SmartError):
    code = "saturation_budget_exceeded"


class UnknownLabel(SmartError):
    code = "unknown_label"

    def __init__(self, phrase: str, kind: str, position: int | None = None):
        super().__init__(
            f"no {kind} is labeled {phrase!r}",
            phrase=phrase, kind=kind, position=position,
        )
        self.phrase = phrase
        self.kind = kind
        self.position = position


class AmbiguousLabel(SmartError):
    code = "ambiguous_label"

    def __init__(self, phrase: str, kind: str, candidates):
        names = sorted(c.value for c in candidates)
        super().__init__(
            f"label {phrase!r} matches several {kind}s: {', '.join(names)}",
            phrase=phrase, kind=kind, candidates=names,
        )
        self.phrase = phrase
        self.candidates = names


class ParseError(SmartError):
    """Syntax error with an exact 1-based position in the source text."""

    code = "parse_error"

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}", line=line, column=column)
        self.line = line
        self.column = column


class UnknownService(SmartError):
    code = "unknown_service"


class MissingFind(SmartError):
    code = "missing_find"


class MissingThis(SmartError):
    code = "missing_this"


class EmptyPlan(SmartError):
    code = "empty_plan"


class NoServiceFound(SmartError):
    code = "no_service_found"

    def __init__(self, subquery):
        super().__init__(
            f"no registered service satisfies {subquery.describe()}",
            subquery=subquery.describe(),
        )
        self.subquery = subquery


class MissingMandatoryInput(SmartError):
    code = "missing_mandatory_input"

    def __init__(self, param_iri):
        super().__init__(f"mandatory input {param_iri.value} is unbound",
                         paramIri=param_iri.value)
        self.param_iri = param_iri


class InvalidValue(SmartError):
    code = "invalid_value"

    def __init__(self, param_iri, value: str, expected: str):
        super().__init__(
            f"value {value!r} for {param_iri.value} is not a valid {expected}",
            paramIri=param_iri.value, value=value, expected=expected,
        )
        self.param_iri = param_iri


class InvalidJson(SmartError):
    code = "invalid_json"


class ChainBindingError(SmartError):
    code = "chain_binding_error"

    def __init__(self, stage: int, param_iri):
        super().__init__(
            f"stage {stage}: no upstream individual can fill {param_iri.value}",
            stage=stage, paramIri=param_iri.value,
        )
        self.stage = stage
        self.param_iri = param_iri


class TransportError(SmartError):
    code = "transport_error"

    def __init__(self, message: str, url: str, status: int | None = None):
        super().__init__(message, url=url, status=status)
        self.url = url
        self.status = status


class ResponseParseError(SmartError):
    code = "response_parse_error"


class PortInUse(SmartError):
    code = "port_in_use"
