"""Tiny path language over XML trees, plus the JSON-to-XML mapping.

The path grammar is exactly: "/", ".", "name", "name/name..." and
"/name/name...". No predicates, attributes or wildcards.

Evaluation has no parent pointers, so the context node passed in *is* the
document for absolute paths: on a document wrapper the first step matches
the root element (the wrapper's child); on an element the element itself is
the root and must match the first step. "/" returns the document root
element, "." the context node, and every further step selects children by
element name in document order.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from xml.etree import ElementTree as ET

from .errors import InvalidJson, ResponseParseError

DOCUMENT_NAME = ""

_NAME_STEP = re.compile(r"^[^/\s]+$")


@dataclass(frozen=True)
class PathExpr:
    steps: tuple[str, ...]   # element names; the self step is the empty tuple
    absolute: bool
    source: str

    def __str__(self):
        return self.source


def parse_path(text: str) -> PathExpr:
    if text == "/":
        return PathExpr((), True, text)
    if text == ".":
        return PathExpr((), False, text)
    if not text or text != text.strip():
        raise ValueError(f"not a path expression: {text!r}")
    absolute = text.startswith("/")
    body = text[1:] if absolute else text
    if not body or body.endswith("/"):
        raise ValueError(f"not a path expression: {text!r}")
    steps = body.split("/")
    for step in steps:
        if not _NAME_STEP.match(step) or step in (".", ".."):
            raise ValueError(f"bad path step {step!r} in {text!r}")
    return PathExpr(tuple(steps), absolute, text)


@dataclass
class XmlNode:
    name: str
    attributes: dict[str, str] = field(default_factory=dict)
    children: list["XmlNode"] = field(default_factory=list)
    text: str = ""

    @property
    def is_document(self) -> bool:
        return self.name == DOCUMENT_NAME

    def child_elements(self, name: str) -> list["XmlNode"]:
        return [c for c in self.children if c.name == name]


def document(root: XmlNode) -> XmlNode:
    """Wrap a root element in a document node (the context for resultXPath)."""
    if root.is_document:
        return root
    return XmlNode(DOCUMENT_NAME, children=[root])


def eval_path(context: XmlNode, path: PathExpr | str) -> list[XmlNode]:
    if isinstance(path, str):
        path = parse_path(path)
    if path.absolute:
        roots = context.children if context.is_document else [context]
        if not path.steps:
            return list(roots)
        current = [r for r in roots if r.name == path.steps[0]]
        steps = path.steps[1:]
    elif not path.steps:
        return [context]
    else:
        current = [context]
        steps = path.steps
    for step in steps:
        current = [child for node in current for child in node.child_elements(step)]
    return current


# -- XML parsing -----------------------------------------------------------

def _from_etree(el: ET.Element) -> XmlNode:
    children = [_from_etree(c) for c in el]
    # Direct character data only: leading text plus the tail of each child.
    text = el.text or ""
    for c in el:
        text += c.tail or ""
    return XmlNode(el.tag, dict(el.attrib), children, text)


def parse_xml(body: bytes | str) -> XmlNode:
    """Parse an XML document body into its root element node."""
    try:
        return _from_etree(ET.fromstring(body))
    except ET.ParseError as exc:
        raise ResponseParseError(f"malformed XML response: {exc}") from exc


# -- JSON to XML -----------------------------------------------------------

_XML_NAME_START = re.compile(r"[A-Za-z_]")
_XML_NAME_CHAR = re.compile(r"[A-Za-z0-9_.-]")


def _xml_name(key: str) -> str:
    if not key:
        return "_"
    chars = [key[0] if _XML_NAME_START.match(key[0]) else "_"]
    chars += [c if _XML_NAME_CHAR.match(c) else "_" for c in key[1:]]
    return "".join(chars)


def _scalar_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(name: str, value, parent: XmlNode):
    if isinstance(value, list):
        for item in value:
            _emit(name, item, parent)
    elif isinstance(value, dict):
        node = XmlNode(name)
        for key in value:
            _emit(_xml_name(key), value[key], node)
        parent.children.append(node)
    else:
        parent.children.append(XmlNode(name, text=_scalar_text(value)))


def json_to_xml(body: bytes | str) -> XmlNode:
    """Map a JSON document onto an XML tree rooted at <resp>.

    Object keys become child elements, arrays repeat their key's element
    (items of a top-level array are named "item"), scalars become text.
    """
    if isinstance(body, bytes):
        body = body.decode("utf-8", errors="replace")
    try:
        data = json.loads(body)
    except json.JSONDecodeError as exc:
        raise InvalidJson(f"malformed JSON response: {exc}") from exc
    root = XmlNode("resp")
    if isinstance(data, dict):
        for key in data:
            _emit(_xml_name(key), data[key], root)
    elif isinstance(data, list):
        _emit("item", data, root)
    else:
        root.text = _scalar_text(data)
    return root


def sniff_and_parse(content_type: str, body: bytes) -> XmlNode:
    """Pick the XML or JSON reader from the content type / body shape."""
    if "json" in (content_type or "").lower():
        return json_to_xml(body)
    head = body.lstrip()[:1]
    if head in (b"{", b"["):
        return json_to_xml(body)
    return parse_xml(body)
