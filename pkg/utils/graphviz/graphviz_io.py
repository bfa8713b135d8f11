# graphviz_io.py v1.1.0
"""DOT (GraphViz) interchange for transport graphs.

Schema, one statement per line inside ``graph <name> { ... }``:

    graph [map_size=<real>];                       only when map_size != 1000
    <id> [label="{<id>,<kind>}", kind=<store|warehouse|joint>, x=<real>, y=<real>,
          supply=<int>, demand=<int>];
    <a> -- <b> [distance=<real>, velocity=<int>, time=<int>];

Nodes are written by id, edges by (min id, max id). Reals use Python's shortest
round-trip repr, so parsing gives back the exact float. Attributes outside the schema
are kept verbatim in DotDocument and ignored when building the graph.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple, Union

import pyparsing as pp

from utils.model.errors import DotSchemaError, DotSyntaxError, GraphValidationError
from utils.model.model import DEFAULT_MAP_SIZE, Edge, Node, NodeKind, TransportGraph, validate

log = logging.getLogger(__name__)

GRAPH_NAME = "transport"
NODE_KEYS = ("label", "kind", "x", "y", "supply", "demand")
EDGE_KEYS = ("distance", "velocity", "time")

Attributes = Dict[str, str]
AttrValue = Union[str, int, float]

_DOT_NUMERAL = re.compile(r"^-?(\.[0-9]+|[0-9]+(\.[0-9]*)?)$")
_DOT_IDENT = re.compile(r"^[_a-zA-Z][a-zA-Z0-9_]*$")
_KEYWORDS = {"graph", "digraph", "subgraph", "node", "edge", "strict"}


@dataclass
class DotDocument:
    graph_name: str = GRAPH_NAME
    graph_attributes: Attributes = field(default_factory=dict)
    node_statements: List[Tuple[int, Attributes]] = field(default_factory=list)
    edge_statements: List[Tuple[int, int, Attributes]] = field(default_factory=list)


def _format_value(value: AttrValue) -> str:
    if isinstance(value, bool):
        value = str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        text = repr(value)
        return text if _DOT_NUMERAL.match(text) else f'"{text}"'
    text = str(value)
    if _DOT_IDENT.match(text) and text not in _KEYWORDS:
        return text
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _format_attributes(attributes: Mapping[str, AttrValue]) -> str:
    if not attributes:
        return ""
    body = ", ".join(f"{key}={_format_value(value)}" for key, value in attributes.items())
    return f" [{body}]"


def node_attributes(node: Node) -> Dict[str, AttrValue]:
    return {
        "label": f"{{{node.id},{node.kind.value}}}",
        "kind": node.kind.value,
        "x": float(node.x),
        "y": float(node.y),
        "supply": node.supply,
        "demand": node.demand,
    }


def edge_attributes(edge: Edge) -> Dict[str, AttrValue]:
    attributes: Dict[str, AttrValue] = {"distance": float(edge.distance_km)}
    if edge.velocity_kmh is not None:
        attributes["velocity"] = edge.velocity_kmh
    attributes["time"] = edge.time_min
    return attributes


def emit_dot(graph: TransportGraph,
             edge_annotations: Optional[Mapping[Tuple[int, int], Mapping[str, AttrValue]]] = None
             ) -> str:
    """Render the graph as an undirected DOT document.

    edge_annotations maps (min id, max id) to extra attributes appended to that edge.
    """
    lines = [f"graph {GRAPH_NAME} {{"]
    if graph.map_size != DEFAULT_MAP_SIZE:
        lines.append(f"    graph{_format_attributes({'map_size': float(graph.map_size)})};")
    for node in sorted(graph.nodes, key=lambda n: n.id):
        lines.append(f"    {node.id}{_format_attributes(node_attributes(node))};")
    for edge in graph.sorted_edges():
        attributes = edge_attributes(edge)
        if edge_annotations and edge.key in edge_annotations:
            attributes.update(edge_annotations[edge.key])
        lines.append(f"    {edge.a} -- {edge.b}{_format_attributes(attributes)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _attributes(attr_list: pp.ParseResults) -> Attributes:
    return {str(item[0]): str(item[1]) for item in attr_list}


def _build_grammar() -> pp.ParserElement:
    identifier = pp.Word(pp.alphas + "_", pp.alphanums + "_")
    numeral = pp.Regex(r"-?(\.[0-9]+|[0-9]+(\.[0-9]*)?)")
    quoted = pp.QuotedString('"', esc_char="\\")
    value = quoted | numeral | identifier

    attribute = pp.Group(identifier + pp.Suppress("=") + value)
    attr_list = pp.Group(
        pp.Suppress("[")
        + pp.ZeroOrMore(attribute + pp.Optional(pp.Suppress(pp.one_of(", ;"))))
        + pp.Suppress("]")
    )
    node_id = pp.Word(pp.nums)
    terminator = pp.Optional(pp.Suppress(";"))

    graph_kw = pp.Keyword("graph")
    graph_attr_stmt = pp.Suppress(graph_kw) + attr_list + terminator
    graph_attr_stmt.set_parse_action(lambda t: [("graph", _attributes(t[0]))])
    edge_stmt = node_id + pp.Suppress("--") + node_id + pp.Optional(attr_list) + terminator
    edge_stmt.set_parse_action(
        lambda t: [("edge", int(t[0]), int(t[1]), _attributes(t[2]) if len(t) > 2 else {})])
    node_stmt = node_id + pp.Optional(attr_list) + terminator
    node_stmt.set_parse_action(
        lambda t: [("node", int(t[0]), _attributes(t[1]) if len(t) > 1 else {})])
    statement = graph_attr_stmt | edge_stmt | node_stmt

    document = (
        pp.Optional(pp.Suppress(pp.Keyword("strict")))
        + pp.Suppress(graph_kw)
        + pp.Optional(quoted | identifier, default="")
        + pp.Suppress("{")
        + pp.Group(pp.ZeroOrMore(statement))
        + pp.Suppress("}")
    )
    document.ignore(pp.cpp_style_comment)
    document.ignore(pp.python_style_comment)
    return document


_GRAMMAR = _build_grammar()


def parse_dot_document(text: str) -> DotDocument:
    try:
        name, statements = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise DotSyntaxError(exc.msg, exc.lineno, exc.col) from exc

    document = DotDocument(graph_name=str(name))
    for statement in statements:
        if statement[0] == "graph":
            document.graph_attributes.update(statement[1])
        elif statement[0] == "edge":
            document.edge_statements.append((statement[1], statement[2], statement[3]))
        else:
            document.node_statements.append((statement[1], statement[2]))
    return document


def _required(attrs: Attributes, key: str, where: str) -> str:
    if key not in attrs:
        raise DotSchemaError(f"{where}: missing attribute '{key}'", attribute=key)
    return attrs[key]


def _as_int(attrs: Attributes, key: str, where: str) -> int:
    raw = _required(attrs, key, where)
    try:
        return int(raw)
    except ValueError:
        raise DotSchemaError(f"{where}: attribute '{key}' must be an integer, got {raw!r}",
                             attribute=key) from None


def _as_float(attrs: Attributes, key: str, where: str) -> float:
    raw = _required(attrs, key, where)
    try:
        return float(raw)
    except ValueError:
        raise DotSchemaError(f"{where}: attribute '{key}' must be a number, got {raw!r}",
                             attribute=key) from None


def document_to_graph(document: DotDocument) -> TransportGraph:
    map_size = DEFAULT_MAP_SIZE
    if "map_size" in document.graph_attributes:
        map_size = _as_float(document.graph_attributes, "map_size", "graph")
    graph = TransportGraph(map_size=map_size)

    seen = set()
    for node_id, attrs in sorted(document.node_statements, key=lambda s: s[0]):
        where = f"node {node_id}"
        if node_id in seen:
            raise DotSchemaError(f"{where}: declared more than once")
        seen.add(node_id)
        raw_kind = _required(attrs, "kind", where)
        try:
            kind = NodeKind(raw_kind)
        except ValueError:
            raise DotSchemaError(f"{where}: unknown kind {raw_kind!r}", attribute="kind") from None
        graph.add_node(Node(
            id=node_id,
            kind=kind,
            x=_as_float(attrs, "x", where),
            y=_as_float(attrs, "y", where),
            supply=_as_int(attrs, "supply", where),
            demand=_as_int(attrs, "demand", where),
        ))

    for a, b, attrs in document.edge_statements:
        where = f"edge {a}--{b}"
        for endpoint in (a, b):
            if endpoint not in seen:
                raise DotSchemaError(f"{where}: dangling endpoint {endpoint} (node not declared)")
        velocity = _as_int(attrs, "velocity", where) if "velocity" in attrs else None
        graph.add_edge(Edge(a, b, _as_float(attrs, "distance", where),
                            _as_int(attrs, "time", where), velocity))
    return graph


def parse_dot(text: str, check: bool = True) -> TransportGraph:
    """Parse a DOT instance; with check=True a graph breaking any invariant is rejected."""
    graph = document_to_graph(parse_dot_document(text))
    if check:
        violations = validate(graph)
        if violations:
            raise GraphValidationError(violations)
    log.debug("Parsed instance: %d nodes, %d edges", len(graph.nodes), len(graph.edges))
    return graph
