"""
Graph I/O
graph6 codec (via networkx) and the whitespace edge-list format
"n m" header followed by m lines "u v" with 0-indexed endpoints
"""

import sys
from typing import List, Optional, TextIO

import networkx as nx

from Source.Services.graph_core import Graph, GraphError, build_graph
from Config.logging_config import setup_logging

logger = setup_logging()

GRAPH6_HEADER = ">>graph6<<"


class GraphFormatError(GraphError):
    """Malformed graph6 or edge-list input"""


def _graph6_header_length(data: bytes) -> int:
    if data[:1] != b"~":
        return 1
    if data[1:2] != b"~":
        return 4
    return 8


def decode_graph6(text: str) -> Graph:
    """
    Decode one graph6 string

    Args:
        text: graph6 text, optionally with the >>graph6<< header and a trailing newline

    Returns:
        The decoded Graph

    Raises:
        GraphFormatError: malformed header, non-zero padding bits or length mismatch
    """
    stripped = text.strip()
    if stripped.startswith(GRAPH6_HEADER):
        stripped = stripped[len(GRAPH6_HEADER):]
    if not stripped:
        raise GraphFormatError("Empty graph6 string")
    try:
        data = stripped.encode("ascii")
    except UnicodeEncodeError as e:
        raise GraphFormatError(f"graph6 must be printable ASCII: {e}") from e
    if any(byte < 63 or byte > 126 for byte in data):
        raise GraphFormatError(f"graph6 bytes must lie in 63..126: {stripped!r}")

    header_length = _graph6_header_length(data)
    if len(data) < header_length:
        raise GraphFormatError(f"Truncated graph6 size header: {stripped!r}")

    try:
        nx_graph = nx.from_graph6_bytes(data)
    except (nx.NetworkXError, ValueError, IndexError) as e:
        raise GraphFormatError(f"Invalid graph6 string {stripped!r}: {e}") from e

    n = nx_graph.number_of_nodes()
    body = data[header_length:]
    bit_count = n * (n - 1) // 2
    if len(body) != (bit_count + 5) // 6:
        raise GraphFormatError(f"graph6 body has {len(body)} bytes, expected {(bit_count + 5) // 6} for n={n}")
    padding = 6 * len(body) - bit_count
    if padding and (body[-1] - 63) & ((1 << padding) - 1):
        raise GraphFormatError(f"graph6 padding bits are not zero: {stripped!r}")

    return build_graph(n, nx_graph.edges())


def encode_graph6(g: Graph) -> str:
    """Encode g as graph6 without header or newline"""
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def parse_edge_list(text: str) -> Graph:
    """Parse the "n m" + m lines "u v" edge-list format"""
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise GraphFormatError("Edge list is empty")
    try:
        header = [int(token) for token in rows[0]]
        if len(header) != 2:
            raise GraphFormatError(f"Edge-list header must be 'n m', got {' '.join(rows[0])!r}")
        n, m = header
        pairs = []
        for row in rows[1:]:
            if len(row) != 2:
                raise GraphFormatError(f"Edge line must be 'u v', got {' '.join(row)!r}")
            pairs.append((int(row[0]), int(row[1])))
    except ValueError as e:
        if isinstance(e, GraphFormatError):
            raise
        raise GraphFormatError(f"Edge list contains a non-integer token: {e}") from e
    if len(pairs) != m:
        raise GraphFormatError(f"Edge-list header announces {m} edges but {len(pairs)} were given")
    try:
        return build_graph(n, pairs)
    except GraphError as e:
        raise GraphFormatError(str(e)) from e


def format_edge_list(g: Graph) -> str:
    """Edge-list text: the header line n m, then one line u v per edge"""
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> Graph:
    """
    Auto-detect the format from the first non-blank byte: a digit starts an edge list,
    anything else is read as graph6 (first line only)
    """
    content = text.lstrip()
    if not content:
        raise GraphFormatError("No graph given")
    if content[0].isdigit():
        return parse_edge_list(content)
    return decode_graph6(content.splitlines()[0])


def read_graph_argument(argument: Optional[str], stdin: Optional[TextIO] = None) -> Graph:
    """
    Resolve a CLI graph argument

    Args:
        argument: inline graph6, "@path" for a file, or "-"/None for standard input
        stdin: Stream used for "-" (defaults to sys.stdin)

    Returns:
        The parsed Graph
    """
    if argument is None or argument == "-":
        stream = stdin if stdin is not None else sys.stdin
        return parse_graph_text(stream.read())
    if argument.startswith("@"):
        path = argument[1:]
        try:
            with open(path, "r", encoding="utf-8") as f:
                content = f.read()
        except OSError as e:
            raise GraphFormatError(f"Cannot read graph file {path}: {e}") from e
        logger.debug(f"Read graph file {path} ({len(content)} characters)")
        return parse_graph_text(content)
    return decode_graph6(argument)


def read_graph6_lines(text: str) -> List[Graph]:
    # Blank lines are skipped
    return [decode_graph6(line) for line in text.splitlines() if line.strip()]
