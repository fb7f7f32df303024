"""
graph6 / sparse6 / edge-list codecs and DOT emission.

Only the single-byte graph6 header is supported, so orders are capped at 62.
Every parse error is a GraphFormatError carrying the byte offset within the
line it was found at.
"""
from typing import TYPE_CHECKING, Union

from graphs.core import Graph
from models.errors import GraphFormatError
from models.types import MAX_ORDER

if TYPE_CHECKING:
    from covers.unfold import UnfoldingTree


GRAPH6_HEADER = ">>graph6<<"
SPARSE6_HEADER = ">>sparse6<<"
MAX_GRAPH6_ORDER = 62
_BIAS = 63


def _strip_header(line: str, header: str) -> tuple[str, int]:
    text = line.strip()
    if text.startswith(header):
        return text[len(header):], len(header)
    return text, 0


def _decode_bytes(data: str, base: int) -> list[int]:
    values = []
    for i, char in enumerate(data):
        code = ord(char)
        if not _BIAS <= code <= 126:
            raise GraphFormatError(f"Byte {code} outside the printable range 63..126", base + i)
        values.append(code - _BIAS)
    return values


def _decode_order(values: list[int], base: int) -> int:
    if not values:
        raise GraphFormatError("Empty line", base)
    if values[0] == 63:
        raise GraphFormatError(f"Orders above {MAX_GRAPH6_ORDER} (multi-byte header) are not supported", base)
    return values[0]


def parse_graph6(line: str) -> Graph:
    data, base = _strip_header(line, GRAPH6_HEADER)
    values = _decode_bytes(data, base)
    n = _decode_order(values, base)

    pairs = n * (n - 1) // 2
    expected = -(-pairs // 6)
    payload = values[1:]
    if len(payload) < expected:
        raise GraphFormatError(f"Truncated payload: expected {expected} bytes, got {len(payload)}", base + len(values))
    if len(payload) > expected:
        raise GraphFormatError(f"Trailing bytes after {expected} payload bytes", base + 1 + expected)

    padding = 6 * expected - pairs
    if padding and payload[-1] & ((1 << padding) - 1):
        raise GraphFormatError("Nonzero padding bits", base + expected)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if payload[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    if g.order > MAX_GRAPH6_ORDER:
        raise GraphFormatError(f"Order {g.order} exceeds the single-byte graph6 limit {MAX_GRAPH6_ORDER}")
    bits = [g.rows[j] >> i & 1 for j in range(1, g.order) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    chars = [chr(g.order + _BIAS)]
    for start in range(0, len(bits), 6):
        value = 0
        for bit in bits[start:start + 6]:
            value = value << 1 | bit
        chars.append(chr(value + _BIAS))
    return "".join(chars)


def parse_sparse6(line: str) -> Graph:
    data, base = _strip_header(line, SPARSE6_HEADER)
    if not data.startswith(":"):
        raise GraphFormatError("sparse6 line must start with ':'", base)
    values = _decode_bytes(data[1:], base + 1)
    n = _decode_order(values, base + 1)

    k = 1
    while 1 << k < n:
        k += 1
    bits = [value >> shift & 1 for value in values[1:] for shift in range(5, -1, -1)]

    rows = [0] * n
    v = 0
    pos = 0
    while pos + 1 + k <= len(bits):
        b = bits[pos]
        x = 0
        for bit in bits[pos + 1:pos + 1 + k]:
            x = x << 1 | bit
        offset = base + 2 + pos // 6
        pos += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
            continue
        if x == v:
            raise GraphFormatError(f"Self-loop at vertex {v}", offset)
        if rows[x] >> v & 1:
            raise GraphFormatError(f"Repeated edge ({x}, {v})", offset)
        rows[x] |= 1 << v
        rows[v] |= 1 << x
    return Graph(n, tuple(rows))


def parse_graph_line(line: str) -> Graph:
    """Parse a graph6 or sparse6 line, whichever the line is."""
    text = line.strip()
    if text.startswith(":") or text.startswith(SPARSE6_HEADER):
        return parse_sparse6(text)
    return parse_graph6(text)


def parse_edge_list(text: str) -> Graph:
    """
    Parse the edge-list authoring format.

    The first non-blank line holds the order; every other non-blank line holds
    one "u v" pair. Lines starting with '#' are ignored. GraphFormatError.line
    is 1-based; offset is the column of the offending token.
    """
    order = None
    rows: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if order is None:
            if len(tokens) != 1 or not tokens[0].isdigit():
                raise GraphFormatError("First line must hold the order", raw.find(tokens[0]), lineno)
            order = int(tokens[0])
            if not 1 <= order <= MAX_ORDER:
                raise GraphFormatError(f"Order must be between 1 and {MAX_ORDER}", raw.find(tokens[0]), lineno)
            rows = [0] * order
            continue
        if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
            raise GraphFormatError("Expected a pair 'u v'", raw.find(tokens[0]), lineno)
        u, v = int(tokens[0]), int(tokens[1])
        column = raw.find(tokens[0])
        if u >= order or v >= order:
            raise GraphFormatError(f"Vertex out of range for order {order}", column, lineno)
        if u == v:
            raise GraphFormatError(f"Self-loop at vertex {u}", column, lineno)
        if rows[u] >> v & 1:
            raise GraphFormatError(f"Duplicate edge ({u}, {v})", column, lineno)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    if order is None:
        raise GraphFormatError("Missing order line", 0, 1)
    return Graph(order, tuple(rows))


def emit_edge_list(g: Graph) -> str:
    lines = [str(g.order)] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def emit_dot(item: Union[Graph, "UnfoldingTree"], name: str = "G") -> str:
    """DOT text for a graph or an unfolding tree, for human inspection."""
    lines = [f"graph {name} {{"]
    if isinstance(item, Graph):
        lines.extend(f"  {v};" for v in range(item.order))
        lines.extend(f"  {u} -- {v};" for u, v in item.edges())
    else:
        for node, label in enumerate(item.labels):
            shape = ", shape=doublecircle" if node == 0 else ""
            lines.append(f'  n{node} [label="{label}"{shape}];')
        for node, parent in enumerate(item.parents):
            if parent >= 0:
                lines.append(f"  n{parent} -- n{node};")
    lines.append("}")
    return "\n".join(lines) + "\n"
