import logging
from pathlib import Path
from typing import Sequence, Tuple

from graphs.core import Graph
from graphs.formats import emit_graph6, parse_edge_list, parse_graph_line
from graphs.named import is_named_graph, named_graph
from models.errors import GraphFormatError, GraphInputError


logger = logging.getLogger(__name__)

Labeled = Tuple[str, Graph]


def _label(g: Graph) -> str:
    return emit_graph6(g) if g.order <= 62 else f"order-{g.order}"


def _read_file(path: Path) -> list[Labeled]:
    try:
        text = path.read_text(encoding="ascii")
    except (OSError, UnicodeDecodeError) as e:
        raise GraphInputError(f"Cannot read {path}: {e}") from e

    lines = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise GraphFormatError(f"{path} holds no graph", 0, 1)
    if lines[0].strip().isdigit():
        g = parse_edge_list(text)
        return [(_label(g), g)]

    graphs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            g = parse_graph_line(line)
        except GraphFormatError as e:
            raise e.at_line(lineno) from e
        graphs.append((_label(g), g))
    logger.debug("Read %d graphs from %s", len(graphs), path)
    return graphs


def resolve_graphs(token: str) -> list[Labeled]:
    """
    Graphs named by one command-line token.

    An existing file is read as an edge list when its first line is an order,
    otherwise as graph6/sparse6 lines. Other tokens are tried as built-in
    names (C6, 2C3, bowtie, ...) and finally as inline graph6.
    """
    path = Path(token)
    if path.is_file():
        return _read_file(path)
    if is_named_graph(token):
        g = named_graph(token)
        return [(_label(g), g)]
    g = parse_graph_line(token)
    return [(_label(g), g)]


def resolve_all(tokens: Sequence[str]) -> list[Labeled]:
    return [item for token in tokens for item in resolve_graphs(token)]
