import logging
from pathlib import Path
from typing import Callable

from graphs.exceptions import TooSmall
from graphs.graph import Graph

from .exceptions import UnsupportedFormat
from .normalize import project_bipartite, select_multiplex_layer, simplify
from .parsers import parse_edgelist, parse_graphml, parse_pajek, parse_sides
from .raw import PreprocessLog, RawNetwork

logger = logging.getLogger(__name__)

PARSERS: dict[str, Callable[[bytes], RawNetwork]] = {
    '.net': parse_pajek,
    '.paj': parse_pajek,
    '.graphml': parse_graphml,
    '.xml': parse_graphml,
    '.txt': parse_edgelist,
    '.edges': parse_edgelist,
    '.edgelist': parse_edgelist,
    '.csv': parse_edgelist,
}

SIDES_SUFFIX = '.sides'


def is_network_file(path: Path) -> bool:
    return path.is_file() and path.suffix.lower() in PARSERS


def read_network(path: Path | str) -> RawNetwork:
    path = Path(path)
    parser = PARSERS.get(path.suffix.lower())
    if parser is None:
        raise UnsupportedFormat(f'no parser for {path.suffix!r} files')
    raw = parser(path.read_bytes())
    sidecar = path.with_suffix(SIDES_SUFFIX)
    if raw.sides is None and sidecar.exists():
        raw.sides = parse_sides(sidecar.read_bytes(), raw)
        logger.debug('%s: bipartite sides read from %s', path.name, sidecar.name)
    return raw


def normalize(raw: RawNetwork) -> tuple[Graph, PreprocessLog]:
    """Turn a raw network into a basic graph.

    Two-mode networks are projected, multiplex networks reduced to one layer;
    every result then goes through the loop/multi-edge/isolate cleanup.
    """
    if raw.is_bipartite:
        graph, log = project_bipartite(raw)
        if graph.n < 2:
            raise TooSmall(f'bipartite projection kept {graph.n} node(s)')
        graph, cleanup = simplify(RawNetwork.from_graph(graph, log.labels))
        log.extend(cleanup)
        return graph, log
    if raw.is_multiplex:
        return select_multiplex_layer(raw)
    return simplify(raw)


def load_network(path: Path | str) -> tuple[Graph, PreprocessLog]:
    return normalize(read_network(path))
