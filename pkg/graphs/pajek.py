from pathlib import Path

from .graph import Graph


def format_pajek(graph: Graph, labels: list[str] | None = None) -> str:
    """Serialize as a basic Pajek network: 1-based *Vertices and *Edges."""
    lines = [f'*Vertices {graph.n}']
    if labels is not None:
        for i, label in enumerate(labels, start=1):
            escaped = str(label).replace('"', "'")
            lines.append(f'{i} "{escaped}"')
    lines.append('*Edges')
    lines.extend(f'{u + 1} {v + 1}' for u, v in graph.sorted_edges())
    return '\n'.join(lines) + '\n'


def write_pajek(graph: Graph, path: Path | str, labels: list[str] | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_pajek(graph, labels), encoding='utf-8')
    return path
