import json
import logging
import os
import re

import networkx as nx

from automata.alphabet import Alphabet
from automata.automaton import Dfa
from core.errors import InputError, PresentationError
from groups.catalog import CatalogGroup, build_group
from groups.presentation import Presentation

logger = logging.getLogger(__name__)

# Get project root (assuming this file is in utils/)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def resolve_path(filepath: str) -> str:
    """Absolute paths and paths that exist from the working directory win; otherwise relative to the project root."""
    if os.path.isabs(filepath) or os.path.exists(filepath):
        return filepath
    return os.path.join(BASE_DIR, filepath)


def _read_text(filepath: str) -> str:
    try:
        with open(resolve_path(filepath), 'r', encoding='utf-8') as f:
            return f.read()
    except OSError as e:
        raise InputError(f"cannot read {filepath}: {e.strerror}") from None


def load_json_data(filepath: str) -> dict:
    """Load JSON data from a path, relative to the project root unless it exists as given."""
    try:
        return json.loads(_read_text(filepath))
    except json.JSONDecodeError as e:
        raise InputError(f"{filepath}:{e.lineno}:{e.colno}: {e.msg}") from None


def save_json_data(filepath: str, data: dict):
    """Save dictionary as JSON, relative to the project root unless absolute."""
    full_path = filepath if os.path.isabs(filepath) else os.path.join(BASE_DIR, filepath)
    os.makedirs(os.path.dirname(full_path), exist_ok=True)
    with open(full_path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=4, ensure_ascii=False)


def save_text(filepath: str, text: str):
    full_path = filepath if os.path.isabs(filepath) else os.path.join(BASE_DIR, filepath)
    os.makedirs(os.path.dirname(full_path), exist_ok=True)
    with open(full_path, 'w', encoding='utf-8') as f:
        f.write(text if text.endswith("\n") else text + "\n")


# --- Dfa files ---

def load_dfa(filepath: str) -> Dfa:
    try:
        return Dfa.from_dict(load_json_data(filepath))
    except InputError as e:
        if str(e).startswith(filepath):
            raise
        raise InputError(f"{filepath}: {e}") from None


def save_dfa(filepath: str, d: Dfa):
    save_json_data(filepath, d.to_dict())


# --- Presentation files ---

_LINE = re.compile(r"^\s*(gens|order|rel|oracle)\s*:\s*(.*?)\s*$")


def parse_presentation(text: str, name: str = "presentation") -> CatalogGroup:
    """
    Parse the line-oriented presentation format:
        gens: a b c d
        order: a 3
        rel: abABcdCD
        oracle: amalgam
    Uppercase letters are formal inverses. '#' starts a comment.
    """
    gens, relators, orders, directive = None, [], {}, None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        match = _LINE.match(line)
        if not match:
            raise PresentationError(f"{name}:{number}: expected 'gens:', 'order:', 'rel:' or 'oracle:'")
        key, value = match.groups()
        if key == "gens":
            letters = value.split()
            if not letters or any(len(g) != 1 or not g.islower() for g in letters):
                raise PresentationError(f"{name}:{number}: generators must be single lowercase letters")
            gens = Alphabet.from_letters(letters)
        elif key == "order":
            parts = value.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise PresentationError(f"{name}:{number}: expected 'order: <generator> <n>'")
            orders[parts[0]] = int(parts[1])
        elif key == "rel":
            relators.append((number, value.replace(" ", "")))
        else:
            directive = value
    if gens is None:
        raise PresentationError(f"{name}: missing 'gens:' line")

    words = []
    for number, r in relators:
        try:
            words.append(gens.check_word(tuple(r)))
        except InputError as e:
            raise PresentationError(f"{name}:{number}: {e}") from None
    for g in orders:
        if g not in gens.symbols:
            raise PresentationError(f"{name}: order given for unknown generator {g!r}")
    presentation = Presentation.from_relators(gens, words)
    return build_group(presentation, directive, orders, name=name)


def load_presentation(filepath: str) -> CatalogGroup:
    name = os.path.splitext(os.path.basename(filepath))[0]
    return parse_presentation(_read_text(filepath), name=name)


# --- Graph files ---

_VERTEX = re.compile(r"^\s*(\w+)\s*:\s*(\S+)\s*$")
_EDGE = re.compile(r"^\s*(\w+)\s*--\s*(\w+)\s*$")


def _namespace(d: Dfa, vertex: str) -> Dfa:
    rename = {s: f"{s}_{vertex}" for s in d.alphabet.symbols}
    inverses = d.alphabet.inverses
    alphabet = Alphabet(symbols=tuple(rename[s] for s in d.alphabet.symbols),
                        inverses=tuple((rename[x], rename[y]) for x, y in inverses) if inverses else None)
    return d.model_copy(update={"alphabet": alphabet})


def parse_graph(text: str, base_dir: str = ".", name: str = "graph") -> tuple[nx.Graph, dict[str, Dfa]]:
    """
    Parse a graph file of vertex lines 'v: file.json' and edge lines 'v -- w'.
    Vertex Dfa paths are relative to base_dir. A vertex whose alphabet collides
    with an earlier one has its symbols renamed to '<symbol>_<vertex>'.
    """
    graph = nx.Graph()
    dfas: dict[str, Dfa] = {}
    edges = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if match := _EDGE.match(line):
            edges.append((number, *match.groups()))
        elif match := _VERTEX.match(line):
            vertex, path = match.groups()
            if vertex in dfas:
                raise InputError(f"{name}:{number}: vertex {vertex!r} declared twice")
            full = path if os.path.isabs(path) else os.path.join(base_dir, path)
            dfas[vertex] = load_dfa(full)
            graph.add_node(vertex)
        else:
            raise InputError(f"{name}:{number}: expected 'vertex: file.json' or 'vertex -- vertex'")
    for number, u, v in edges:
        if u not in dfas or v not in dfas:
            raise InputError(f"{name}:{number}: edge {u} -- {v} names an undeclared vertex")
        graph.add_edge(u, v)

    used: set[str] = set()
    for vertex in list(dfas):
        symbols = set(dfas[vertex].alphabet.symbols)
        if symbols & used:
            logger.warning(f"alphabet of vertex {vertex} collides with an earlier vertex; "
                           f"renaming its symbols to <symbol>_{vertex}")
            dfas[vertex] = _namespace(dfas[vertex], vertex)
            symbols = set(dfas[vertex].alphabet.symbols)
        used |= symbols
    return graph, dfas


def load_graph(filepath: str) -> tuple[nx.Graph, dict[str, Dfa]]:
    full = resolve_path(filepath)
    return parse_graph(_read_text(filepath), base_dir=os.path.dirname(full), name=filepath)


def load_expression_text(filepath: str) -> str:
    """Expression files hold one expression; '#' lines are comments."""
    lines = [line for line in _read_text(filepath).splitlines() if not line.lstrip().startswith("#")]
    return " ".join(line.strip() for line in lines if line.strip())
