"""
Text formats.

Graph files are edge lists: a ``nodes N`` header followed by one ``u v``
pair per line, 0-based. Profiles, composite specifications and experiment
configs are flat ``key = value`` files. ``#`` starts a comment everywhere.

Profile::

    nodes = 3
    values = 1.0 0.5 0

Composite::

    subgraphs = 2
    subgraph.0.nodes = 3
    subgraph.0.edges = 0-1 1-2
    subgraph.1.nodes = 4
    subgraph.1.edges = 0-1 0-2 0-3 1-2
    bridges = 1 0                # optional
    connecting = 0:1-1:0         # subgraph:node-subgraph:node
"""
from __future__ import annotations

from pathlib import Path

from .exceptions import FormatError, InvalidGraphError
from .graph import CompositeSpec, Graph, StubbornnessProfile


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _read(path) -> tuple[str, str]:
    path = Path(path)
    try:
        return str(path), path.read_text()
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from exc


def parse_graph(text: str, source: str = "<string>") -> Graph:
    n = None
    edges = []
    for lineno, line in _lines(text):
        parts = line.split()
        where = f"{source}:{lineno}"
        if n is None:
            if len(parts) != 2 or parts[0] != "nodes":
                raise FormatError(f"{where}: expected header 'nodes N', got {line!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise FormatError(f"{where}: node count {parts[1]!r} is not an integer") from None
            if n < 1:
                raise FormatError(f"{where}: node count must be >= 1")
            continue
        if len(parts) != 2:
            raise FormatError(f"{where}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"{where}: non-integer node in {line!r}") from None
        if u == v:
            raise FormatError(f"{where}: self-loop ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"{where}: edge ({u}, {v}) out of range for {n} nodes")
        edges.append((u, v))
    if n is None:
        raise FormatError(f"{source}: empty graph file (missing 'nodes N' header)")
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"nodes {g.node_count}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    source, text = _read(path)
    return parse_graph(text, source)


def write_graph(g: Graph, path) -> None:
    Path(path).write_text(format_graph(g))


def parse_key_values(text: str, source: str = "<string>") -> dict[str, tuple[str, str]]:
    """Map of ``key -> (value, "file:line")``. Keys are case-folded; ``_`` equals ``-``."""
    out = {}
    for lineno, line in _lines(text):
        where = f"{source}:{lineno}"
        if "=" not in line:
            raise FormatError(f"{where}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower().replace("_", "-")
        if not key:
            raise FormatError(f"{where}: empty key")
        if key in out:
            raise FormatError(f"{where}: duplicate key {key!r} (first at {out[key][1]})")
        out[key] = (value, where)
    return out


def read_key_values(path) -> dict[str, tuple[str, str]]:
    source, text = _read(path)
    return parse_key_values(text, source)


def _require(kv, key, source):
    if key not in kv:
        raise FormatError(f"{source}: missing key {key!r}")
    return kv[key]


def parse_profile(text: str, source: str = "<string>") -> StubbornnessProfile:
    kv = parse_key_values(text, source)
    raw, where = _require(kv, "values", source)
    try:
        vals = [float(x) for x in raw.replace(",", " ").split()]
    except ValueError:
        raise FormatError(f"{where}: values must be numbers") from None
    if "nodes" in kv:
        n_raw, n_where = kv["nodes"]
        if not n_raw.isdigit() or int(n_raw) != len(vals):
            raise FormatError(f"{n_where}: nodes = {n_raw} but {len(vals)} values given")
    try:
        return StubbornnessProfile(vals)
    except InvalidGraphError as exc:
        raise FormatError(f"{where}: {exc}") from None


def format_profile(d: StubbornnessProfile) -> str:
    return f"nodes = {len(d)}\nvalues = {' '.join(repr(v) for v in d.values)}\n"


def read_profile(path) -> StubbornnessProfile:
    source, text = _read(path)
    return parse_profile(text, source)


def write_profile(d: StubbornnessProfile, path) -> None:
    Path(path).write_text(format_profile(d))


def _ints(raw, where, what):
    try:
        return [int(x) for x in raw.replace(",", " ").split()]
    except ValueError:
        raise FormatError(f"{where}: {what} must be integers") from None


def _int(raw, where, what):
    vals = _ints(raw, where, what)
    if len(vals) != 1:
        raise FormatError(f"{where}: {what} must be a single integer")
    return vals[0]


def _pairs(raw, where, sep="-"):
    out = []
    for tok in raw.replace(",", " ").split():
        a, s, b = tok.partition(sep)
        if not s:
            raise FormatError(f"{where}: expected 'a{sep}b', got {tok!r}")
        out.append((a, b))
    return out


def parse_composite(text: str, source: str = "<string>") -> CompositeSpec:
    kv = parse_key_values(text, source)
    raw, where = _require(kv, "subgraphs", source)
    count = _int(raw, where, "subgraphs")
    if count < 1:
        raise FormatError(f"{where}: need at least one subgraph")
    subs = []
    for i in range(count):
        nraw, nwhere = _require(kv, f"subgraph.{i}.nodes", source)
        n = _int(nraw, nwhere, "node count")
        edges = []
        if f"subgraph.{i}.edges" in kv:
            eraw, ewhere = kv[f"subgraph.{i}.edges"]
            for a, b in _pairs(eraw, ewhere):
                edges.append(tuple(_ints(f"{a} {b}", ewhere, "edge endpoints")))
        else:
            ewhere = nwhere
        try:
            subs.append(Graph(n, edges))
        except InvalidGraphError as exc:
            raise FormatError(f"{ewhere}: {exc}") from None
    bridges = None
    if "bridges" in kv:
        braw, bwhere = kv["bridges"]
        bridges = _ints(braw, bwhere, "bridges")
    con = []
    cwhere = source
    if "connecting" in kv:
        craw, cwhere = kv["connecting"]
        for a, b in _pairs(craw, cwhere):
            ends = []
            for part in (a, b):
                s, sep, x = part.partition(":")
                if not sep:
                    raise FormatError(f"{cwhere}: expected 'subgraph:node', got {part!r}")
                ends.append(tuple(_ints(f"{s} {x}", cwhere, "connecting endpoints")))
            con.append(tuple(ends))
    try:
        return CompositeSpec(tuple(subs), tuple(con), bridges)
    except InvalidGraphError as exc:
        raise FormatError(f"{cwhere}: {exc}") from None


def format_composite(spec: CompositeSpec) -> str:
    lines = [f"subgraphs = {len(spec.subgraphs)}"]
    for i, g in enumerate(spec.subgraphs):
        lines.append(f"subgraph.{i}.nodes = {g.node_count}")
        if g.edges:
            lines.append(f"subgraph.{i}.edges = " + " ".join(f"{u}-{v}" for u, v in g.sorted_edges()))
    if spec.bridge_nodes is not None:
        lines.append("bridges = " + " ".join(str(b) for b in spec.bridge_nodes))
    if spec.connecting_edges:
        lines.append("connecting = " + " ".join(
            f"{i}:{u}-{j}:{v}" for (i, u), (j, v) in spec.connecting_edges))
    return "\n".join(lines) + "\n"


def read_composite(path) -> CompositeSpec:
    source, text = _read(path)
    return parse_composite(text, source)


def write_composite(spec: CompositeSpec, path) -> None:
    Path(path).write_text(format_composite(spec))


def looks_like_composite(path) -> bool:
    _, text = _read(path)
    for _, line in _lines(text):
        return line.replace(" ", "").startswith("subgraphs=")
    return False
