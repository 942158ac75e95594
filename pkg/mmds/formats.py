"""
Strict text formats for graphs, colored graphs, CNF formulas, interval sets
and solutions.

    .gr        c <comment> / p mmds <n> <m> / e <u> <v>
    colored    .gr plus n <v> <color> lines
    CNF        DIMACS: p cnf <vars> <clauses>, 0-terminated clauses
    intervals  i <id> <left> <right>
    solution   one vertex id per line

Any non-comment line that is not recognized is a ParseError carrying its
line number.
"""
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .exceptions import GraphError, ParseError
from .models import CnfFormula, ColoredGraph, Graph, IntervalSet, Solution

TextLike = Union[str, bytes]


def _decode(text: TextLike) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not UTF-8 text: {e}")
    return text


def _lines(text: TextLike) -> Iterator[Tuple[int, List[str]]]:
    """Yield (line number, tokens) for non-blank, non-comment lines"""
    for line_no, raw in enumerate(_decode(text).splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        yield line_no, tokens


def _int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} is not an integer: {token!r}", line_no)


def _graph_lines(text: TextLike, allow_colors: bool):
    n = m = None
    header_line = None
    edges: List[Tuple[int, int]] = []
    seen = set()
    colors: Dict[int, int] = {}

    for line_no, tokens in _lines(text):
        tag = tokens[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate header", line_no)
            if len(tokens) != 4 or tokens[1] != "mmds":
                raise ParseError("malformed header, expected 'p mmds <n> <m>'", line_no)
            n = _int(tokens[2], line_no, "vertex count")
            m = _int(tokens[3], line_no, "edge count")
            if n < 0 or m < 0:
                raise ParseError("malformed header, negative count", line_no)
            header_line = line_no
            continue
        if n is None:
            raise ParseError(f"'{tag}' line before header", line_no)
        if tag == "e":
            if len(tokens) != 3:
                raise ParseError("malformed edge line, expected 'e <u> <v>'", line_no)
            u = _int(tokens[1], line_no, "vertex id")
            v = _int(tokens[2], line_no, "vertex id")
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex id {x} out of range 1..{n}", line_no)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", line_no)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"duplicate edge {key[0]} {key[1]}", line_no)
            seen.add(key)
            edges.append((u, v))
        elif tag == "n" and allow_colors:
            if len(tokens) != 3:
                raise ParseError("malformed color line, expected 'n <v> <color>'", line_no)
            v = _int(tokens[1], line_no, "vertex id")
            color = _int(tokens[2], line_no, "color")
            if not 1 <= v <= n:
                raise ParseError(f"vertex id {v} out of range 1..{n}", line_no)
            if color < 1:
                raise ParseError(f"color must be >= 1, got {color}", line_no)
            if v in colors:
                raise ParseError(f"vertex {v} colored twice", line_no)
            colors[v] = color
        else:
            raise ParseError(f"unrecognized line type '{tag}'", line_no)

    if n is None:
        raise ParseError("missing header 'p mmds <n> <m>'")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}", header_line)
    return n, edges, colors


def parse_graph(text: TextLike) -> Graph:
    n, edges, _ = _graph_lines(text, allow_colors=False)
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    lines = [f"p mmds {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_colored_graph(text: TextLike) -> ColoredGraph:
    n, edges, colors = _graph_lines(text, allow_colors=True)
    graph = Graph.from_edges(n, edges)
    try:
        return ColoredGraph.from_colors(graph, colors)
    except GraphError as e:
        raise ParseError(str(e))


def serialize_colored_graph(cg: ColoredGraph) -> str:
    body = serialize_graph(cg.graph)
    colors = "".join(f"n {v} {cg.color[v]}\n" for v in cg.graph.vertices)
    return body + colors


def parse_cnf(text: TextLike) -> CnfFormula:
    num_vars = num_clauses = None
    header_line = None
    clauses: List[List[int]] = []
    current: List[int] = []
    current_start = None

    for line_no, tokens in _lines(text):
        if tokens[0] == "p":
            if num_vars is not None:
                raise ParseError("duplicate header", line_no)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise ParseError("malformed header, expected 'p cnf <vars> <clauses>'", line_no)
            num_vars = _int(tokens[2], line_no, "variable count")
            num_clauses = _int(tokens[3], line_no, "clause count")
            if num_vars < 0 or num_clauses < 0:
                raise ParseError("malformed header, negative count", line_no)
            header_line = line_no
            continue
        if num_vars is None:
            raise ParseError("clause before header", line_no)
        for token in tokens:
            lit = _int(token, line_no, "literal")
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", line_no)
                clauses.append(current)
                current = []
                current_start = None
                continue
            if abs(lit) > num_vars:
                raise ParseError(f"literal {lit} exceeds variable count {num_vars}", line_no)
            if current_start is None:
                current_start = line_no
            current.append(lit)

    if num_vars is None:
        raise ParseError("missing header 'p cnf <vars> <clauses>'")
    if current:
        raise ParseError("clause not 0-terminated", current_start)
    if len(clauses) != num_clauses:
        raise ParseError(f"header declares {num_clauses} clauses, found {len(clauses)}", header_line)
    return CnfFormula.from_clauses(num_vars, clauses)


def serialize_cnf(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {phi.num_clauses}"]
    lines.extend(" ".join([*map(str, clause), "0"]) for clause in phi.clauses)
    return "\n".join(lines) + "\n"


def parse_intervals(text: TextLike) -> IntervalSet:
    triples = []
    seen = set()
    for line_no, tokens in _lines(text):
        if tokens[0] != "i":
            raise ParseError(f"unrecognized line type '{tokens[0]}'", line_no)
        if len(tokens) != 4:
            raise ParseError("malformed interval line, expected 'i <id> <left> <right>'", line_no)
        ident = _int(tokens[1], line_no, "interval id")
        left = _int(tokens[2], line_no, "left endpoint")
        right = _int(tokens[3], line_no, "right endpoint")
        if left > right:
            raise ParseError(f"interval {ident} has left {left} > right {right}", line_no)
        if ident in seen:
            raise ParseError(f"duplicate interval id {ident}", line_no)
        seen.add(ident)
        triples.append((ident, left, right))
    return IntervalSet.from_triples(triples)


def serialize_intervals(iv: IntervalSet) -> str:
    """Input order is kept, it fixes the vertex numbering of the interval graph"""
    return "".join(f"i {ident} {left} {right}\n" for ident, left, right in iv.intervals)


def parse_solution(text: TextLike, n: Optional[int] = None) -> Solution:
    members = []
    seen = set()
    for line_no, tokens in _lines(text):
        if len(tokens) != 1:
            raise ParseError("expected exactly one vertex id per line", line_no)
        v = _int(tokens[0], line_no, "vertex id")
        if n is not None and not 1 <= v <= n:
            raise ParseError(f"vertex id {v} out of range 1..{n}", line_no)
        if v < 1:
            raise ParseError(f"vertex id must be >= 1, got {v}", line_no)
        if v in seen:
            raise ParseError(f"duplicate vertex {v}", line_no)
        seen.add(v)
        members.append(v)
    return Solution.of(members)


def serialize_solution(s: Solution) -> str:
    return "".join(f"{v}\n" for v in s.sorted())


def read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
