"""
Text formats.

A presentation::

    presentation
    ground 6
    set 1 2 3
    set 2 4 5
    set 3 5 6
    match 1 2 3        # optional: representative of each set, in order

A digraph with sinks::

    digraph
    vertices 6
    sinks 4 5 6
    edge 1 2 2/1       # weight optional, an exact rational

'#' starts a comment. A canonical matroid JSON document is accepted as well.
"""

import io
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from gammoidkit.bridge import bipartite_to_digraph, digraph_to_bipartite
from gammoidkit.coder import decoder
from gammoidkit.exceptions import GammoidkitError, ParseError
from gammoidkit.gammoid import Edge, SinkSet, WeightedDigraph, sinkify
from gammoidkit.matroid import Matroid
from gammoidkit.transversal import Matching, Presentation

TOKEN = re.compile(r"\S+")
RATIONAL = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class Document(BaseModel):
    """
    One parsed input file: exactly one of presentation, digraph (with sinks) or matroid.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: str = "<input>"
    presentation: Optional[Presentation] = None
    matching: Optional[Matching] = None
    digraph: Optional[WeightedDigraph] = None
    sinks: Optional[SinkSet] = None
    matroid: Optional[Matroid] = None

    @property
    def kind(self) -> str:
        if self.presentation is not None:
            return "presentation"
        if self.digraph is not None:
            return "digraph"
        return "matroid"


class _Statement(BaseModel):
    line: int
    keyword: str
    args: List[str]
    columns: List[int]


def _statements(text: str) -> List[_Statement]:
    statements = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in TOKEN.finditer(content)]
        if not tokens:
            continue
        statements.append(
            _Statement(
                line=number,
                keyword=tokens[0][0],
                args=[token for token, _ in tokens[1:]],
                columns=[column for _, column in tokens],
            )
        )
    return statements


class _Reader:
    def __init__(self, source: str) -> None:
        self.source = source

    def error(self, message: str, statement: _Statement, arg: Optional[int] = None) -> ParseError:
        column = statement.columns[arg + 1] if arg is not None else statement.columns[0]
        return ParseError(message, source=self.source, line=statement.line, column=column)

    def integers(self, statement: _Statement, bound: Optional[int] = None) -> List[int]:
        values = []
        for index, token in enumerate(statement.args):
            if not re.fullmatch(r"\d+", token):
                raise self.error(f"malformed token {token!r}", statement, index)
            value = int(token)
            if bound is not None and not 1 <= value <= bound:
                raise self.error(f"vertex {value} is outside [1, {bound}]", statement, index)
            values.append(value)
        return values

    def single(self, statement: _Statement) -> int:
        if len(statement.args) != 1:
            raise self.error(f"`{statement.keyword}` takes exactly one number", statement)
        return self.integers(statement)[0]

    def distinct(self, values: List[int], statement: _Statement) -> List[int]:
        if len(set(values)) != len(values):
            raise self.error(f"repeated element in `{statement.keyword}`", statement)
        return values

    def presentation(self, statements: List[_Statement]) -> Document:
        n: Optional[int] = None
        sets: List[List[int]] = []
        match: Optional[Tuple[_Statement, List[int]]] = None
        for statement in statements:
            if statement.keyword == "ground":
                if n is not None:
                    raise self.error("duplicate `ground`", statement)
                n = self.single(statement)
            elif statement.keyword in ("set", "match"):
                if n is None:
                    raise self.error(f"`{statement.keyword}` before `ground`", statement)
                values = self.distinct(self.integers(statement, n), statement)
                if statement.keyword == "set":
                    sets.append(values)
                elif match is not None:
                    raise self.error("duplicate `match`", statement)
                else:
                    match = (statement, values)
            else:
                raise self.error(f"unknown statement `{statement.keyword}`", statement)
        if n is None:
            raise ParseError("missing `ground`", source=self.source, line=_last_line(statements))
        presentation = Presentation(n=n, sets=sets)
        matching = None
        if match is not None:
            statement, representatives = match
            if len(representatives) != len(sets):
                raise self.error(
                    f"`match` names {len(representatives)} representatives for {len(sets)} sets",
                    statement,
                )
            for index, (j, a) in enumerate(zip(representatives, presentation.sets)):
                if j not in a:
                    raise self.error(f"{j} is not in set {index + 1}", statement, index)
            matching = Matching.from_representatives(representatives)
        return Document(source=self.source, presentation=presentation, matching=matching)

    def digraph(self, statements: List[_Statement]) -> Document:
        n: Optional[int] = None
        sinks: Optional[List[int]] = None
        edges: List[Edge] = []
        weights: Dict[Edge, Fraction] = {}
        for statement in statements:
            if statement.keyword == "vertices":
                if n is not None:
                    raise self.error("duplicate `vertices`", statement)
                n = self.single(statement)
                continue
            if n is None:
                raise self.error(f"`{statement.keyword}` before `vertices`", statement)
            if statement.keyword == "sinks":
                if sinks is not None:
                    raise self.error("duplicate `sinks`", statement)
                sinks = self.distinct(self.integers(statement, n), statement)
            elif statement.keyword == "edge":
                if len(statement.args) not in (2, 3):
                    raise self.error("`edge` takes two vertices and an optional weight", statement)
                endpoints = _Statement(
                    line=statement.line,
                    keyword="edge",
                    args=statement.args[:2],
                    columns=statement.columns[:3],
                )
                u, v = self.integers(endpoints, n)
                if u == v:
                    raise self.error(f"loop at vertex {u}", statement)
                if (u, v) in edges:
                    raise self.error(f"duplicate edge {u} {v}", statement)
                edges.append((u, v))
                if len(statement.args) == 3:
                    weights[(u, v)] = self.weight(statement)
            else:
                raise self.error(f"unknown statement `{statement.keyword}`", statement)
        if n is None:
            raise ParseError("missing `vertices`", source=self.source, line=_last_line(statements))
        return Document(
            source=self.source,
            digraph=WeightedDigraph(n=n, edges=edges, weights=weights),
            sinks=SinkSet(vertices=sinks or []),
        )

    def weight(self, statement: _Statement) -> Fraction:
        token = statement.args[2]
        found = RATIONAL.match(token)
        if not found or (found.group(2) is not None and int(found.group(2)) == 0):
            raise self.error(f"malformed weight {token!r}", statement, 2)
        return Fraction(int(found.group(1)), int(found.group(2) or 1))


def _last_line(statements: List[_Statement]) -> int:
    return statements[-1].line if statements else 1


def parse_text(text: str, source: str = "<input>") -> Document:
    if text.lstrip().startswith("{"):
        return _parse_matroid_json(text, source)
    statements = _statements(text)
    if not statements or statements[0].keyword not in ("presentation", "digraph"):
        line = statements[0].line if statements else 1
        raise ParseError.at("missing header `presentation` or `digraph`", source, line)
    header, body = statements[0], statements[1:]
    reader = _Reader(source)
    if header.args:
        raise reader.error(f"`{header.keyword}` takes no arguments", header, 0)
    try:
        if header.keyword == "presentation":
            return reader.presentation(body)
        return reader.digraph(body)
    except ValidationError as e:
        raise ParseError.at(_first_error(e), source, _last_line(statements)) from e


def _parse_matroid_json(text: str, source: str) -> Document:
    try:
        matroid = decoder(text)
    except json.JSONDecodeError as e:
        raise ParseError.at(f"invalid JSON: {e.msg}", source, e.lineno, e.colno) from e
    except GammoidkitError as e:
        raise ParseError(str(e), source=source, line=1, column=1) from e
    except (KeyError, TypeError) as e:
        raise ParseError(f"not a matroid document: {e}", source=source, line=1, column=1) from e
    if not isinstance(matroid, Matroid):
        raise ParseError.at("JSON input must be a {n, rank, bases} document", source, 1)
    return Document(source=source, matroid=matroid)


def parse_input(source: Union[str, Path, TextIO]) -> Document:
    """
    parse a presentation, digraph or matroid file
    :param source: path, or an open text stream
    :return:
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            text = path.read_text("utf-8")
        except OSError as e:
            raise ParseError(f"cannot read input: {e.strerror}", source=str(path), line=0) from e
        except UnicodeDecodeError as e:
            raise ParseError(
                f"input is not UTF-8: byte {e.start} cannot be decoded", source=str(path), line=0
            ) from e
        return parse_text(text, str(path))
    name = getattr(source, "name", "<stream>")
    return parse_text(source.read(), str(name))


def _first_error(e: ValidationError) -> str:
    return e.errors()[0]["msg"]


def render_rational(value: Any) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def render_presentation(p: Presentation, matching: Optional[Matching] = None) -> str:
    out = io.StringIO()
    out.write("presentation\n")
    out.write(f"ground {p.n}\n")
    for a in p.sets:
        out.write(" ".join(["set", *map(str, a)]) + "\n")
    if matching is not None:
        representatives = matching.representatives()
        out.write(" ".join(["match", *(str(representatives[i]) for i in range(1, p.r + 1))]) + "\n")
    return out.getvalue()


def render_digraph(g: WeightedDigraph, a: SinkSet) -> str:
    out = io.StringIO()
    out.write("digraph\n")
    out.write(f"vertices {g.n}\n")
    out.write(" ".join(["sinks", *map(str, a.vertices)]) + "\n")
    for u, v in g.edges:
        tokens = ["edge", str(u), str(v)]
        if (u, v) in g.weights:
            tokens.append(render_rational(g.weights[(u, v)]))
        out.write(" ".join(tokens) + "\n")
    return out.getvalue()


def canonical_rendering(doc: Document) -> str:
    """
    Canonical text of a document.

    Digraphs are sinkified with sorted edges. Presentations with a complete matching are
    listed by ascending representative and carry their `match` line; others keep their
    input order.
    """
    if doc.digraph is not None:
        sinks = doc.sinks or SinkSet()
        return render_digraph(sinkify(doc.digraph, sinks), sinks)
    if doc.presentation is not None:
        try:
            pair = bipartite_to_digraph(doc.presentation, doc.matching)
        except GammoidkitError:
            return render_presentation(doc.presentation, doc.matching)
        return render_presentation(pair.presentation, pair.matching)
    return json.dumps(doc.matroid.to_dict()) + "\n"


def convert(doc: Document) -> Document:
    """
    digraph -> presentation with its matching, presentation -> digraph with sinks
    """
    if doc.digraph is not None:
        pair = digraph_to_bipartite(doc.digraph, doc.sinks or SinkSet())
        return Document(source=doc.source, presentation=pair.presentation, matching=pair.matching)
    if doc.presentation is not None:
        pair = bipartite_to_digraph(doc.presentation, doc.matching)
        return Document(source=doc.source, digraph=pair.digraph, sinks=pair.sinks)
    raise ParseError("a matroid document cannot be converted", source=doc.source, line=1, column=1)
