"""
JSON structure documents

A document names a structure, fixes the ground order, and carries one of
five payload kinds. Parsing validates the schema with pydantic and then runs
the matching constructor, so every ingestion check happens here.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Annotated, Literal, Union

from pydantic import (
    AfterValidator,
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    ValidationError,
    model_validator,
)

from .constructions import (
    Poset,
    RankTable,
    RootedMultigraph,
    from_greedoid,
    from_polymatroid,
    from_poset,
    from_rooted_graph,
)
from .core import GroundSet, Megagreedoid, MegagreedoidError


class DocumentError(MegagreedoidError):
    """The document is not valid JSON or does not match the schema"""


def _coerce_rational(value):
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    return value


def _check_rational(value: str) -> str:
    try:
        return str(Fraction(value.strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {value!r}") from None


RationalText = Annotated[str, BeforeValidator(_coerce_rational), AfterValidator(_check_rational)]
RankEntry = tuple[list[str], RationalText]


class _Payload(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    def labels(self) -> set[str]:
        return set()


class ExplicitStructure(_Payload):
    kind: Literal["explicit"] = "explicit"
    sets: list[RankEntry]

    def labels(self) -> set[str]:
        return {label for subset, _ in self.sets for label in subset}


class RootedGraphStructure(_Payload):
    kind: Literal["rooted_graph"] = "rooted_graph"
    root: str
    edges: list[tuple[str, str]]
    half_edges: list[str] = Field(default_factory=list)

    def labels(self) -> set[str]:
        endpoints = {label for edge in self.edges for label in edge} - {self.root}
        return endpoints | set(self.half_edges)


class PosetStructure(_Payload):
    kind: Literal["poset"] = "poset"
    covers: list[tuple[str, str]]

    def labels(self) -> set[str]:
        return {label for pair in self.covers for label in pair}


class GreedoidStructure(_Payload):
    kind: Literal["greedoid"] = "greedoid"
    ranks: list[RankEntry]

    def labels(self) -> set[str]:
        return {label for subset, _ in self.ranks for label in subset}


class PolymatroidStructure(_Payload):
    kind: Literal["polymatroid"] = "polymatroid"
    ranks: list[RankEntry]

    def labels(self) -> set[str]:
        return {label for subset, _ in self.ranks for label in subset}


Structure = Annotated[
    Union[ExplicitStructure, RootedGraphStructure, PosetStructure, GreedoidStructure, PolymatroidStructure],
    Field(discriminator="kind"),
]


class StructureDocument(BaseModel):
    """A named structure over an ordered ground set"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    order: list[str]
    structure: Structure

    @model_validator(mode="after")
    def _labels_in_order(self) -> "StructureDocument":
        if len(set(self.order)) != len(self.order):
            raise ValueError("order lists a label twice")
        unknown = self.structure.labels() - set(self.order)
        if unknown:
            raise ValueError(f"labels {sorted(unknown)} are not in order")
        return self


def _describe_validation(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<document>"
        lines.append(f"{location}: {item['msg']}")
    return "; ".join(lines)


def parse_document(text: str) -> StructureDocument:
    """
    Parse and schema-check a JSON document

    Raises:
        DocumentError: bad JSON (with line and column) or schema mismatch (with field path)
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return StructureDocument.model_validate(payload)
    except ValidationError as exc:
        raise DocumentError(f"invalid structure document: {_describe_validation(exc)}") from exc


def parse_documents(text: str) -> list[StructureDocument]:
    """A single document or a JSON array of documents"""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    items = payload if isinstance(payload, list) else [payload]
    documents = []
    for position, item in enumerate(items):
        try:
            documents.append(StructureDocument.model_validate(item))
        except ValidationError as exc:
            raise DocumentError(f"document {position}: {_describe_validation(exc)}") from exc
    return documents


def render_document(doc: StructureDocument) -> str:
    return doc.model_dump_json(indent=2)


def render_documents(docs: list[StructureDocument]) -> str:
    return json.dumps([doc.model_dump(mode="json") for doc in docs], indent=2)


def _rank_table(doc: StructureDocument, entries: list) -> RankTable:
    return RankTable.from_labelled(doc.order, ((labels, Fraction(value)) for labels, value in entries))


def build_structure(doc: StructureDocument):
    """The classical object a document describes (or the megagreedoid for explicit documents)"""
    payload = doc.structure
    if isinstance(payload, ExplicitStructure):
        return Megagreedoid.from_labelled(doc.order, ((labels, Fraction(value)) for labels, value in payload.sets))
    if isinstance(payload, RootedGraphStructure):
        return RootedMultigraph(GroundSet(doc.order), payload.root, payload.edges, payload.half_edges)
    if isinstance(payload, PosetStructure):
        return Poset(GroundSet(doc.order), payload.covers)
    return _rank_table(doc, payload.ranks)


def build_megagreedoid(doc: StructureDocument) -> Megagreedoid:
    """Dispatch a document to its constructor"""
    payload = doc.structure
    structure = build_structure(doc)
    if isinstance(payload, ExplicitStructure):
        return structure
    if isinstance(payload, RootedGraphStructure):
        return from_rooted_graph(structure)
    if isinstance(payload, PosetStructure):
        return from_poset(structure)
    if isinstance(payload, GreedoidStructure):
        return from_greedoid(structure)
    return from_polymatroid(structure)


def parse(text: str) -> Megagreedoid:
    return build_megagreedoid(parse_document(text))


def _rank_entries(ground: GroundSet, values: dict) -> list:
    return [(ground.labels_of(mask), str(value)) for mask, value in sorted(values.items())]


def document_for_megagreedoid(name: str, m: Megagreedoid) -> StructureDocument:
    return StructureDocument(
        name=name,
        order=list(m.ground.elements),
        structure=ExplicitStructure(sets=_rank_entries(m.ground, m.ranks())),
    )


def document_for_rooted_graph(name: str, g: RootedMultigraph) -> StructureDocument:
    return StructureDocument(
        name=name,
        order=list(g.ground.elements),
        structure=RootedGraphStructure(root=g.root, edges=list(g.full_edges), half_edges=list(g.half_edges)),
    )


def document_for_poset(name: str, p: Poset) -> StructureDocument:
    return StructureDocument(name=name, order=list(p.ground.elements), structure=PosetStructure(covers=p.covers()))


def document_for_rank_table(name: str, t: RankTable, kind: str) -> StructureDocument:
    model = {"greedoid": GreedoidStructure, "polymatroid": PolymatroidStructure}[kind]
    return StructureDocument(
        name=name,
        order=list(t.ground.elements),
        structure=model(ranks=_rank_entries(t.ground, t.values)),
    )
