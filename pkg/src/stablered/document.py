"""JSON graph documents and DOT rendering."""

from __future__ import annotations

import json

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .basechange import SplittingPlan
from .errors import InvalidGraph, InvariantError, NonIntegralSelfIntersection, ParseError, SchemaError
from .fibergraph import Component, FiberGraph, ReducedGraph, self_intersection


class ComponentDoc(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)

    id: str
    genus: int = Field(ge=0)
    mult: int = Field(ge=1)


class GraphDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)

    residue_char: int = Field(ge=0)
    components: list[ComponentDoc]
    edges: list[tuple[str, str]] = []
    splitting: dict[str, int] | None = None


def _format_validation(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(x) for x in err["loc"]) or "<document>"
        parts.append(f"{loc}: {err['msg']}")
    return "; ".join(parts)


def parse(text: str) -> tuple[FiberGraph, SplittingPlan | None]:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise SchemaError("<document>: expected a JSON object")
    try:
        doc = GraphDocument.model_validate_json(text)
    except ValidationError as exc:
        raise SchemaError(_format_validation(exc)) from None
    return from_document(doc)


def from_document(doc: GraphDocument) -> tuple[FiberGraph, SplittingPlan | None]:
    ids = [c.id for c in doc.components]
    seen = set()
    for k, cid in enumerate(ids):
        if cid in seen:
            raise InvariantError(f"components.{k}.id: duplicate id {cid!r}")
        seen.add(cid)
    for k, (i, j) in enumerate(doc.edges):
        for side, x in ((0, i), (1, j)):
            if x not in seen:
                raise InvariantError(f"edges.{k}.{side}: unknown component {x!r}")
        if i == j:
            raise InvariantError(f"edges.{k}: self-loop at {i!r} is not allowed in an SNC fiber")
    p = doc.residue_char
    if p == 1 or (p > 1 and any(p % q == 0 for q in range(2, int(p**0.5) + 1))):
        raise InvariantError(f"residue_char: {p} is neither 0 nor a prime")
    try:
        g = FiberGraph(
            tuple(Component(c.id, c.genus, c.mult) for c in doc.components),
            tuple(tuple(e) for e in doc.edges),
            p,
        )
    except InvalidGraph as exc:
        raise InvariantError(str(exc)) from None
    plan = None
    if doc.splitting is not None:
        for cid, c in doc.splitting.items():
            if cid not in seen:
                raise InvariantError(f"splitting.{cid}: unknown component")
            if c < 1:
                raise InvariantError(f"splitting.{cid}: copy count must be positive")
        plan = SplittingPlan({k: v for k, v in doc.splitting.items() if v != 1})
    return g, plan


def parse_plan(text: str) -> SplittingPlan:
    """A plan file is a JSON object mapping component ids to copy counts."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(raw, dict) and "splitting" in raw:
        raw = raw["splitting"]
    if not isinstance(raw, dict) or not all(
        isinstance(k, str) and isinstance(v, int) and not isinstance(v, bool) and v >= 1 for k, v in raw.items()
    ):
        raise SchemaError("plan: expected an object mapping component ids to positive integers")
    return SplittingPlan({k: v for k, v in raw.items() if v != 1})


def graph_to_dict(g: FiberGraph | ReducedGraph, plan: SplittingPlan | None = None) -> dict:
    if isinstance(g, ReducedGraph):
        return {
            "components": [{"id": cid, "genus": gen} for cid, gen in g.components],
            "edges": [list(e) for e in g.edges],
        }
    out = {
        "residue_char": g.residue_char,
        "components": [{"id": c.id, "genus": c.genus, "mult": c.mult} for c in g.components],
        "edges": [list(e) for e in g.edges],
    }
    if plan is not None and plan.overrides:
        out["splitting"] = plan.as_dict()
    if g.nodal:
        out["nodal"] = True
    return out


def serialize(g: FiberGraph, plan: SplittingPlan | None = None) -> str:
    return json.dumps(graph_to_dict(g, plan), indent=2, sort_keys=True) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(g: FiberGraph | ReducedGraph, name: str = "fiber") -> str:
    lines = [f"graph {_quote(name)} {{"]
    if isinstance(g, ReducedGraph):
        for cid, gen in sorted(g.components):
            lines.append(f"  {_quote(cid)} [label={_quote(f'{cid} g={gen} m=1')}];")
    else:
        for c in sorted(g.components, key=lambda c: c.id):
            if len(g.components) < 2:
                s = "0"
            else:
                try:
                    s = str(self_intersection(g, c.id))
                except NonIntegralSelfIntersection:
                    s = "?"
            lines.append(f"  {_quote(c.id)} [label={_quote(f'{c.id} g={c.genus} m={c.mult} s={s}')}];")
    for i, j in sorted(g.edges):
        lines.append(f"  {_quote(i)} -- {_quote(j)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
