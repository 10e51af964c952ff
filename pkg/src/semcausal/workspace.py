"""Workspace: persistent store file, minting mode, and shape registry
shared by the CLI and the HTTP service."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import vocab
from .causal_model import CausalNetwork
from .errors import ParseError, StoreLoadError, UnknownVariable
from .ids import IdMinter
from .quad_store import Iri, QuadStore, local_name
from .semantic_units import LabelTemplate, Shape, StatementUnit
from .shapes import BUILTIN_SHAPES

DEFAULT_LISTEN = "127.0.0.1:8349"


@dataclass
class WorkspaceConfig:
    store_path: Path = Path("workspace.nq")
    shapes_dir: Optional[Path] = None
    deterministic_ids: bool = False
    max_adjustment_size: int = 4
    listen_addr: str = DEFAULT_LISTEN
    ui_dir: Optional[Path] = None

    def __post_init__(self) -> None:
        if self.max_adjustment_size < 0:
            raise ValueError("max_adjustment_size must be >= 0")


def load_shape_file(path: Path) -> tuple[Shape, Optional[LabelTemplate]]:
    data = json.loads(path.read_text(encoding="utf-8"))
    shape = Shape.from_dict(data)
    template = None
    if "label" in data:
        template = LabelTemplate.from_dict({"shape_id": data["shape_id"], **data["label"]})
    return shape, template


class Workspace:
    """Store + minter + shapes; mutations go through save()."""

    def __init__(self, config: WorkspaceConfig):
        self.config = config
        self.minter = IdMinter(deterministic=config.deterministic_ids)
        if config.store_path and Path(config.store_path).exists():
            try:
                self.store = QuadStore.load(config.store_path)
            except ParseError as exc:
                raise StoreLoadError(f"cannot load {config.store_path}: {exc}") from exc
        else:
            self.store = QuadStore()
        self.shapes: dict[Iri, tuple[Shape, Optional[LabelTemplate]]] = dict(BUILTIN_SHAPES)
        if config.shapes_dir is not None:
            for path in sorted(Path(config.shapes_dir).glob("*.json")):
                shape, template = load_shape_file(path)
                self.shapes[shape.shape_id] = (shape, template)

    def save(self) -> None:
        if self.config.store_path:
            self.store.save(self.config.store_path)

    def shape_for(self, unit: StatementUnit) -> Optional[tuple[Shape, Optional[LabelTemplate]]]:
        for quad in unit.meta:
            if quad.p == vocab.HAS_SHAPE and isinstance(quad.o, Iri):
                return self.shapes.get(quad.o)
        return None

    def resolve_node(self, net: CausalNetwork, name: str) -> Iri:
        """Resolve a node reference by exact IRI, local name, or rdfs:label."""
        exact = [v for v in net.variables if v.value == name]
        if exact:
            return exact[0]
        by_local = sorted(
            (v for v in net.variables if local_name(v) == name), key=lambda i: i.value
        )
        if len(by_local) == 1:
            return by_local[0]
        if len(by_local) > 1:
            raise UnknownVariable(f"node name {name!r} is ambiguous: {[v.value for v in by_local]}")
        by_label = sorted(
            (
                v
                for v in net.variables
                if any(
                    getattr(q.o, "lexical", None) == name
                    for q in self.store.match(s=v, p=vocab.RDFS_LABEL)
                )
            ),
            key=lambda i: i.value,
        )
        if len(by_label) == 1:
            return by_label[0]
        if len(by_label) > 1:
            raise UnknownVariable(f"label {name!r} is ambiguous: {[v.value for v in by_label]}")
        raise UnknownVariable(f"{name!r} is not a variable of map {net.id}")
