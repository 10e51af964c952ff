"""Identifier minting for semantic units and quantifier ID resources.

Default mode mints random ``urn:su:{uuid4}`` identifiers. Deterministic
mode derives identifiers from a SHA-256 over canonical content, which
makes minting reproducible and deduplicates identical units.
"""

from __future__ import annotations

import hashlib
import uuid
from dataclasses import dataclass

from .quad_store import Iri


def _digest(payload: str) -> str:
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass
class IdMinter:
    deterministic: bool = False

    def unit_id(self, canonical: str) -> Iri:
        """Mint a unit identifier; ``canonical`` is the unit's canonical form."""
        if self.deterministic:
            return Iri(f"urn:su:{_digest(canonical)}")
        return Iri(f"urn:su:{uuid.uuid4()}")

    def instance_id(self, kind: Iri, target_class: Iri) -> Iri:
        """Mint a quantifier ID resource (some/every/most instance of a class)."""
        if self.deterministic:
            return Iri(f"urn:su:i:{_digest(kind.value + '|' + target_class.value)[:24]}")
        return Iri(f"urn:su:i:{uuid.uuid4()}")

    def fresh_instance(self) -> Iri:
        """Mint an instance identifier with no derivable content."""
        return Iri(f"urn:su:i:{uuid.uuid4()}")
