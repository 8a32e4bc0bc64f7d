import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from rich.console import Console

from .sigma import MEMBER, NON_MEMBER
from .utils.codec import canonical_json

INDEX_NAME = "index.json"

console = Console()


class StoreError(Exception):
    """Raised when the certificate store cannot be read or written."""


@dataclass(frozen=True)
class IndexEntry:
    """One stored certificate, keyed by scenario, direction, n and kind."""

    file: str
    scenario: str | None
    direction: str
    n: int | None
    kind: str
    status: str | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "file": self.file,
            "scenario": self.scenario,
            "direction": self.direction,
            "n": self.n,
            "kind": self.kind,
            "status": self.status,
        }


def _status(document: dict[str, Any]) -> str | None:
    """Membership outcome a certificate stands for, if any."""
    kind = document.get("kind")
    if kind == "push":
        return MEMBER
    if kind == "obstruction":
        return NON_MEMBER
    if kind == "verdict":
        return document.get("payload", {}).get("status")
    return None


class CertificateStore:
    """Append-only directory of certificate documents with an index file."""

    def __init__(self, directory: Path) -> None:
        self.directory = directory

    @property
    def index_path(self) -> Path:
        return self.directory / INDEX_NAME

    def entries(self) -> list[IndexEntry]:
        """Index entries in insertion order."""
        if not self.index_path.exists():
            return []
        try:
            with self.index_path.open("r") as f:
                data = json.load(f)
            return [IndexEntry(**entry) for entry in data]
        except (OSError, json.JSONDecodeError, TypeError) as e:
            msg = f"Error reading the certificate index at {self.index_path}: {e}"
            raise StoreError(msg) from e

    def _write_index(self, entries: list[IndexEntry]) -> None:
        with self.index_path.open("w") as f:
            json.dump([entry.to_json() for entry in entries], f, indent=2)
            f.write("\n")

    def put(self, document: dict[str, Any]) -> Path:
        """Write a document and index it; identical content reuses its file."""
        name = f"{document['kind']}-{document['digest'][:16]}.json"
        path = self.directory / name
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            if not path.exists():
                with path.open("w") as f:
                    json.dump(document, f, indent=2, sort_keys=True)
                    f.write("\n")
            entries = self.entries()
            if all(entry.file != name for entry in entries):
                entries.append(
                    IndexEntry(
                        file=name,
                        scenario=document.get("scenario"),
                        direction=canonical_json(document.get("direction")),
                        n=document.get("n"),
                        kind=document["kind"],
                        status=_status(document),
                    )
                )
                self._write_index(entries)
        except OSError as e:
            msg = f"Error writing certificate {path}: {e}"
            raise StoreError(msg) from e
        return path

    def load(self, name: str) -> dict[str, Any]:
        """Read a stored document by file name."""
        return read_document(self.directory / name)

    def find(
        self,
        scenario: str | None = None,
        direction: Any = None,
        n: int | None = None,
        kind: str | None = None,
    ) -> list[IndexEntry]:
        """Entries matching every given key."""
        wanted = None if direction is None else canonical_json(direction)
        return [
            entry
            for entry in self.entries()
            if (scenario is None or entry.scenario == scenario)
            and (wanted is None or entry.direction == wanted)
            and (n is None or entry.n == n)
            and (kind is None or entry.kind == kind)
        ]

    def missing(self) -> list[IndexEntry]:
        """Index entries whose file has disappeared."""
        lost = [
            entry
            for entry in self.entries()
            if not (self.directory / entry.file).exists()
        ]
        for entry in lost:
            console.print(f"Warning: indexed certificate '{entry.file}' is missing")
        return lost

    def contradictions(self) -> list[tuple[IndexEntry, IndexEntry]]:
        """Pairs (Member at n, NonMember at m <= n) for one scenario and direction."""
        entries = [entry for entry in self.entries() if entry.n is not None]
        return [
            (member, other)
            for member in entries
            if member.status == MEMBER
            for other in entries
            if other.status == NON_MEMBER
            and other.scenario == member.scenario
            and other.direction == member.direction
            and other.n <= member.n
        ]


def read_document(path: Path) -> dict[str, Any]:
    """Load a certificate document from a JSON file."""
    try:
        with path.open("r") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        msg = f"Error reading certificate file at {path}: {e}"
        raise StoreError(msg) from e
