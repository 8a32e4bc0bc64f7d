import json
from pathlib import Path

import pytest

from sigmacat.sigma import MEMBER, NON_MEMBER, envelope
from sigmacat.store import CertificateStore, StoreError, read_document


def verdict(status: str, n: int, direction=("1", "0"), scenario="abc"):
    return envelope(
        "verdict",
        {"status": status},
        scenario=scenario,
        direction=list(direction),
        n=n,
    )


@pytest.fixture
def store(tmp_path: Path) -> CertificateStore:
    return CertificateStore(tmp_path / "certs")


def test_put_writes_and_indexes(store: CertificateStore):
    path = store.put(verdict(MEMBER, 1))

    assert path.exists()
    assert path.name.startswith("verdict-")
    (entry,) = store.entries()
    assert entry.file == path.name
    assert entry.status == MEMBER
    assert entry.direction == '["1","0"]'
    assert store.load(entry.file)["payload"] == {"status": MEMBER}


def test_identical_documents_share_a_file(store: CertificateStore):
    document = verdict(MEMBER, 1)

    first = store.put(document)
    second = store.put(dict(document))

    assert first == second
    assert len(store.entries()) == 1


def test_find_by_keys(store: CertificateStore):
    store.put(verdict(MEMBER, 1))
    store.put(verdict(MEMBER, 2))
    store.put(verdict(MEMBER, 1, direction=("0", "1")))

    assert len(store.find(scenario="abc")) == 3
    assert len(store.find(direction=["1", "0"])) == 2
    assert len(store.find(direction=["1", "0"], n=2)) == 1
    assert store.find(kind="push") == []


def test_missing_files_are_reported(store: CertificateStore):
    path = store.put(verdict(MEMBER, 1))
    path.unlink()

    (entry,) = store.missing()

    assert entry.file == path.name


def test_member_above_non_member_is_a_contradiction(store: CertificateStore):
    """Membership in dimension n implies membership in every lower dimension."""
    store.put(verdict(NON_MEMBER, 1))
    store.put(verdict(MEMBER, 2))
    store.put(verdict(MEMBER, 1, direction=("0", "1")))

    ((member, other),) = store.contradictions()

    assert member.n == 2
    assert other.n == 1


def test_member_below_non_member_is_consistent(store: CertificateStore):
    store.put(verdict(MEMBER, 0))
    store.put(verdict(NON_MEMBER, 1))

    assert store.contradictions() == []


def test_corrupt_index_raises(store: CertificateStore):
    store.directory.mkdir(parents=True)
    store.index_path.write_text("{not json")

    with pytest.raises(StoreError, match="Error reading the certificate index"):
        store.entries()


def test_read_document(tmp_path: Path):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps({"kind": "push"}))

    assert read_document(path) == {"kind": "push"}


@pytest.mark.parametrize("content", [None, "[1, 2"])
def test_read_document_errors(tmp_path: Path, content):
    path = tmp_path / "doc.json"
    if content is not None:
        path.write_text(content)

    with pytest.raises(StoreError, match="Error reading certificate file"):
        read_document(path)
