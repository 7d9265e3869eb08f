import pytest
from pydantic import ValidationError

from lattice.lc_lattice import induced_graph
from shared.audit_logger import AuditLogger
from shared.coloring import ColorSet, VerificationReport
from shared.documents import ColoringDocument, GraphDocument, ListsDocument, OracleDocument
from shared.errors import InputError
from shared.file_storage import FileStorage
from shared.kafka_client import KafkaClient


# ----------------------------------------------------------------------------
# Documents and storage
# ----------------------------------------------------------------------------
def test_storage_round_trip(tmp_path, hexagon):
    storage = FileStorage(str(tmp_path))
    document = GraphDocument.from_graph(hexagon)
    path = storage.write_document("hexagon.json", document)
    assert path == str(tmp_path / "hexagon.json")
    assert storage.exists("hexagon.json")
    assert storage.read_document("hexagon.json", GraphDocument).to_graph() == hexagon


def test_identical_documents_give_identical_bytes(tmp_path, hexagon):
    storage = FileStorage(str(tmp_path))
    first = storage.write_document("a.json", GraphDocument.from_graph(hexagon))
    second = storage.write_document(str(tmp_path / "b.json"), GraphDocument.from_graph(induced_graph(list(hexagon))))
    assert open(first, "rb").read() == open(second, "rb").read()


def test_lists_document_alignment(hexagon):
    graph_doc = GraphDocument.from_graph(hexagon)
    lists_doc = ListsDocument(lists=[[1, 2, 3, 4, 5]] * 6, a=5, b=2)
    aligned = lists_doc.aligned(graph_doc)
    assert aligned[(0, 0)] == ColorSet(range(1, 6))
    assert lists_doc.size == 5
    with pytest.raises(InputError):
        ListsDocument(lists=[[1, 2, 3, 4, 5]] * 5).aligned(graph_doc)


@pytest.mark.parametrize("payload", [
    {"lists": [[1, 1, 2]]},
    {"lists": [[1, 2], [1, 2, 3]]},
    {"lists": [[1, 2]], "a": 3},
    {"lists": [[1, 2]], "extra": True},
])
def test_lists_document_rejects(payload):
    with pytest.raises(ValidationError):
        ListsDocument(**payload)


def test_graph_document_rejects_duplicates():
    with pytest.raises(ValidationError):
        GraphDocument(vertices=[(0, 0), (0, 0)])


def test_coloring_document_follows_graph_order(hexagon):
    graph_doc = GraphDocument.from_graph(hexagon)
    coloring = {v: ColorSet({1, 2}) if i % 2 == 0 else ColorSet({3, 4}) for i, v in enumerate(graph_doc.order())}
    document = ColoringDocument.from_coloring(graph_doc, coloring, 5, 2)
    assert document.coloring[0] == [1, 2] and document.coloring[1] == [3, 4]
    assert document.aligned(graph_doc) == coloring


def test_oracle_document():
    doc = OracleDocument.model_validate_json('{"kind": "cycle", "lists": [[1], [2], [3]], "weights": [1, 1, 1]}')
    assert len(doc.to_path()) == 3
    with pytest.raises(ValidationError):
        OracleDocument(kind="cycle", lists=[[1], [2]], weights=[1, 1])
    with pytest.raises(ValidationError):
        OracleDocument(lists=[[1], [2]], weights=[1])


# ----------------------------------------------------------------------------
# Audit log and event streaming
# ----------------------------------------------------------------------------
def test_audit_logger_writes_and_searches(tmp_path):
    audit = AuditLogger(str(tmp_path / "run_log.txt"), enabled=True)
    audit.log_solve("lc solve", 8, 5, 2, True, steps=3)
    audit.log_verify("lc verify", 8, VerificationReport(False, "subset", vertex=(0, 0)))
    audit.log_selftest("lc selftest", "smoke", 11, [])

    assert len(audit.get_recent_logs()) == 3
    solved = audit.search_logs(event_type="SOLVE")
    assert solved[0]["action"] == "SOLVED" and solved[0]["details"]["steps"] == 3
    assert audit.search_logs(action="FAIL")[0]["source"] == "lc verify"
    assert audit.search_logs(source="nobody") == []


def test_disabled_audit_logger_stays_silent(tmp_path):
    log_file = tmp_path / "run_log.txt"
    AuditLogger(str(log_file), enabled=False).log_oracle("lc oracle", "path", 3, True)
    assert not log_file.exists()


def test_kafka_client_without_broker():
    client = KafkaClient("LatticeChoose", broker=None)
    assert not client.connected
    assert client.publish_event("solve_events", "SOLVED", {"vertices": 1}) is False
    client.close()
