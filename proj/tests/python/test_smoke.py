"""Smoke tests for the _memento extension: ingest, serve, negotiate."""

import pathlib

import pytest

import _memento as m

SNAPSHOT_DATES = ["2007-09-01", "2008-02-01", "2008-08-01", "2008-11-01",
                  "2009-07-01", "2009-11-01"]
FRANCE = "http://dbpedia.org/resource/France"
GDP = "http://dbpedia.org/property/gdpPppPerCapita"
GDP_VALUES = ["25000", "$27,500", "29000 (2008 est.)", "30,000", "31500", "33188"]


@pytest.fixture(scope="module")
def archive_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("archive")
    manifest = []
    for i, date in enumerate(SNAPSHOT_DATES):
        snap = root / f"snap_{i}.nt"
        snap.write_text(f'<{FRANCE}> <{GDP}> "{GDP_VALUES[i]}" .\n')
        manifest.append((m.Timestamp.from_iso(date), pathlib.Path(snap)))
    report = m.Archive.ingest(manifest, root / "arch", "http://py.test")
    assert report["subjects"] == 1
    assert report["records"] == 5
    return root / "arch"


def test_timestamp_codecs():
    t = m.Timestamp.from_iso("2008-03-20")
    assert t.http() == "Thu, 20 Mar 2008 00:00:00 GMT"
    assert m.Timestamp.from_http(t.http()) == t
    assert m.Timestamp.from_civil(2008, 3, 20) == t
    assert t < m.Timestamp.from_iso("2008-03-21")


def test_archive_lookup(archive_dir):
    archive = m.Archive.open(archive_dir)
    assert archive.subjects() == [FRANCE]

    hit = archive.lookup(FRANCE, m.Timestamp.from_iso("2008-03-20"))
    assert hit.kind == "memento"
    assert hit.record.interval.start == m.Timestamp.from_iso("2008-02-01")
    assert "$27,500" in archive.representation(hit.record)

    assert archive.lookup(FRANCE, m.Timestamp.from_iso("2009-12-01")).kind == "current"
    assert archive.lookup(FRANCE, m.Timestamp.from_iso("2006-01-01")).kind == "out-of-range"
    with pytest.raises(m.MementoError):
        archive.lookup("http://nowhere.test/x", m.Timestamp.from_iso("2008-01-01"))


def test_timemap_serialization(archive_dir):
    archive = m.Archive.open(archive_dir)
    xml = m.timemap_rdfxml(archive, FRANCE)
    assert f'<mem:timeGateFor rdf:resource="{FRANCE}"/>' in xml
    assert xml.count("<mem:Memento ") == 5


def test_service_and_client_roundtrip(archive_dir):
    service = m.Service(str(archive_dir))
    service.start()
    try:
        client = m.Client()
        resource = service.base_url() + "/resource/France"

        res = client.fetch_at(resource, m.Timestamp.from_iso("2008-03-20"))
        assert res.final_uri.endswith("/memento/20080201/" + FRANCE)
        assert res.content_datetime == m.Timestamp.from_iso("2008-02-01")
        triples = m.parse_ntriples(res.body)
        assert (FRANCE, GDP, "$27,500") in triples

        back = client.renavigate(res.final_uri, m.Timestamp.from_iso("2009-08-01"))
        assert back.final_uri.endswith("/memento/20090701/" + FRANCE)

        with pytest.raises(m.OutOfRangeError):
            client.fetch_at(resource, m.Timestamp.from_iso("2005-01-01"))
    finally:
        service.stop()


def test_normalize():
    assert m.normalize("$29,000") == 29000.0
    assert m.normalize("29000 (2008 est.)") == 29000.0
    assert m.normalize("unknown") is None
