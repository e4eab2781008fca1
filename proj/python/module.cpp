#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "memento/archive.hpp"
#include "memento/client.hpp"
#include "memento/errors.hpp"
#include "memento/link_header.hpp"
#include "memento/ntriples.hpp"
#include "memento/service.hpp"
#include "memento/temporal.hpp"
#include "memento/timegate.hpp"
#include "memento/timemap.hpp"
#include "memento/timeseries.hpp"

namespace py = pybind11;
using namespace memento;

namespace {

// Keeps the archive and the running server together for Python callers.
class PyService {
public:
    PyService(const std::string& archive_dir, int port) {
        ServiceConfig cfg;
        cfg.port = port;
        service_ = std::make_unique<Service>(Archive::open(archive_dir), std::move(cfg));
    }
    void start() { service_->start(); }
    void stop() { service_->stop(); }
    int port() const { return service_->port(); }
    std::string base_url() const { return service_->base_url(); }

private:
    std::unique_ptr<Service> service_;
};

std::string kind_name(LookupResult::Kind kind) {
    switch (kind) {
        case LookupResult::Kind::Memento: return "memento";
        case LookupResult::Kind::Current: return "current";
        case LookupResult::Kind::OutOfRange: return "out-of-range";
    }
    return "?";
}

}  // namespace

PYBIND11_MODULE(_memento, m) {
    m.doc() = "HTTP datetime-negotiated resource versioning: archive, service and client";

    py::register_exception<Error>(m, "MementoError");
    py::register_exception<OutOfRange>(m, "OutOfRangeError");

    py::class_<Timestamp>(m, "Timestamp")
        .def_static("from_iso", [](const std::string& s) { return parse_iso8601(s); })
        .def_static("from_http", [](const std::string& s) { return parse_http_date(s); })
        .def_static("from_unix", &Timestamp::from_unix)
        .def_static("from_civil", &Timestamp::from_civil, py::arg("year"), py::arg("month"),
                    py::arg("day"), py::arg("hour") = 0, py::arg("minute") = 0,
                    py::arg("second") = 0)
        .def("iso", [](const Timestamp& t) { return format_iso8601(t); })
        .def("http", [](const Timestamp& t) { return format_http_date(t); })
        .def("unix_seconds", &Timestamp::unix_seconds)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def(py::self <= py::self)
        .def(py::self > py::self)
        .def(py::self >= py::self)
        .def("__repr__",
             [](const Timestamp& t) { return "Timestamp(" + format_iso8601(t) + ")"; });

    py::class_<Interval>(m, "Interval")
        .def_readonly("start", &Interval::start)
        .def_readonly("end", &Interval::end)
        .def("covers", &Interval::covers);

    py::class_<MementoRecord>(m, "MementoRecord")
        .def_readonly("subject", &MementoRecord::subject)
        .def_readonly("interval", &MementoRecord::interval)
        .def_readonly("memento_uri", &MementoRecord::memento_uri);

    py::class_<LookupResult>(m, "LookupResult")
        .def_property_readonly("kind",
                               [](const LookupResult& r) { return kind_name(r.kind); })
        .def_readonly("record", &LookupResult::record);

    py::class_<Archive>(m, "Archive")
        .def_static(
            "ingest",
            [](const std::vector<std::pair<Timestamp, std::filesystem::path>>& manifest,
               const std::filesystem::path& dest, const std::string& base_url, bool strict,
               std::optional<Timestamp> now) {
                std::vector<ManifestEntry> entries;
                for (const auto& [date, path] : manifest) entries.push_back({date, path});
                auto report = Archive::ingest(entries, dest, base_url, strict, now);
                py::dict out;
                out["subjects"] = report.subjects;
                out["records"] = report.records;
                out["skipped_lines"] = report.skipped_lines;
                out["elapsed_seconds"] = report.elapsed_seconds;
                return out;
            },
            py::arg("manifest"), py::arg("dest"), py::arg("base_url"),
            py::arg("strict") = false, py::arg("now") = std::nullopt)
        .def_static("open", [](const std::filesystem::path& dir) { return Archive::open(dir); })
        .def("lookup", &Archive::lookup)
        .def("list_versions", &Archive::list_versions)
        .def("subjects", &Archive::subjects)
        .def("has_current", &Archive::has_current)
        .def("current_representation", &Archive::current_representation)
        .def("representation", &Archive::representation)
        .def("base_url", &Archive::base_url);

    m.def("timemap_rdfxml", [](const Archive& archive, const std::string& subject) {
        return serialize_rdfxml(build_timemap(archive, subject));
    });

    py::class_<PyService>(m, "Service")
        .def(py::init<const std::string&, int>(), py::arg("archive_dir"), py::arg("port") = 0)
        .def("start", &PyService::start)
        .def("stop", &PyService::stop)
        .def("port", &PyService::port)
        .def("base_url", &PyService::base_url);

    py::class_<MementoResponse>(m, "MementoResponse")
        .def_readonly("final_uri", &MementoResponse::final_uri)
        .def_readonly("body", &MementoResponse::body)
        .def_readonly("media_type", &MementoResponse::media_type)
        .def_readonly("content_datetime", &MementoResponse::content_datetime)
        .def_readonly("hops", &MementoResponse::hops)
        .def_readonly("gap_warning", &MementoResponse::gap_warning);

    py::class_<Client>(m, "Client")
        .def(py::init<int>(), py::arg("max_hops") = 5)
        .def("discover_timegate", &Client::discover_timegate)
        .def("fetch_at", &Client::fetch_at, py::arg("uri"), py::arg("t"),
             py::arg("media") = "application/n-triples")
        .def("get", &Client::get, py::arg("uri"),
             py::arg("media") = "application/n-triples")
        .def("renavigate", &Client::renavigate, py::arg("memento_uri"), py::arg("t"),
             py::arg("media") = "application/n-triples");

    m.def("parse_ntriples", [](const std::string& text) {
        py::list out;
        for (const auto& t : parse_ntriples_string(text))
            out.append(py::make_tuple(t.subject, t.predicate, t.object.lexical));
        return out;
    });

    m.def(
        "normalize",
        [](const std::string& raw) -> std::optional<double> { return normalize(raw); },
        "Numeric normalization for messy versioned literals");
}
