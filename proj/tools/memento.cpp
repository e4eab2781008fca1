#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "memento/archive.hpp"
#include "memento/client.hpp"
#include "memento/errors.hpp"
#include "memento/service.hpp"
#include "memento/timegate.hpp"
#include "memento/timemap.hpp"
#include "memento/timeseries.hpp"

namespace {

memento::Service* g_service = nullptr;

void on_signal(int) {
    if (g_service) g_service->stop();
}

memento::Timestamp parse_datetime_flag(const std::string& raw) {
    try {
        return memento::parse_iso8601(raw);
    } catch (const memento::MalformedDate&) {
        return memento::parse_http_date(raw);
    }
}

std::string default_archive() {
    const char* env = std::getenv("MEMENTO_ARCHIVE");
    return env ? env : "";
}

void write_out(const std::string& out_path, const std::string& data) {
    if (out_path.empty()) {
        std::cout << data;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw memento::Error("cannot write " + out_path);
        out << data;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Memento datetime-negotiating archive"};
    app.require_subcommand(1);

    // ingest
    std::string manifest_path, archive_path = default_archive();
    std::string base_url = "http://127.0.0.1:8085";
    std::string fixed_now;
    bool strict = false;
    auto* ingest = app.add_subcommand("ingest", "Load dated snapshots into an archive");
    ingest->add_option("manifest", manifest_path, "Manifest: one '<ISO date> <path>' per line")
        ->required();
    ingest->add_option("archive", archive_path, "Archive directory to create")->required();
    ingest->add_option("--base-url", base_url, "Base URL minted into memento URIs");
    ingest->add_flag("--strict", strict, "Fail on the first malformed N-Triples line");
    ingest->add_option("--fixed-now", fixed_now, "Pin the archive build timestamp (ISO 8601)");

    // serve
    std::string listen = "127.0.0.1:8085";
    std::string serve_archive = default_archive(), serve_base;
    bool external_original = false;
    auto* serve = app.add_subcommand("serve", "Serve the archive over HTTP");
    serve->add_option("--archive", serve_archive, "Archive directory")
        ->required(default_archive().empty());
    serve->add_option("--listen", listen, "host:port (default 127.0.0.1:8085)");
    serve->add_option("--base-url", serve_base, "External base URL when behind a proxy");
    serve->add_flag("--external-original", external_original,
                    "Redirect current-range requests to the subject URI itself");

    // get
    std::string get_uri, get_datetime, get_accept = "application/n-triples";
    auto* get = app.add_subcommand("get", "Datetime-negotiated fetch via the timegate link");
    get->add_option("uri", get_uri, "Original resource URI")->required();
    get->add_option("--datetime", get_datetime, "Preferred datetime (ISO 8601 or HTTP-date)");
    get->add_option("--accept", get_accept, "Media type preference");

    // timemap
    std::string tm_uri, tm_archive = default_archive(), tm_base, tm_out;
    auto* timemap = app.add_subcommand("timemap", "Emit the RDF/XML TimeMap for a subject");
    timemap->add_option("uri", tm_uri, "Subject URI")->required();
    timemap->add_option("--archive", tm_archive, "Archive directory")
        ->required(default_archive().empty());
    timemap->add_option("--base-url", tm_base, "Base URL for minted URIs");
    timemap->add_option("--out", tm_out, "Write to file instead of stdout");

    // timeseries
    std::string ts_spec, ts_format = "csv", ts_out;
    auto* timeseries =
        app.add_subcommand("timeseries", "Sweep resources x datetimes into a value table");
    timeseries->add_option("spec", ts_spec, "Series spec file")->required();
    timeseries->add_option("--format", ts_format, "csv or chart-params")
        ->check(CLI::IsMember({"csv", "chart-params"}));
    timeseries->add_option("--out", ts_out, "Write to file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            auto manifest = memento::load_manifest(manifest_path);
            std::optional<memento::Timestamp> now;
            if (!fixed_now.empty()) now = memento::parse_iso8601(fixed_now);
            auto report =
                memento::Archive::ingest(manifest, archive_path, base_url, strict, now);
            std::printf("subjects=%zu records=%zu skipped=%zu elapsed=%.3f\n", report.subjects,
                        report.records, report.skipped_lines, report.elapsed_seconds);
            return 0;
        }

        if (*serve) {
            auto colon = listen.rfind(':');
            if (colon == std::string::npos) throw memento::Error("--listen needs host:port");
            memento::ServiceConfig cfg;
            cfg.host = listen.substr(0, colon);
            cfg.port = std::stoi(listen.substr(colon + 1));
            cfg.base_url = serve_base;
            cfg.external_original = external_original;
            memento::Service service(memento::Archive::open(serve_archive), std::move(cfg));
            g_service = &service;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::fprintf(stderr, "serving %s on %s\n", serve_archive.c_str(), listen.c_str());
            service.run();
            return 0;
        }

        if (*get) {
            memento::Client client;
            memento::MementoResponse res;
            try {
                res = get_datetime.empty()
                          ? client.get(get_uri, get_accept)
                          : client.fetch_at(get_uri, parse_datetime_flag(get_datetime),
                                            get_accept);
            } catch (const memento::OutOfRange& e) {
                std::fprintf(stderr, "%s\n", e.what());
                return 2;
            }
            std::cout << "uri: " << res.final_uri << "\n";
            if (res.content_datetime)
                std::cout << "content-datetime: " << format_http_date(*res.content_datetime)
                          << "\n";
            if (!res.links.empty())
                std::cout << "link: " << memento::format_link_header(res.links) << "\n";
            if (res.gap_warning)
                std::cerr << "warning: returned version predates a gap in the archive\n";
            std::cout << "\n" << res.body;
            return 0;
        }

        if (*timemap) {
            auto archive = memento::Archive::open(tm_archive, tm_base);
            auto doc = memento::build_timemap(archive, tm_uri);
            write_out(tm_out, memento::serialize_rdfxml(doc));
            return 0;
        }

        if (*timeseries) {
            auto spec = memento::load_series_spec(ts_spec);
            memento::Client client;
            auto result = memento::run_series(spec, client);
            write_out(ts_out, ts_format == "csv" ? memento::emit_csv(result)
                                                 : memento::emit_chart_params(result));
            for (std::size_t r = 0; r < result.cells.size(); ++r)
                for (std::size_t c = 0; c < result.cells[r].size(); ++c)
                    if (!result.cells[r][c].anomaly.empty())
                        std::fprintf(stderr, "anomaly [%s @ %s]: %s\n",
                                     spec.resources[r].c_str(),
                                     memento::format_iso8601(spec.times[c]).c_str(),
                                     result.cells[r][c].anomaly.c_str());
            return 0;
        }
    } catch (const memento::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
