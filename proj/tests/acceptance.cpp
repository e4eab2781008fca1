// Acceptance gate: one self-contained check per release criterion, each
// printed as a single PASS/FAIL line with its runtime. Exit 0 only when
// every criterion holds within its time budget.

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <httplib.h>

#include "fixtures.hpp"
#include "memento/client.hpp"
#include "memento/link_header.hpp"
#include "memento/ntriples.hpp"
#include "memento/service.hpp"
#include "memento/timegate.hpp"
#include "memento/timemap.hpp"
#include "memento/timeseries.hpp"

using namespace memento;
using namespace fixtures;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<void(std::vector<std::string>&)> run;
};

void expect(std::vector<std::string>& failures, bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) : path(fresh_dir(tag)) {}
    ~TempDir() { std::filesystem::remove_all(path); }
};

struct LiveService {
    std::filesystem::path dir;
    Service service;
    httplib::Client http;

    LiveService()
        : dir(fresh_dir("acc")),
          service(france_archive(dir), ServiceConfig{}),
          http("127.0.0.1", (service.start(), service.port())) {}
    ~LiveService() { std::filesystem::remove_all(dir); }

    std::string url(const std::string& path) const { return service.base_url() + path; }
};

// ---------------------------------------------------------------- criteria

void france_golden(std::vector<std::string>& f) {
    LiveService live;
    auto res = live.http.Get("/timegate/" + kFrance,
                             {{"Accept-Datetime", "Thu, 20 Mar 2008 00:00:00 GMT"}});
    expect(f, res && res->status == 302, "timegate status != 302");
    if (!res) return;
    std::string location = res->get_header_value("Location");
    std::string suffix = "/memento/20080201/" + kFrance;
    expect(f,
           location.size() >= suffix.size() &&
               location.compare(location.size() - suffix.size(), suffix.size(), suffix) == 0,
           "Location does not end with " + suffix + " (got " + location + ")");

    auto memento = live.http.Get("/memento/20080201/" + kFrance);
    expect(f, memento && memento->status == 200, "memento fetch failed");
    if (!memento) return;
    expect(f, memento->get_header_value("Content-Datetime") == "Fri, 01 Feb 2008 00:00:00 GMT",
           "Content-Datetime mismatch: " + memento->get_header_value("Content-Datetime"));

    auto mem = [&](const std::string& d) { return live.url("/memento/" + d + "/" + kFrance); };
    std::string expected_link =
        "<" + live.url("/resource/France") + ">; rel=\"original\", " +       //
        "<" + mem("20070901") + ">; rel=\"first-memento\"; datetime=\"Sat, 01 Sep 2007 "
        "00:00:00 GMT\", " +                                                 //
        "<" + mem("20090701") + ">; rel=\"last-memento\"; datetime=\"Wed, 01 Jul 2009 "
        "00:00:00 GMT\", " +                                                 //
        "<" + mem("20070901") + ">; rel=\"prev-memento\"; datetime=\"Sat, 01 Sep 2007 "
        "00:00:00 GMT\", " +                                                 //
        "<" + mem("20080801") + ">; rel=\"next-memento\"; datetime=\"Fri, 01 Aug 2008 "
        "00:00:00 GMT\"";
    expect(f, memento->get_header_value("Link") == expected_link,
           "Link header mismatch:\n  got      " + memento->get_header_value("Link") +
               "\n  expected " + expected_link);
}

void rule_coverage(std::vector<std::string>& f) {
    LiveService live;

    auto latest = live.http.Get("/timegate/" + kFrance);
    expect(f, latest && latest->status == 302, "no Accept-Datetime: status != 302");
    expect(f,
           latest && latest->get_header_value("Location") ==
                         live.url("/memento/20090701/" + kFrance),
           "no Accept-Datetime: not the most recent memento");

    auto choices = live.http.Get("/timegate/" + kFrance,
                                 {{"Accept-Datetime", "Thu, 20 Mar 2008 00:00:00 GMT"},
                                  {"Negotiate", "1.0"}});
    expect(f, choices && choices->status == 300, "Negotiate 1.0: status != 300");
    expect(f,
           choices && parse_link_header(choices->get_header_value("Link")).size() == 5,
           "Negotiate 1.0: choice list size != 5");

    auto pre = live.http.Get("/timegate/" + kFrance,
                             {{"Accept-Datetime", "Sun, 01 Jan 2006 00:00:00 GMT"}});
    expect(f, pre && pre->status == 406, "pre-range: status != 406");
    expect(f,
           pre && pre->body.find("Sat, 01 Sep 2007 00:00:00 GMT") != std::string::npos &&
               pre->body.find("Sun, 01 Nov 2009 00:00:00 GMT") != std::string::npos,
           "pre-range: body lacks the known range");

    auto current = live.http.Get("/timegate/" + kFrance,
                                 {{"Accept-Datetime", "Tue, 15 Dec 2009 12:00:00 GMT"}});
    expect(f, current && current->status == 302, "current-range: status != 302");
    expect(f,
           current && current->get_header_value("Location") == live.url("/resource/France"),
           "current-range: not redirected to the original");
}

void oracle_equivalence(std::vector<std::string>& f) {
    std::mt19937 rng(4242);
    for (int round = 0; round < 3; ++round) {
        TempDir tmp("accoracle");
        auto ra = write_random_archive(rng, tmp.path);
        auto archive = Archive::open(tmp.path / "archive");
        std::int64_t lo = ra.dates.front().unix_seconds() - 86400 * 10;
        std::int64_t hi = ra.dates.back().unix_seconds() + 86400 * 10;
        for (const auto& [subject, present] : ra.subjects) {
            auto versions = archive.list_versions(subject);
            bool has_current = archive.has_current(subject);
            for (int g = 0; g < 1000; ++g) {
                Timestamp t = Timestamp::from_unix(lo + (hi - lo) * g / 999);

                // brute-force linear scan
                const MementoRecord* best = nullptr;
                for (const auto& v : versions)
                    if (v.interval.start <= t &&
                        (!best || best->interval.start < v.interval.start))
                        best = &v;

                NegotiationRequest req;
                req.subject = subject;
                req.accept_datetime = t;
                auto d = negotiate(archive, req);

                if (has_current && t >= ra.dates.back()) {
                    if (d.kind != NegotiationDecision::Kind::RedirectToOriginal) {
                        expect(f, false, subject + ": expected redirect-to-original");
                        return;
                    }
                } else if (best) {
                    if (d.kind != NegotiationDecision::Kind::RedirectToMemento ||
                        d.record->interval != best->interval) {
                        expect(f, false, subject + ": selection disagrees with linear scan");
                        return;
                    }
                } else if (d.kind != NegotiationDecision::Kind::NotAcceptable) {
                    expect(f, false, subject + ": expected 406 decision");
                    return;
                }
            }
        }
    }
}

void timemap_roundtrip(std::vector<std::string>& f) {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> n_mem(1, 12);
    for (int i = 0; i < 200; ++i) {
        TimeMapDoc doc;
        std::string base = "http://a" + std::to_string(i) + ".test";
        std::string subject = "http://d.test/resource/R" + std::to_string(i);
        doc.timemap_uri = base + "/timemap/rdf/" + subject;
        doc.timebundle_uri = base + "/timebundle/" + subject;
        doc.original = subject;
        doc.timegate = base + "/timegate/" + subject;
        std::int64_t t = 1200000000 + static_cast<std::int64_t>(rng() % 1000) * 86400;
        int n = n_mem(rng);
        for (int m = 0; m < n; ++m) {
            std::int64_t end = t + 86400 * (1 + static_cast<std::int64_t>(rng() % 300));
            doc.mementos.push_back({base + "/memento/x" + std::to_string(m) + "/" + subject,
                                    {Timestamp::from_unix(t), Timestamp::from_unix(end)}});
            t = end;
        }
        doc.covers = {doc.mementos.front().period.start, *doc.mementos.back().period.end};
        doc.created = Timestamp::from_unix(t);
        doc.modified = doc.created;

        auto parsed = parse_rdfxml(serialize_rdfxml(doc));
        if (!(parsed.doc == doc) || !parsed.warnings.empty()) {
            expect(f, false, "roundtrip failed for generated doc " + std::to_string(i));
            return;
        }
    }

    std::ifstream in(std::filesystem::path(MEMENTO_TEST_DATA_DIR) / "wild_timemap.xml",
                     std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto parsed = parse_rdfxml(buf.str());
    expect(f, parsed.doc.mementos.size() == 5,
           "archived fixture: expected 5 mementos, got " +
               std::to_string(parsed.doc.mementos.size()));
    expect(f, parsed.warnings.size() == 3,
           "archived fixture: expected 3 inverted-period warnings, got " +
               std::to_string(parsed.warnings.size()));
}

void link_header_properties(std::vector<std::string>& f) {
    // the rel tokens of the protocol's memento response headers
    const std::vector<std::string> tokens = {"timegate",      "timebundle",  "original",
                                             "first-memento", "last-memento", "prev-memento",
                                             "next-memento"};
    for (const auto& t : tokens) {
        auto parsed = parse_link_header("<http://x.test/r>; rel=\"" + t + "\"");
        expect(f, parsed.size() == 1 && parsed[0].rels[0].token == t, "rel token " + t);
    }

    std::mt19937 rng(31337);
    std::uniform_int_distribution<std::size_t> n_entries(1, 6), n_params(0, 2),
        pick(0, tokens.size() - 1);
    for (int i = 0; i < 500; ++i) {
        std::vector<LinkEntry> entries;
        for (std::size_t e = n_entries(rng); e-- > 0;) {
            LinkEntry entry;
            entry.target = "http://h" + std::to_string(rng() % 997) + ".test/r" +
                           std::to_string(rng() % 97);
            entry.rels.push_back(LinkRelation::from_token(tokens[pick(rng)]));
            for (std::size_t p = n_params(rng); p-- > 0;)
                entry.params.emplace_back("p" + std::to_string(p),
                                          "v \"q\" \\s " + std::to_string(rng() % 89));
            entries.push_back(std::move(entry));
        }
        if (parse_link_header(format_link_header(entries)) != entries) {
            expect(f, false, "link header roundtrip failed at case " + std::to_string(i));
            return;
        }
    }
}

void client_challenges(std::vector<std::string>& f) {
    LiveService live;
    Client client;
    const auto& archive = live.service.archive();
    std::string france = live.url("/resource/France");

    std::vector<Timestamp> instants;
    for (const auto& d : snapshot_dates()) {
        instants.push_back(Timestamp::from_unix(d.unix_seconds() - 86400));
        instants.push_back(d);
        instants.push_back(Timestamp::from_unix(d.unix_seconds() + 86400));
    }

    for (Timestamp t1 : instants) {
        auto kind1 = archive.lookup(kFrance, t1).kind;
        if (kind1 == LookupResult::Kind::OutOfRange) continue;

        auto first = client.fetch_at(france, t1);
        auto oracle1 = archive.lookup(kFrance, t1);
        if (oracle1.kind == LookupResult::Kind::Memento) {
            if (!first.content_datetime ||
                *first.content_datetime != oracle1.record->interval.start) {
                expect(f, false, "content_datetime disagrees with oracle at t1");
                return;
            }
        } else if (first.content_datetime) {
            expect(f, false, "current-range response carries Content-Datetime");
            return;
        }

        if (oracle1.kind != LookupResult::Kind::Memento) continue;
        for (Timestamp t2 : instants) {
            if (archive.lookup(kFrance, t2).kind == LookupResult::Kind::OutOfRange) continue;
            auto direct = client.fetch_at(france, t2);
            auto via = client.renavigate(first.final_uri, t2);
            if (via.final_uri != direct.final_uri || via.body != direct.body ||
                via.content_datetime != direct.content_datetime) {
                expect(f, false, "navigation closure broken");
                return;
            }
        }
    }
}

void timeseries_equivalence(std::vector<std::string>& f) {
    LiveService live;
    Client client;
    const auto& archive = live.service.archive();

    SeriesSpec spec;
    spec.resources = {live.url("/resource/France"), live.url("/resource/Germany")};
    for (const auto& d : snapshot_dates())
        spec.times.push_back(Timestamp::from_unix(d.unix_seconds() + 3600));
    spec.property = kGdp;

    auto result = run_series(spec, client);
    const std::vector<std::string> subjects = {kFrance, kGermany};
    for (std::size_t r = 0; r < subjects.size(); ++r) {
        for (std::size_t c = 0; c < spec.times.size(); ++c) {
            auto lookup = archive.lookup(subjects[r], spec.times[c]);
            std::string body = lookup.kind == LookupResult::Kind::Current
                                   ? *archive.current_representation(subjects[r])
                                   : archive.representation(*lookup.record);
            auto raw = select_values(parse_ntriples_string(body), subjects[r], kGdp);
            auto oracle = raw.empty() ? std::nullopt : normalize(raw.front());
            if (result.cells[r][c].value != oracle) {
                expect(f, false, "pipeline matrix disagrees with the store oracle at (" +
                                     std::to_string(r) + "," + std::to_string(c) + ")");
                return;
            }
        }
    }

    struct Row {
        const char* raw;
        std::optional<double> expect_value;
    };
    const Row rows[] = {
        {"29000", 29000.0},   {"$29,000", 29000.0}, {"29000 (2008 est.)", 29000.0},
        {"30,000", 30000.0},  {" 31500 ", 31500.0}, {"$ 27,500", 27500.0},
        {"3.3188e4", 33188.0}, {"-42", -42.0},      {"0.5", 0.5},
        {"1,234,567", 1234567.0}, {"\xE2\x82\xAC""12,345", 12345.0},
        {"\xC2\xA3""9,876.5", 9876.5}, {"33188 (est)", 33188.0},
        {"$", std::nullopt},  {"unknown", std::nullopt}, {"", std::nullopt},
        {"12abc", std::nullopt}, {"N/A", std::nullopt},
    };
    for (const auto& row : rows)
        if (normalize(row.raw) != row.expect_value) {
            expect(f, false, std::string("normalization fixture failed: \"") + row.raw + "\"");
            return;
        }
}

// Peak RSS (KiB) of a child CLI ingest over a generated snapshot pair.
long ingest_peak_rss(const std::filesystem::path& dir, std::size_t lines,
                     std::vector<std::string>& f) {
    auto snap1 = dir / ("big1_" + std::to_string(lines) + ".nt");
    auto snap2 = dir / ("big2_" + std::to_string(lines) + ".nt");
    {
        std::ofstream out(snap1);
        for (std::size_t i = 0; i < lines; ++i)
            out << "<http://big.test/s" << i << "> <http://big.test/p> \"value-" << i
                << "\" .\n";
        std::ofstream out2(snap2);
        out2 << "<http://big.test/s0> <http://big.test/p> \"final\" .\n";
    }
    auto manifest = dir / ("manifest_" + std::to_string(lines) + ".txt");
    std::ofstream(manifest) << "2020-01-01 " << snap1.filename().string() << "\n"
                            << "2020-06-01 " << snap2.filename().string() << "\n";
    auto archive = dir / ("arch_" + std::to_string(lines));

    std::fflush(stdout);
    std::fflush(stderr);
    pid_t pid = fork();
    if (pid < 0) {
        expect(f, false, "fork failed");
        return -1;
    }
    if (pid == 0) {
        freopen("/dev/null", "w", stdout);
        freopen("/dev/null", "w", stderr);
        execl(MEMENTO_CLI_PATH, MEMENTO_CLI_PATH, "ingest", manifest.c_str(), archive.c_str(),
              (char*)nullptr);
        _exit(127);
    }
    int status = 0;
    struct rusage ru{};
    wait4(pid, &status, 0, &ru);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        expect(f, false, "ingest of " + std::to_string(lines) + " lines failed");
        return -1;
    }
    return ru.ru_maxrss;
}

void streaming_ingestion(std::vector<std::string>& f) {
    TempDir tmp("accstream");
    long rss_100k = ingest_peak_rss(tmp.path, 100'000, f);
    long rss_500k = ingest_peak_rss(tmp.path, 500'000, f);
    long rss_1m = ingest_peak_rss(tmp.path, 1'000'000, f);
    if (!f.empty()) return;

    std::fprintf(stderr, "  [streaming] peak RSS KiB: 100k=%ld 500k=%ld 1M=%ld\n", rss_100k,
                 rss_500k, rss_1m);
    // bounded independent of input size: 10x the lines may not cost
    // anywhere near 10x the memory
    expect(f, rss_1m < rss_100k * 3 / 2,
           "peak RSS grows with input: 100k=" + std::to_string(rss_100k) +
               " KiB vs 1M=" + std::to_string(rss_1m) + " KiB");
    expect(f, rss_500k < rss_100k * 3 / 2,
           "peak RSS grows with input at 500k lines");
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"France negotiation golden exchange", 1.0, france_golden},
        {"negotiation rule coverage (recent/300/406/current)", 1.0, rule_coverage},
        {"archive oracle equivalence, 3 randomized archives", 30.0, oracle_equivalence},
        {"timemap roundtrip, 200 generated docs + archived fixture", 5.0, timemap_roundtrip},
        {"link header property suite, 500 roundtrip cases", 5.0, link_header_properties},
        {"client challenges: navigation closure + oracle datetimes", 10.0, client_challenges},
        {"time-series pipeline equals store oracle + normalization table", 10.0,
         timeseries_equivalence},
        {"streaming ingestion: peak memory flat across 100k/500k/1M lines", 120.0,
         streaming_ingestion},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        std::vector<std::string> failures;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(failures);
        } catch (const std::exception& e) {
            failures.push_back(std::string("exception: ") + e.what());
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                             .count();
        if (failures.empty() && elapsed > c.budget_seconds)
            failures.push_back("over time budget: " + std::to_string(elapsed) + "s > " +
                               std::to_string(c.budget_seconds) + "s");
        std::printf("%s  %-62s (%.2fs)\n", failures.empty() ? "PASS" : "FAIL", c.name.c_str(),
                    elapsed);
        for (const auto& why : failures) std::printf("      %s\n", why.c_str());
        if (!failures.empty()) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
