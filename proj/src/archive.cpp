#include "memento/archive.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "memento/errors.hpp"
#include "memento/ntriples.hpp"
#include "memento/uri.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace memento {
namespace {

constexpr std::size_t kBuckets = 128;

// FNV-1a, so record order is stable across builds.
std::size_t bucket_of(const std::string& subject) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : subject) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h % kBuckets);
}

Timestamp wall_now() {
    return Timestamp::from_unix(std::chrono::duration_cast<std::chrono::seconds>(
                                    std::chrono::system_clock::now().time_since_epoch())
                                    .count());
}

}  // namespace

std::vector<ManifestEntry> load_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot read manifest " + path.string());
    std::vector<ManifestEntry> manifest;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto space = line.find(' ');
        if (space == std::string::npos)
            throw IngestError("manifest line without path: " + line);
        ManifestEntry entry;
        entry.version_date = parse_iso8601(line.substr(0, space));
        fs::path src = line.substr(space + 1);
        entry.source = src.is_absolute() ? src : path.parent_path() / src;
        manifest.push_back(std::move(entry));
    }
    if (manifest.empty()) throw IngestError("empty manifest " + path.string());
    return manifest;
}

std::string Archive::memento_uri_for(const std::string& subject, Timestamp start) const {
    return base_url_ + "/memento/" + format_yyyymmdd(start) + "/" + subject;
}

IngestReport Archive::ingest(const std::vector<ManifestEntry>& manifest, const fs::path& dir,
                             const std::string& base_url, bool strict,
                             std::optional<Timestamp> now) {
    auto t0 = std::chrono::steady_clock::now();
    if (manifest.empty()) throw IngestError("empty manifest");
    for (std::size_t i = 1; i < manifest.size(); ++i)
        if (!(manifest[i - 1].version_date < manifest[i].version_date))
            throw DateOrderError("snapshot dates must be strictly increasing (entry " +
                                 std::to_string(i + 1) + ")");

    fs::create_directories(dir);
    fs::path tmp = dir / "tmp_buckets";
    fs::create_directories(tmp);

    IngestReport report;
    Timestamp stamp = now ? *now : wall_now();

    // Pass 1: stream every snapshot into per-subject hash buckets so that
    // grouping later never holds more than one bucket in memory.
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        std::ifstream in(manifest[i].source, std::ios::binary);
        if (!in) throw IngestError("cannot read snapshot " + manifest[i].source.string());
        std::vector<std::ofstream> outs(kBuckets);
        NTriplesParser parser(in, strict);
        while (auto triple = parser.next()) {
            std::size_t b = bucket_of(triple->subject);
            if (!outs[b].is_open())
                outs[b].open(tmp / ("b" + std::to_string(b) + "_s" + std::to_string(i) + ".nt"),
                             std::ios::binary);
            outs[b] << serialize_triple(*triple) << '\n';
        }
        report.skipped_lines += parser.skipped();
    }

    // Pass 2: group each bucket per snapshot and append records.
    std::ofstream records(dir / "records.jsonl", std::ios::binary | std::ios::trunc);
    std::ofstream current(dir / "current.jsonl", std::ios::binary | std::ios::trunc);
    std::int64_t next_id = 1;
    for (std::size_t b = 0; b < kBuckets; ++b) {
        std::size_t bucket_subjects = 0;
        std::vector<std::string> seen;  // union across snapshots, first-seen order
        for (std::size_t i = 0; i < manifest.size(); ++i) {
            fs::path bfile = tmp / ("b" + std::to_string(b) + "_s" + std::to_string(i) + ".nt");
            std::ifstream in(bfile, std::ios::binary);
            if (!in) continue;
            std::vector<std::string> order;
            std::map<std::string, std::string> grouped;
            std::string line;
            while (std::getline(in, line)) {
                auto close = line.find('>');
                std::string subject = line.substr(1, close - 1);
                auto [it, inserted] = grouped.try_emplace(subject);
                if (inserted) order.push_back(subject);
                it->second += line;
                it->second += '\n';
            }
            for (const auto& subject : order) {
                if (std::find(seen.begin(), seen.end(), subject) == seen.end()) {
                    seen.push_back(subject);
                    ++bucket_subjects;
                }
                if (i + 1 < manifest.size()) {
                    Timestamp start = manifest[i].version_date;
                    if (stamp < start) stamp = start;  // created_at >= interval start
                    json rec = {{"id", next_id++},
                                {"subject", subject},
                                {"start", format_iso8601(manifest[i].version_date)},
                                {"end", format_iso8601(manifest[i + 1].version_date)},
                                {"created", format_iso8601(stamp)},
                                {"triples", grouped[subject]}};
                    records << rec.dump() << '\n';
                    ++report.records;
                } else {
                    json cur = {{"subject", subject}, {"triples", grouped[subject]}};
                    current << cur.dump() << '\n';
                }
            }
        }
        report.subjects += bucket_subjects;
    }

    json meta = {{"base_url", base_url}, {"created_at", format_iso8601(stamp)}};
    json dates = json::array();
    for (const auto& entry : manifest) dates.push_back(format_iso8601(entry.version_date));
    meta["snapshot_dates"] = dates;
    std::ofstream(dir / "meta.json") << meta.dump(2) << '\n';

    fs::remove_all(tmp);
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

Archive Archive::open(const fs::path& dir, const std::string& base_url_override) {
    Archive a;
    a.dir_ = dir;
    std::ifstream meta_in(dir / "meta.json");
    if (!meta_in) throw IngestError("not an archive directory: " + dir.string());
    json meta = json::parse(meta_in);
    a.base_url_ =
        base_url_override.empty() ? meta.at("base_url").get<std::string>() : base_url_override;
    a.created_at_ = parse_iso8601(meta.at("created_at").get<std::string>());
    for (const auto& d : meta.at("snapshot_dates"))
        a.snapshot_dates_.push_back(parse_iso8601(d.get<std::string>()));
    if (a.snapshot_dates_.empty()) throw IngestError("archive has no snapshots");

    std::ifstream rec_in(dir / "records.jsonl", std::ios::binary);
    std::string line;
    std::streamoff offset = 0;
    while (std::getline(rec_in, line)) {
        json rec = json::parse(line);
        RecordIndex idx{rec.at("id").get<std::int64_t>(),
                        parse_iso8601(rec.at("start").get<std::string>()),
                        parse_iso8601(rec.at("end").get<std::string>()), offset};
        a.records_[rec.at("subject").get<std::string>()].push_back(idx);
        offset += static_cast<std::streamoff>(line.size()) + 1;
    }
    for (auto& [subject, recs] : a.records_)
        std::sort(recs.begin(), recs.end(),
                  [](const RecordIndex& x, const RecordIndex& y) { return x.start < y.start; });

    std::ifstream cur_in(dir / "current.jsonl", std::ios::binary);
    offset = 0;
    while (std::getline(cur_in, line)) {
        json cur = json::parse(line);
        a.current_.emplace(cur.at("subject").get<std::string>(), offset);
        offset += static_cast<std::streamoff>(line.size()) + 1;
    }
    return a;
}

MementoRecord Archive::materialize(const std::string& subject, const RecordIndex& idx) const {
    MementoRecord rec;
    rec.id = idx.id;
    rec.subject = subject;
    rec.interval = {idx.start, idx.end};
    rec.memento_uri = memento_uri_for(subject, idx.start);
    rec.created_at = created_at_;
    return rec;
}

LookupResult Archive::lookup(const std::string& subject, Timestamp t) const {
    auto it = records_.find(subject);
    bool current = current_.count(subject) > 0;
    if (it == records_.end() && !current) throw UnknownSubject(subject);

    if (current && t >= latest_snapshot_date()) return {LookupResult::Kind::Current, {}};

    if (it != records_.end()) {
        const auto& recs = it->second;
        // covering interval first, then last-known-state for gaps
        const RecordIndex* best = nullptr;
        for (const auto& idx : recs) {
            if (idx.start <= t) best = &idx;
            if (Interval{idx.start, idx.end}.covers(t))
                return {LookupResult::Kind::Memento, materialize(subject, idx)};
        }
        if (best) return {LookupResult::Kind::Memento, materialize(subject, *best)};
    }
    return {LookupResult::Kind::OutOfRange, {}};
}

Neighbors Archive::neighbors(const std::string& subject, const MementoRecord& record) const {
    auto versions = list_versions(subject);
    if (versions.empty()) throw UnknownSubject(subject);
    Neighbors n{versions.front(), versions.back(), {}, {}};
    for (std::size_t i = 0; i < versions.size(); ++i) {
        if (versions[i].interval.start == record.interval.start) {
            if (i > 0) n.prev = versions[i - 1];
            if (i + 1 < versions.size()) n.next = versions[i + 1];
            break;
        }
    }
    return n;
}

std::vector<MementoRecord> Archive::list_versions(const std::string& subject) const {
    std::vector<MementoRecord> out;
    auto it = records_.find(subject);
    if (it == records_.end()) return out;
    for (const auto& idx : it->second) out.push_back(materialize(subject, idx));
    return out;
}

std::string Archive::representation(const MementoRecord& record) const {
    auto it = records_.find(record.subject);
    if (it == records_.end()) throw UnknownSubject(record.subject);
    for (const auto& idx : it->second) {
        if (idx.start == record.interval.start) {
            std::ifstream in(dir_ / "records.jsonl", std::ios::binary);
            in.seekg(idx.offset);
            std::string line;
            std::getline(in, line);
            return json::parse(line).at("triples").get<std::string>();
        }
    }
    throw UnknownSubject(record.subject);
}

std::optional<std::string> Archive::current_representation(const std::string& subject) const {
    auto it = current_.find(subject);
    if (it == current_.end()) return std::nullopt;
    std::ifstream in(dir_ / "current.jsonl", std::ios::binary);
    in.seekg(it->second);
    std::string line;
    std::getline(in, line);
    return json::parse(line).at("triples").get<std::string>();
}

bool Archive::has_current(const std::string& subject) const {
    return current_.count(subject) > 0;
}

bool Archive::known_subject(const std::string& subject) const {
    return records_.count(subject) > 0 || current_.count(subject) > 0;
}

std::vector<std::string> Archive::subjects() const {
    std::vector<std::string> out;
    for (const auto& [subject, _] : records_) out.push_back(subject);
    for (const auto& [subject, _] : current_)
        if (!records_.count(subject)) out.push_back(subject);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::string> Archive::resolve_by_suffix(const std::string& name) const {
    std::optional<std::string> found;
    for (const auto& subject : subjects()) {
        if (subject.size() > name.size() + 1 &&
            subject.compare(subject.size() - name.size(), name.size(), name) == 0 &&
            subject[subject.size() - name.size() - 1] == '/') {
            if (found) return std::nullopt;  // ambiguous
            found = subject;
        }
    }
    return found;
}

}  // namespace memento
