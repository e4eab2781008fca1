#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "memento/temporal.hpp"

namespace memento {

struct ManifestEntry {
    Timestamp version_date;
    std::filesystem::path source;
};

// One line per snapshot: "<ISO-8601 date> <path>", dates strictly increasing.
// Relative paths resolve against the manifest's directory.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

/// One archived version of a subject. The representation itself stays on
/// disk; fetch it with Archive::representation().
struct MementoRecord {
    std::int64_t id = 0;
    std::string subject;
    Interval interval;  // end always present for records
    std::string memento_uri;
    Timestamp created_at;

    bool operator==(const MementoRecord&) const = default;
};

struct LookupResult {
    enum class Kind { Memento, Current, OutOfRange };
    Kind kind = Kind::OutOfRange;
    std::optional<MementoRecord> record;  // set for Kind::Memento
};

struct Neighbors {
    MementoRecord first;
    MementoRecord last;
    std::optional<MementoRecord> prev;
    std::optional<MementoRecord> next;
};

struct IngestReport {
    std::size_t subjects = 0;
    std::size_t records = 0;
    std::size_t skipped_lines = 0;
    double elapsed_seconds = 0;
};

/// Append-only record log plus an in-memory per-subject interval index
/// rebuilt on open. Subjects present in snapshot i < last become a record
/// with interval [date_i, date_{i+1}); the last snapshot is the current
/// representation, never a Memento. Read-only after ingestion.
class Archive {
public:
    static IngestReport ingest(const std::vector<ManifestEntry>& manifest,
                               const std::filesystem::path& dir, const std::string& base_url,
                               bool strict = false,
                               std::optional<Timestamp> now = std::nullopt);

    // base_url_override replaces the ingest-time base in all minted URIs.
    static Archive open(const std::filesystem::path& dir,
                        const std::string& base_url_override = "");

    // Covering record, Current for t at/past the latest snapshot date, the
    // last record starting at or before t when the subject skipped a middle
    // snapshot, OutOfRange before the subject's first record.
    // Throws UnknownSubject for subjects with neither records nor a current
    // representation.
    LookupResult lookup(const std::string& subject, Timestamp t) const;

    Neighbors neighbors(const std::string& subject, const MementoRecord& record) const;

    // Ascending by interval start; empty for unknown subjects.
    std::vector<MementoRecord> list_versions(const std::string& subject) const;

    std::string representation(const MementoRecord& record) const;
    std::optional<std::string> current_representation(const std::string& subject) const;
    bool has_current(const std::string& subject) const;
    bool known_subject(const std::string& subject) const;

    Timestamp latest_snapshot_date() const { return snapshot_dates_.back(); }
    const std::vector<Timestamp>& snapshot_dates() const { return snapshot_dates_; }
    const std::string& base_url() const { return base_url_; }
    // Rebase minted memento/timegate URIs, e.g. onto an ephemeral port.
    void set_base_url(std::string base_url) { base_url_ = std::move(base_url); }
    Timestamp created_at() const { return created_at_; }

    std::vector<std::string> subjects() const;

    // Unique archived subject whose URI ends with "/<name>", if any.
    std::optional<std::string> resolve_by_suffix(const std::string& name) const;

    std::string memento_uri_for(const std::string& subject, Timestamp start) const;

private:
    Archive() = default;

    struct RecordIndex {
        std::int64_t id;
        Timestamp start;
        Timestamp end;
        std::streamoff offset;
    };

    MementoRecord materialize(const std::string& subject, const RecordIndex& idx) const;

    std::filesystem::path dir_;
    std::string base_url_;
    std::vector<Timestamp> snapshot_dates_;
    Timestamp created_at_;
    std::map<std::string, std::vector<RecordIndex>> records_;  // sorted by start
    std::map<std::string, std::streamoff> current_;
};

}  // namespace memento
