#pragma once

// Synthetic archives shared by the suites: a DBpedia-like 6-snapshot corpus
// and randomized archives for oracle comparisons.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "memento/archive.hpp"
#include "memento/temporal.hpp"

namespace fixtures {

inline const std::string kFrance = "http://dbpedia.org/resource/France";
inline const std::string kGermany = "http://dbpedia.org/resource/Germany";
inline const std::string kLemuria = "http://dbpedia.org/resource/Lemuria";  // gap subject
inline const std::string kGdp = "http://dbpedia.org/property/gdpPppPerCapita";

inline std::vector<memento::Timestamp> snapshot_dates() {
    using memento::Timestamp;
    return {Timestamp::from_civil(2007, 9, 1),  Timestamp::from_civil(2008, 2, 1),
            Timestamp::from_civil(2008, 8, 1),  Timestamp::from_civil(2008, 11, 1),
            Timestamp::from_civil(2009, 7, 1),  Timestamp::from_civil(2009, 11, 1)};
}

// Raw GDP literals per snapshot, deliberately messy.
inline std::vector<std::string> france_gdp_raw() {
    return {"25000", "$27,500", "29000 (2008 est.)", "30,000", "31500", "33188"};
}
inline std::vector<std::string> germany_gdp_raw() {
    return {"31000", "32,500", "$33000", "34100 (est.)", "34900", "35500"};
}

inline std::filesystem::path fresh_dir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    auto dir = std::filesystem::temp_directory_path() /
               ("memento_" + tag + "_" + std::to_string(rng()));
    std::filesystem::create_directories(dir);
    return dir;
}

// Six snapshots; France and Germany in all of them, Lemuria only in
// snapshots 0 and 2 (exercises the gap rule).
inline std::vector<memento::ManifestEntry> write_france_snapshots(
    const std::filesystem::path& dir) {
    auto dates = snapshot_dates();
    auto france = france_gdp_raw();
    auto germany = germany_gdp_raw();
    std::vector<memento::ManifestEntry> manifest;
    for (std::size_t i = 0; i < dates.size(); ++i) {
        auto path = dir / ("snapshot_" + std::to_string(i) + ".nt");
        std::ofstream out(path);
        out << "<" << kFrance << "> <" << kGdp << "> \"" << france[i] << "\" .\n";
        out << "<" << kFrance << "> <http://www.w3.org/2000/01/rdf-schema#label> \"France\"@fr .\n";
        out << "<" << kGermany << "> <" << kGdp << "> \"" << germany[i] << "\" .\n";
        if (i == 0 || i == 2)
            out << "<" << kLemuria << "> <" << kGdp << "> \"" << 100 * (i + 1) << "\" .\n";
        manifest.push_back({dates[i], path});
    }
    return manifest;
}

inline memento::Archive france_archive(const std::filesystem::path& dir,
                                       const std::string& base_url = "http://archive.test") {
    auto manifest = write_france_snapshots(dir);
    memento::Archive::ingest(manifest, dir / "archive", base_url, true,
                             memento::Timestamp::from_civil(2010, 2, 17, 5, 26, 27));
    return memento::Archive::open(dir / "archive");
}

struct RandomArchive {
    std::filesystem::path dir;
    std::vector<memento::Timestamp> dates;
    // subjects[i] lists the snapshot indices the subject appears in.
    std::vector<std::pair<std::string, std::vector<std::size_t>>> subjects;
};

inline RandomArchive write_random_archive(std::mt19937& rng, const std::filesystem::path& dir) {
    std::uniform_int_distribution<std::size_t> n_snaps(2, 10), n_subjects(1, 50);
    RandomArchive ra;
    ra.dir = dir;
    std::int64_t t = 1000000000 + static_cast<std::int64_t>(rng() % 100000) * 86400 / 100;
    for (std::size_t i = 0, n = n_snaps(rng); i < n; ++i) {
        t += 86400 * (1 + static_cast<std::int64_t>(rng() % 200));
        ra.dates.push_back(memento::Timestamp::from_unix(t));
    }
    for (std::size_t s = 0, n = n_subjects(rng); s < n; ++s) {
        std::vector<std::size_t> present;
        for (std::size_t i = 0; i < ra.dates.size(); ++i)
            if (rng() % 3 != 0) present.push_back(i);
        if (present.empty()) present.push_back(rng() % ra.dates.size());
        ra.subjects.emplace_back("http://rnd.test/resource/s" + std::to_string(s), present);
    }
    std::vector<memento::ManifestEntry> manifest;
    for (std::size_t i = 0; i < ra.dates.size(); ++i) {
        auto path = dir / ("snap_" + std::to_string(i) + ".nt");
        std::ofstream out(path);
        for (const auto& [subject, present] : ra.subjects)
            if (std::find(present.begin(), present.end(), i) != present.end())
                out << "<" << subject << "> <http://rnd.test/p> \"v" << i << "\" .\n";
        manifest.push_back({ra.dates[i], path});
    }
    memento::Archive::ingest(manifest, dir / "archive", "http://rnd.test", true);
    return ra;
}

}  // namespace fixtures
