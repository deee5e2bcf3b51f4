#pragma once

#include "anomalab/graphsum.hpp"
#include "anomalab/ringlift.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace anomalab {

inline constexpr const char* kCodeVersion = "anomalab-1.0.0";

// exact coefficients as "p/q" or "a+b*sqrt(d)" strings
nlohmann::json series_json(const QSeries& s);
QSeries series_from_json(const nlohmann::json& j);

nlohmann::json ledger_json(const ContributionLedger& ledger);
nlohmann::json fit_json(const FitResult& fit);
nlohmann::json target_json(const Target& t);

// one row per q-order: order,name1,name2,...
std::string series_csv(const std::vector<std::pair<std::string, QSeries>>& cols);

// Content-addressed JSON files <dir>/<16 hex digits>.json; the key text is stored alongside
// the value and compared on load, so hash collisions read as misses.
class Cache {
public:
    explicit Cache(std::string dir) : dir_(std::move(dir)) {}
    static std::string key_hash(const std::string& key);
    std::optional<nlohmann::json> load(const std::string& key) const;
    void store(const std::string& key, const nlohmann::json& value) const;
    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    std::string path(const std::string& key) const;
};

// canonical text of (target, weights, N, K, code version) plus any extra request fields
std::string cache_key(const Target& t, int N, int K, const std::string& request);

}  // namespace anomalab
