#include "anomalab/serialize.hpp"

#include "anomalab/hodge.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace anomalab {

nlohmann::json series_json(const QSeries& s) { return nlohmann::json(s.strings()); }

QSeries series_from_json(const nlohmann::json& j) { return QSeries::from_strings(j.get<std::vector<std::string>>()); }

nlohmann::json ledger_json(const ContributionLedger& ledger) {
    nlohmann::json out;
    out["graphs"] = nlohmann::json::array();
    for (const auto& e : ledger.entries)
        out["graphs"].push_back({{"graph", e.graph}, {"aut", e.aut}, {"assignments", e.assignments}, {"value", series_json(e.value)}});
    out["total"] = series_json(ledger.total);
    return out;
}

namespace {

nlohmann::json expression_json(const RingExpression& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : e.terms) {
        if (c.is_zero()) continue;
        nlohmann::json mono = nlohmann::json::object();
        for (size_t k = 0; k < m.size(); ++k)
            if (m[k] != 0) mono[e.names[k]] = m[k];
        terms.push_back({{"monomial", mono}, {"coefficient", c.str()}});
    }
    return terms;
}

}  // namespace

nlohmann::json fit_json(const FitResult& fit) {
    nlohmann::json out;
    out["status"] = fit_status_name(fit.status);
    out["unknowns"] = fit.unknowns;
    out["solve_orders"] = fit.solve_orders;
    out["margin_orders"] = fit.margin;
    out["first_bad_order"] = fit.first_bad_order;
    out["terms"] = expression_json(fit.expr);
    if (fit.status == FitStatus::RankDeficient) out["kernel"] = expression_json(fit.kernel);
    return out;
}

nlohmann::json target_json(const Target& t) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& l : t.lambda) w.push_back(l.str());
    return {{"name", t.name()}, {"weights", w}, {"field", t.field()}};
}

std::string series_csv(const std::vector<std::pair<std::string, QSeries>>& cols) {
    std::ostringstream os;
    os << "order";
    int N = -1;
    for (const auto& [name, s] : cols) {
        os << "," << name;
        N = std::max(N, s.order());
    }
    os << "\n";
    for (int k = 0; k <= N; ++k) {
        os << k;
        for (const auto& [name, s] : cols) os << "," << (k <= s.order() ? s[k].str() : "");
        os << "\n";
    }
    return os.str();
}

std::string Cache::key_hash(const std::string& key) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
    return buf;
}

std::string Cache::path(const std::string& key) const { return (std::filesystem::path(dir_) / (key_hash(key) + ".json")).string(); }

std::optional<nlohmann::json> Cache::load(const std::string& key) const {
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    if (!doc.contains("key") || doc["key"] != key || !doc.contains("value")) return std::nullopt;
    return doc["value"];
}

void Cache::store(const std::string& key, const nlohmann::json& value) const {
    std::filesystem::create_directories(dir_);
    std::string p = path(key), tmp = p + ".tmp";
    {
        std::ofstream out(tmp);
        out << nlohmann::json{{"key", key}, {"value", value}}.dump() << "\n";
    }
    std::filesystem::rename(tmp, p);
}

std::string cache_key(const Target& t, int N, int K, const std::string& request) {
    std::ostringstream os;
    os << kCodeVersion << "|" << t.name();
    for (const auto& l : t.lambda) os << "|" << l.str();
    os << "|N=" << N << "|K=" << K << "|" << request;
    return os.str();
}

}  // namespace anomalab
