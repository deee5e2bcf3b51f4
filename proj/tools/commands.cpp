#include "commands.hpp"

#include "anomalab/admissible.hpp"
#include "anomalab/asymptotics.hpp"
#include "anomalab/correlator.hpp"
#include "anomalab/graphsum.hpp"
#include "anomalab/hseries.hpp"
#include "anomalab/ringlift.hpp"
#include "anomalab/serialize.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace anomalab::cli {

namespace {

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<Scalar> parse_weights(const std::string& s) {
    std::vector<Scalar> w;
    for (const auto& item : split(s)) {
        try {
            w.push_back(Scalar::parse(item));
        } catch (const std::exception&) {
            throw UsageError("cannot parse weight '" + item + "'");
        }
    }
    return w;
}

void check_weights(const std::vector<Scalar>& w, int points) {
    if (static_cast<int>(w.size()) != points)
        throw UsageError("expected " + std::to_string(points) + " weights, got " + std::to_string(w.size()));
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i].is_zero()) throw UsageError("weights must be nonzero");
        for (size_t j = 0; j < i; ++j)
            if (w[i] == w[j]) throw UsageError("weights must be distinct (" + w[i].str() + " repeats)");
    }
}

const std::set<std::string> kSuites{"relations", "pf", "wdvv", "admissible", "correlators", "hae"};

nlohmann::json check_json(const std::string& name, bool ok, int residual_order) {
    return {{"check", name}, {"ok", ok}, {"residual_order", residual_order}};
}

std::string cache_dir(const RunConfig& c) {
    if (const char* env = std::getenv("ANOMALAB_CACHE"); env && *env) return env;
    return c.cache;
}

std::string compute_request(const RunConfig& c) {
    std::ostringstream os;
    os << "compute|series=";
    for (const auto& s : c.series) os << s << ";";
    os << "|asym=" << c.asymptotics << "|gs=" << c.graph_sum << "|g=" << c.genus << "|ins=";
    for (int k : c.insertions) os << k << ";";
    os << "|ledger=" << c.ledger << "|lift=" << c.lift;
    return os.str();
}

QSeries named_series(const GeometrySeries& g, const std::string& name) {
    if (g.has(name)) return g[name];
    if (name.size() >= 2 && name[0] == 'L' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
        int i = std::stoi(name.substr(1));
        if (i <= g.target.n) return g.Li[i];
    }
    std::string known;
    for (const auto& [k, v] : g.s) known += " " + k;
    throw UsageError("unknown series '" + name + "'; available:" + known + " L0..L" + std::to_string(g.target.n));
}

}  // namespace

Target resolve_target(const RunConfig& c) {
    TargetKind kind;
    try {
        kind = parse_kind(c.target);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    int modes = !c.weights.empty() + c.solve_constraint + c.roots_of_unity;
    if (modes > 1) throw UsageError("--weights, --solve-constraint and --roots-of-unity are exclusive");
    int points = kind_dimension(kind) + 1;
    try {
        if (c.roots_of_unity) return roots_of_unity(kind);
        if (c.solve_constraint) {
            auto fixed = parse_weights(c.fix);
            auto sols = solve_constraint(kind, fixed);
            if (sols.empty()) throw UsageError("the specialization constraint has no admissible solution for these fixed weights");
            if (c.solution < 0 || c.solution >= static_cast<int>(sols.size()))
                throw UsageError("--solution must be below " + std::to_string(sols.size()));
            return sols[c.solution];
        }
        std::vector<Scalar> w;
        if (c.weights.empty()) {
            for (int i = 0; i < points; ++i) w.push_back(Scalar(i + 1));
        } else {
            w = parse_weights(c.weights);
        }
        check_weights(w, points);
        return make_target(kind, w);
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
}

void validate(const RunConfig& c) {
    if (c.order < 0) throw UsageError("--order must be nonnegative");
    if (c.ztrunc < 1) throw UsageError("--ztrunc must be positive");
    if (c.format != "json" && c.format != "csv" && c.format != "pretty") throw UsageError("--format must be json, csv or pretty");
    for (const auto& s : c.suites)
        if (!kSuites.count(s)) throw UsageError("unknown suite '" + s + "' (relations, pf, wdvv, admissible, correlators, hae)");
    for (int k : c.insertions)
        if (k < 1 || k > 2) throw UsageError("insertions are 1 (H) or 2 (H^2)");
    bool graph = c.graph_sum || std::count(c.suites.begin(), c.suites.end(), "hae");
    if (graph && (c.genus < 0 || c.genus > 2)) throw UsageError("graph sums support genus 0..2");
}

nlohmann::json run_compute(const RunConfig& c) {
    validate(c);
    Target t = resolve_target(c);
    std::string dir = cache_dir(c);
    std::string key = cache_key(t, c.order, c.ztrunc, compute_request(c));
    if (!dir.empty())
        if (auto hit = Cache(dir).load(key)) return *hit;

    nlohmann::json doc;
    doc["kind"] = "compute";
    doc["target"] = target_json(t);
    doc["order"] = c.order;
    doc["ztrunc"] = c.ztrunc;
    GeometrySeries g = build_generators(t, c.order);
    if (!c.series.empty()) {
        doc["series"] = nlohmann::json::object();
        for (const auto& name : c.series) doc["series"][name] = series_json(named_series(g, name));
    }
    if (c.asymptotics) {
        nlohmann::json a = nlohmann::json::object();
        for (int i = 0; i <= t.n; ++i) {
            AsymptoticExpansion e = solve_asymptotics(g, i, c.ztrunc);
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : e.R) rows.push_back(series_json(r));
            a["p" + std::to_string(i)] = {{"mu", series_json(e.mu)}, {"R", rows}};
        }
        doc["asymptotics"] = a;
    }
    if (c.graph_sum || c.lift) {
        if (2 * c.genus - 2 + static_cast<int>(c.insertions.size()) <= 0) throw UsageError("unstable (g, n) for a graph sum");
        GraphSum ctx(t, c.order, c.ztrunc);
        ContributionLedger ledger;
        QSeries F = assemble_F(ctx, c.genus, c.insertions, &ledger);
        nlohmann::json gs{{"genus", c.genus}, {"insertions", c.insertions}, {"total", series_json(F)}};
        if (c.ledger) gs["ledger"] = ledger_json(ledger)["graphs"];
        doc["graph_sum"] = gs;
        if (c.lift) {
            if (t.kind != TargetKind::KP2 || !t.s[1].is_zero() || !t.s[2].is_zero())
                throw UsageError("--lift is available for kp2 at --roots-of-unity weights");
            int g3 = 3 * c.genus;
            GeneratorBasis b = kp2_zeta_basis(ctx.series(), -g3, g3, 3, std::max(g3 - 2, 0));
            try {
                LiftReport lr = lift_in_A2(F, c.genus, t.kind, b);
                nlohmann::json lj = fit_json(lr.fit);
                lj["a2_degree"] = lr.a2_degree;
                lj["a2_bound"] = lr.bound;
                lj["within_bound"] = lr.within_bound;
                doc["lift"] = lj;
            } catch (const FitError& e) {
                throw UsageError(e.what());
            }
        }
    }
    if (!dir.empty()) Cache(dir).store(key, doc);
    return doc;
}

std::string run_verify(const RunConfig& c, nlohmann::json& report) {
    validate(c);
    if (c.suites.empty()) throw UsageError("no suite selected");
    Target t = resolve_target(c);
    int N = c.order, K = c.ztrunc;
    report = nlohmann::json::object();
    report["kind"] = "verify";
    report["target"] = target_json(t);
    report["order"] = N;
    report["ztrunc"] = K;
    report["suites"] = nlohmann::json::object();
    std::string first_bad;
    auto add = [&](const std::string& suite, const std::string& name, bool ok, int order) {
        report["suites"][suite].push_back(check_json(name, ok, order));
        if (!ok && first_bad.empty()) first_bad = suite + "/" + name;
    };
    for (const auto& suite : c.suites) {
        report["suites"][suite] = nlohmann::json::array();
        if (suite == "relations") {
            for (const auto& r : verify_relations(build_generators(t, N))) add(suite, r.name, r.ok, r.bad_order);
        } else if (suite == "pf") {
            PFReport r = pf_check(t, N, K);
            add(suite, "picard_fuchs", r.ok, r.bad_q_order);
        } else if (suite == "wdvv") {
            for (const auto& r : wdvv_suite(build_generators(t, N), K)) add(suite, r.name, r.ok, r.bad_order);
        } else if (suite == "admissible") {
            AdmissibleOperator op;
            try {
                op = build_admissible(t);
            } catch (const AdmissibleError& e) {
                throw UsageError(e.what());
            }
            OrderReport oc = order_check(op);
            add(suite, "order_conditions", oc.ok, -1);
            if (op.transcribed && t.kind != TargetKind::KP1) {
                AdmissibleOperator der = derived_admissible(t);
                add(suite, "tables_match_derivation", der.A == op.A, -1);
            }
            GeometrySeries g = build_generators(t, N);
            for (int i = 0; i <= t.n; ++i) {
                AdmissibleSolution sol = solve_admissible(op, i, K);
                add(suite, "no_log_" + std::to_string(i), sol.obstruction_k < 0, sol.obstruction_k);
                CrossReport cr = cross_validate(sol, op, g, solve_asymptotics(g, i, K));
                add(suite, "cross_validate_" + std::to_string(i), cr.ok, cr.bad_order);
            }
        } else if (suite == "correlators") {
            for (const auto& d : display_checks()) add(suite, d.label, d.ok, -1);
            for (int gg = 0; gg <= 2; ++gg)
                for (int n = 1; n <= 3; ++n) {
                    if (2 * gg - 2 + n + 1 <= 0) continue;
                    std::vector<int> a(n, 0);
                    a[0] = gg == 0 ? 0 : 1;
                    CorrelatorValue r = string_residual(gg, a, lambda_one());
                    add(suite, "string_g" + std::to_string(gg) + "_n" + std::to_string(n), r.is_zero(), -1);
                }
            Gr2Report gr = gr2_check(4, 4);
            add(suite, "two_point_genus0", gr.ok, -1);
        } else if (suite == "hae") {
            if (c.genus != 2) throw UsageError("the hae suite runs at --genus 2");
            if (t.kind != TargetKind::KP2 && t.kind != TargetKind::KP3) throw UsageError("the hae suite needs kp2 or kp3");
            GraphSum ctx(t, N, K);
            QSeries F = assemble_F(ctx, 2, {}), FH = assemble_F(ctx, 2, {1});
            int dv = (d_dT(ctx.series(), F) - FH).truncate(std::max(N - 1, 0)).valuation();
            add(suite, "divisor", dv < 0, dv);
            std::vector<std::pair<std::string, HaeEquation>> eqs;
            if (t.kind == TargetKind::KP2) eqs = {{"hae_kp2", HaeEquation::KP2}};
            else eqs = {{"hae_kp3_first", HaeEquation::KP3First}, {"hae_kp3_second", HaeEquation::KP3Second}};
            for (const auto& [name, eq] : eqs) {
                HaeReport r = hae_check(ctx, 2, eq);
                add(suite, name, r.ok, r.bad_order);
            }
        }
    }
    report["ok"] = first_bad.empty();
    if (!first_bad.empty()) report["first_failure"] = first_bad;
    return first_bad;
}

nlohmann::json run_weights(const RunConfig& c) {
    Target t = resolve_target(c);
    nlohmann::json doc;
    doc["kind"] = "weights";
    doc["target"] = target_json(t);
    nlohmann::json res = nlohmann::json::array();
    for (const auto& r : constraint_residuals(t)) res.push_back(r.str());
    doc["constraint_residuals"] = res;
    if (c.solve_constraint) {
        nlohmann::json all = nlohmann::json::array();
        for (const auto& s : solve_constraint(t.kind, parse_weights(c.fix))) all.push_back(target_json(s)["weights"]);
        doc["solutions"] = all;
    }
    return doc;
}

namespace {

bool is_string_array(const nlohmann::json& j) {
    return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const auto& x) { return x.is_string(); });
}

void pretty(std::ostream& os, const nlohmann::json& j, const std::string& indent) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        os << indent << it.key() << ":";
        if (v.is_object()) {
            os << "\n";
            pretty(os, v, indent + "  ");
        } else if (is_string_array(v)) {
            os << " ";
            for (size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v[k].get<std::string>();
            os << "\n";
        } else if (v.is_array() && !v.empty() && v[0].is_object()) {
            os << "\n";
            for (const auto& e : v) {
                os << indent << "  -\n";
                pretty(os, e, indent + "    ");
            }
        } else if (v.is_array() && !v.empty() && is_string_array(v[0])) {
            os << "\n";
            for (size_t k = 0; k < v.size(); ++k) {
                os << indent << "  [" << k << "] ";
                for (size_t m = 0; m < v[k].size(); ++m) os << (m ? ", " : "") << v[k][m].get<std::string>();
                os << "\n";
            }
        } else {
            os << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

void collect_columns(const nlohmann::json& j, const std::string& path, std::vector<std::pair<std::string, QSeries>>& cols) {
    if (is_string_array(j)) {
        cols.emplace_back(path, series_from_json(j));
        return;
    }
    if (j.is_array()) {
        for (size_t k = 0; k < j.size(); ++k) collect_columns(j[k], path + "." + std::to_string(k), cols);
        return;
    }
    if (j.is_object())
        for (auto it = j.begin(); it != j.end(); ++it) collect_columns(it.value(), path.empty() ? it.key() : path + "." + it.key(), cols);
}

}  // namespace

std::string render(const nlohmann::json& doc, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        os << doc.dump(2) << "\n";
    } else if (format == "pretty") {
        if (doc.value("kind", "") == "verify") {
            os << "target " << doc["target"]["name"].get<std::string>() << " order " << doc["order"] << " ztrunc " << doc["ztrunc"] << "\n";
            for (auto it = doc["suites"].begin(); it != doc["suites"].end(); ++it)
                for (const auto& ch : it.value())
                    os << (ch["ok"].get<bool>() ? "PASS " : "FAIL ") << it.key() << "/" << ch["check"].get<std::string>() << " residual-order "
                       << ch["residual_order"] << "\n";
        } else {
            pretty(os, doc, "");
        }
    } else {
        if (doc.value("kind", "") == "verify") {
            os << "suite,check,ok,residual_order\n";
            for (auto it = doc["suites"].begin(); it != doc["suites"].end(); ++it)
                for (const auto& ch : it.value())
                    os << it.key() << "," << ch["check"].get<std::string>() << "," << (ch["ok"].get<bool>() ? 1 : 0) << "," << ch["residual_order"] << "\n";
        } else if (doc.value("kind", "") == "weights") {
            os << "index,weight\n";
            const auto& w = doc["target"]["weights"];
            for (size_t k = 0; k < w.size(); ++k) os << k << "," << w[k].get<std::string>() << "\n";
        } else {
            std::vector<std::pair<std::string, QSeries>> cols;
            for (const char* part : {"series", "asymptotics", "graph_sum"})
                if (doc.contains(part)) {
                    const auto& sect = doc[part];
                    if (std::string(part) == "graph_sum") collect_columns(sect["total"], "graph_sum.total", cols);
                    else collect_columns(sect, std::string(part) == "series" ? "" : part, cols);
                }
            os << series_csv(cols);
        }
    }
    return os.str();
}

int cmd_compute(const RunConfig& c, std::ostream& out) {
    out << render(run_compute(c), c.format);
    return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    nlohmann::json report;
    std::string bad = run_verify(c, report);
    out << render(report, c.format);
    if (!bad.empty()) throw InvariantFailure("first failing check: " + bad);
    return 0;
}

int cmd_weights(const RunConfig& c, std::ostream& out) {
    out << render(run_weights(c), c.format);
    return 0;
}

}  // namespace anomalab::cli
