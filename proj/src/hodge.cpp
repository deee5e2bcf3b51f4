#include "anomalab/hodge.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

namespace anomalab {

namespace detail {
extern const char* const kHodgeBaseTable;
}

namespace {

using Key = std::vector<int>;  // g, e1, e2, psi sorted descending

Key make_key(int g, std::vector<int> psi, int e1, int e2) {
    std::sort(psi.begin(), psi.end(), std::greater<int>());
    Key k = {g, e1, e2};
    k.insert(k.end(), psi.begin(), psi.end());
    return k;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::map<Key, Scalar> parse_table() {
    std::string text = detail::kHodgeBaseTable;
    if (fnv1a(text) != kHodgeTableChecksum) throw HodgeError("Hodge base table checksum mismatch");
    std::map<Key, Scalar> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string part;
        while (std::getline(ls, part, '|')) f.push_back(trim(part));
        if (f.size() != 4) throw HodgeError("malformed Hodge table line: " + line);
        int g = std::stoi(f[0]);
        std::vector<int> psi;
        if (f[1] != "-") {
            std::istringstream ps(f[1]);
            std::string x;
            while (std::getline(ps, x, ',')) psi.push_back(std::stoi(x));
        }
        int e1 = 0, e2 = 0;
        std::istringstream es(f[2]);
        es >> e1 >> e2;
        out[make_key(g, psi, e1, e2)] = Scalar::parse(f[3]);
    }
    return out;
}

const std::map<Key, Scalar>& table() {
    static const std::map<Key, Scalar> t = parse_table();
    return t;
}

std::mutex memo_mutex;
std::map<Key, Scalar> memo;

Scalar factorial(int n) {
    mpz_class r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return Scalar(mpq_class(r));
}

Scalar reduce(int g, std::vector<int> psi, int e1, int e2);

Scalar reduce_uncached(int g, const std::vector<int>& psi, int e1, int e2) {
    int m = static_cast<int>(psi.size());
    if (2 * g - 2 + (m - 1) > 0) {
        for (int j = 0; j < m; ++j) {
            if (psi[j] != 0) continue;
            std::vector<int> rest = psi;
            rest.erase(rest.begin() + j);
            Scalar v;
            for (size_t k = 0; k < rest.size(); ++k) {
                if (rest[k] == 0) continue;
                --rest[k];
                v += reduce(g, rest, e1, e2);
                ++rest[k];
            }
            return v;
        }
        for (int j = 0; j < m; ++j) {
            if (psi[j] != 1) continue;
            std::vector<int> rest = psi;
            rest.erase(rest.begin() + j);
            return Scalar(2 * g - 3 + m) * reduce(g, rest, e1, e2);
        }
    }
    auto it = table().find(make_key(g, psi, e1, e2));
    if (it != table().end()) return it->second;
    if (g == 2 && e1 >= 2) return Scalar(2) * reduce(g, psi, e1 - 2, e2 + 1);
    std::ostringstream msg;
    msg << "missing Hodge support: g=" << g << " lambda1^" << e1 << " lambda2^" << e2 << " psi=(";
    for (int j = 0; j < m; ++j) msg << (j ? "," : "") << psi[j];
    msg << ")";
    throw HodgeError(msg.str());
}

Scalar reduce(int g, std::vector<int> psi, int e1, int e2) {
    int m = static_cast<int>(psi.size());
    if (g < 0 || g > 2) throw HodgeError("Hodge integrals are supported for g <= 2 only");
    if (2 * g - 2 + m <= 0) throw HodgeError("unstable moduli space");
    if (std::any_of(psi.begin(), psi.end(), [](int a) { return a < 0; })) return Scalar(0);
    if ((g == 0 && (e1 || e2)) || (g == 1 && (e2 || e1 >= 2)) || (g == 2 && e2 >= 2)) return Scalar(0);
    if (std::accumulate(psi.begin(), psi.end(), 0) + e1 + 2 * e2 != 3 * g - 3 + m) return Scalar(0);
    if (g == 0) return psi0_integral(psi);
    Key k = make_key(g, psi, e1, e2);
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
    }
    std::sort(psi.begin(), psi.end(), std::greater<int>());
    Scalar v = reduce_uncached(g, psi, e1, e2);
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(k, v);
    return v;
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int hodge_table_size() { return static_cast<int>(table().size()); }

Scalar psi0_integral(const std::vector<int>& a) {
    int m = static_cast<int>(a.size());
    if (m < 3) throw HodgeError("psi0_integral needs at least three markings");
    int sum = 0;
    for (int x : a) {
        if (x < 0) return Scalar(0);
        sum += x;
    }
    if (sum != m - 3) return Scalar(0);
    Scalar v = factorial(m - 3);
    for (int x : a) v /= factorial(x);
    return v;
}

Scalar hodge_descendent_integral(const HodgeKey& key) { return reduce(key.g, key.psi, key.e1, key.e2); }

Scalar hodge_integral(int g, const std::vector<int>& psi, const LambdaPoly& gamma) {
    Scalar v;
    for (auto& [mono, c] : gamma)
        if (!c.is_zero()) v += c * reduce(g, psi, mono.first, mono.second);
    return v;
}

LambdaPoly lambda_mul(const LambdaPoly& a, const LambdaPoly& b) {
    LambdaPoly out;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b) out[{ma.first + mb.first, ma.second + mb.second}] += ca * cb;
    return out;
}

LambdaPoly lambda_reduce(int g, const LambdaPoly& p) {
    LambdaPoly out;
    for (auto [mono, c] : p) {
        auto [e1, e2] = mono;
        if (g == 2)
            while (e1 >= 2) {
                e1 -= 2;
                ++e2;
                c *= Scalar(2);
            }
        bool zero = (g == 0 && (e1 || e2)) || (g == 1 && (e2 || e1 >= 2)) || (g == 2 && e2 >= 2);
        if (!zero && !c.is_zero()) out[{e1, e2}] += c;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

LambdaPoly vertex_class_expand(int g, const Target& t, int i) {
    if (g < 0 || g > 2) throw HodgeError("vertex classes are supported for g <= 2 only");
    if (t.kind == TargetKind::Quintic) throw ConfigError("no vertex class for the formal quintic");
    // e(E^* (x) L_w) = sum_k (-1)^k lambda_k w^(g-k)
    auto euler = [g](const Scalar& w) {
        LambdaPoly p;
        for (int k = 0; k <= g; ++k) {
            Scalar c = w.pow(g - k);
            if (k % 2) c = -c;
            std::pair<int, int> mono = k == 0 ? std::pair{0, 0} : k == 1 ? std::pair{1, 0} : std::pair{0, 1};
            p[mono] += c;
        }
        return p;
    };
    LambdaPoly out = {{{0, 0}, t.e(i).inv()}};
    for (int j = 0; j <= t.n; ++j)
        if (j != i) out = lambda_reduce(g, lambda_mul(out, euler(t.lambda[i] - t.lambda[j])));
    out = lambda_reduce(g, lambda_mul(out, euler(Scalar(-(t.n + 1)) * t.lambda[i])));
    return out;
}

}  // namespace anomalab
