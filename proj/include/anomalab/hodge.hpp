#pragma once

#include "anomalab/target.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace anomalab {

struct HodgeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// int_{Mbar_{g,m}} lambda_1^e1 lambda_2^e2 prod psi_i^a_i
struct HodgeKey {
    int g = 0;
    std::vector<int> psi;
    int e1 = 0, e2 = 0;
};

// lambda_1^e1 lambda_2^e2 -> coefficient
using LambdaPoly = std::map<std::pair<int, int>, Scalar>;

inline constexpr std::uint64_t kHodgeTableChecksum = 0x56620a6a54c1da62ULL;
std::uint64_t fnv1a(const std::string& bytes);

// (m-3)! / prod a_i! when sum a_i = m - 3
Scalar psi0_integral(const std::vector<int>& a);

// string/dilaton reduction onto the embedded base table; g <= 2
Scalar hodge_descendent_integral(const HodgeKey& key);

// sum over the monomials of gamma
Scalar hodge_integral(int g, const std::vector<int>& psi, const LambdaPoly& gamma);

// lambda-degree e1 + 2 e2
inline int lambda_degree(const std::pair<int, int>& m) { return m.first + 2 * m.second; }

LambdaPoly lambda_mul(const LambdaPoly& a, const LambdaPoly& b);
// Mumford relations: g=1 lambda_1^2 = 0; g=2 lambda_1^2 = 2 lambda_2, lambda_2^2 = 0; lambda_k = 0 for k > g
LambdaPoly lambda_reduce(int g, const LambdaPoly& p);

// e(E^* (x) T_p) / e(T_p) * e(E^* (x) (-(n+1) lambda_i)) / (-(n+1) lambda_i), reduced
LambdaPoly vertex_class_expand(int g, const Target& t, int i);

// number of parsed base entries; throws HodgeError on checksum mismatch
int hodge_table_size();

}  // namespace anomalab
