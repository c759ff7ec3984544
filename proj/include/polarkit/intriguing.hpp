#pragma once

// Tight sets, m-ovoids and related arithmetic.

#include <cstdint>
#include <optional>
#include <vector>

#include "polarkit/polar.hpp"

namespace polarkit {

struct IntriguingReport {
    bool is_intriguing = false;
    std::uint64_t size = 0;
    /// Common value of |P^perp cap M| over P in M, if constant.
    std::optional<std::uint64_t> h1;
    /// Common value over P outside M, if constant; empty when M is every point.
    std::optional<std::uint64_t> h2;
    std::optional<std::uint64_t> tight_i;
    std::optional<std::uint64_t> ovoid_m;

    /// Intriguing but matching neither family.
    bool anomalous() const noexcept { return is_intriguing && !tight_i && !ovoid_m; }
};

/// Throws InvalidArgument on an empty set.
IntriguingReport classify(const PointSet& m, unsigned threads = 0);

/// Intersection numbers predicted for an i-tight set / m-ovoid of the space.
std::pair<std::uint64_t, std::uint64_t> tight_h(const PolarParameters& pp, std::uint64_t i);
std::pair<std::uint64_t, std::uint64_t> ovoid_h(const PolarParameters& pp, std::uint64_t m);

struct FeasibilityQuery {
    FormKind kind;
    std::size_t d;
    std::uint32_t q;
    std::uint64_t group_order;
};

struct FeasibilityResult {
    double dim_bound;         // 1 + epsilon + log_q(2 |H0|)
    std::size_t max_dim;      // largest d strictly below dim_bound
    bool dim_ok;              // query.d < dim_bound
    std::vector<std::uint64_t> feasible_i;  // i with lcm(i g, (theta - i) g) dividing |H0|
    bool divisibility_ok;
};

FeasibilityResult feasibility(const FeasibilityQuery& query);

/// Smallest primitive prime divisor of n^k - 1, if any.  Throws InvalidArgument
/// for n < 2 or k < 1 and CapacityExceeded when n^k >= 2^63.
std::optional<std::uint64_t> zsigmondy(std::uint64_t n, std::uint32_t k);

/// Deterministic primality for 64-bit integers.
bool is_prime_u64(std::uint64_t n);
/// Prime factorization with multiplicity, ascending.
std::vector<std::uint64_t> factor_u64(std::uint64_t n);

}  // namespace polarkit
