#include "polarkit/intriguing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polarkit {

std::pair<std::uint64_t, std::uint64_t> tight_h(const PolarParameters& pp, std::uint64_t i) {
    const std::uint64_t qr1 = ipow(pp.q, static_cast<std::uint32_t>(pp.rank - 1));
    const std::uint64_t g1 = (qr1 - 1) / (pp.q - 1);
    return {qr1 + i * g1, i * g1};
}

std::pair<std::uint64_t, std::uint64_t> ovoid_h(const PolarParameters& pp, std::uint64_t m) {
    return {(m - 1) * pp.theta_prev + 1, m * pp.theta_prev};
}

IntriguingReport classify(const PointSet& m, unsigned threads) {
    if (m.empty()) throw InvalidArgument("cannot classify an empty point set");
    const auto& space = *m.space();
    const auto counts = perp_counts(m, threads);
    IntriguingReport r;
    r.size = m.size();

    std::optional<std::uint64_t> in_val, out_val;
    bool in_const = true, out_const = true;
    std::size_t k = 0;
    for (std::uint32_t i = 0; i < counts.size(); ++i) {
        const bool member = k < m.size() && m.members()[k] == i;
        if (member) ++k;
        auto& val = member ? in_val : out_val;
        auto& ok = member ? in_const : out_const;
        if (!val)
            val = counts[i];
        else if (*val != counts[i])
            ok = false;
    }
    if (in_const) r.h1 = in_val;
    if (out_const) r.h2 = out_val;
    r.is_intriguing = in_const && out_const;
    if (!r.is_intriguing) return r;

    const auto& pp = space.parameters();
    auto matches = [&](std::pair<std::uint64_t, std::uint64_t> h) {
        return *r.h1 == h.first && (!r.h2 || *r.h2 == h.second);
    };
    if (r.size % pp.gaussian == 0 && matches(tight_h(pp, r.size / pp.gaussian))) r.tight_i = r.size / pp.gaussian;
    if (r.size % pp.theta == 0 && matches(ovoid_h(pp, r.size / pp.theta))) r.ovoid_m = r.size / pp.theta;
    return r;
}

FeasibilityResult feasibility(const FeasibilityQuery& query) {
    if (query.group_order < 1) throw InvalidArgument("group order must be positive");
    const auto pp = polar_parameters(query.kind, query.d, query.q);
    FeasibilityResult out;
    out.dim_bound = 1.0 + pp.epsilon2 / 2.0 +
                    std::log(2.0 * static_cast<double>(query.group_order)) / std::log(static_cast<double>(query.q));
    out.max_dim = static_cast<std::size_t>(std::ceil(out.dim_bound)) - 1;
    out.dim_ok = static_cast<double>(query.d) < out.dim_bound;
    for (std::uint64_t i = 1; i < pp.theta; ++i) {
        const std::uint64_t a = i * pp.gaussian, b = (pp.theta - i) * pp.gaussian;
        const std::uint64_t l = std::lcm(a, b);
        if (query.group_order % l == 0) out.feasible_i.push_back(i);
    }
    out.divisibility_ok = !out.feasible_i.empty();
    return out;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, g = 1, q = 1, x = 0, ys = 0;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    const u64 d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> factor_u64(std::uint64_t n) {
    std::vector<u64> out;
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::uint64_t> zsigmondy(std::uint64_t n, std::uint32_t k) {
    if (n < 2 || k < 1) throw InvalidArgument("zsigmondy needs n > 1 and k >= 1");
    u128 power = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        power *= n;
        if (power >= (u128{1} << 63)) throw CapacityExceeded("n^k exceeds 2^63");
    }
    const u64 value = static_cast<u64>(power) - 1;
    auto primes = factor_u64(value);
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (u64 p : primes) {
        bool primitive = true;
        u64 x = 1;
        for (std::uint32_t i = 1; i < k; ++i) {
            x = mulmod(x, n % p, p);
            if (x == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return p;
    }
    return std::nullopt;
}

}  // namespace polarkit
