#pragma once

// Brute-force reference implementations for the tests.  Nothing in here calls
// the library: field arithmetic is schoolbook polynomial arithmetic modulo a
// hard-coded Conway polynomial, forms are written out coordinate by
// coordinate, and counts come from exhaustive enumeration.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Conway polynomials (low to high, monic) from the published tables.
inline std::vector<u32> conway(u32 p, u32 f) {
    static const std::map<std::pair<u32, u32>, std::vector<u32>> table = {
        {{2, 1}, {1, 1}},          {{3, 1}, {1, 1}},          {{5, 1}, {3, 1}},
        {{7, 1}, {4, 1}},          {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}}, {{2, 6}, {1, 1, 0, 1, 1, 0, 1}}, {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}}, {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},    {{7, 2}, {3, 6, 1}},
    };
    return table.at({p, f});
}

struct Field {
    u32 p = 0, f = 0, q = 0;
    std::vector<u32> poly;

    static Field of_order(u32 q) {
        Field F;
        for (u32 p = 2; p <= q; ++p) {
            if (q % p) continue;
            u32 f = 0, r = q;
            while (r % p == 0) {
                r /= p;
                ++f;
            }
            if (r != 1) throw std::invalid_argument("not a prime power");
            F.p = p;
            F.f = f;
            F.q = q;
            F.poly = conway(p, f);
            return F;
        }
        throw std::invalid_argument("bad order");
    }

    std::vector<u32> digits(u32 a) const {
        std::vector<u32> c(f);
        for (u32 i = 0; i < f; ++i) {
            c[i] = a % p;
            a /= p;
        }
        return c;
    }
    u32 pack(const std::vector<u32>& c) const {
        u32 a = 0;
        for (u32 i = f; i-- > 0;) a = a * p + c[i];
        return a;
    }
    u32 add(u32 a, u32 b) const {
        auto x = digits(a), y = digits(b);
        for (u32 i = 0; i < f; ++i) x[i] = (x[i] + y[i]) % p;
        return pack(x);
    }
    u32 neg(u32 a) const {
        auto x = digits(a);
        for (auto& c : x) c = (p - c) % p;
        return pack(x);
    }
    u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
    u32 mul(u32 a, u32 b) const {
        const auto x = digits(a), y = digits(b);
        std::vector<u32> prod(2 * f, 0);
        for (u32 i = 0; i < f; ++i)
            for (u32 j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
        for (u32 k = 2 * f - 1; k >= f; --k) {
            const u32 c = prod[k];
            if (!c) continue;
            prod[k] = 0;
            for (u32 i = 0; i < f; ++i) prod[k - f + i] = (prod[k - f + i] + (p - c) * poly[i]) % p;
        }
        prod.resize(f);
        return pack(prod);
    }
    u32 pow(u32 a, u64 e) const {
        u32 r = 1;
        for (u64 i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }
    u32 inv(u32 a) const {
        for (u32 b = 1; b < q; ++b)
            if (mul(a, b) == 1) return b;
        throw std::invalid_argument("zero has no inverse");
    }
    u32 from_int(long long n) const { return static_cast<u32>(((n % p) + p) % p); }
    u32 sqrt_q() const {
        u32 s = 1;
        for (u32 i = 0; i < f / 2; ++i) s *= p;
        return s;
    }
};

using Vec = std::vector<u32>;

// The standard forms, written out.  kind: "W", "Q+", "Q-", "Q", "H".
struct StdForm {
    Field F;
    std::string kind;
    std::size_t d;
    u32 tr = 0, nm = 0;  // elliptic block x^2 + tr xy + nm y^2

    StdForm(u32 q, std::string k, std::size_t dim) : F(Field::of_order(q)), kind(std::move(k)), d(dim) {
        if (kind == "Q-") {
            if (F.f != 1) throw std::invalid_argument("oracle Q- needs prime q");
            const auto c = conway(F.p, 2);  // x^2 + c1 x + c0 = x^2 - Tr x + N
            tr = F.neg(c[1]);
            nm = c[0];
        }
    }

    bool quadratic() const { return kind[0] == 'Q'; }

    u32 quad(const Vec& x) const {
        u32 s = 0;
        if (kind == "Q+") {
            for (std::size_t i = 0; i + 1 < d; i += 2) s = F.add(s, F.mul(x[i], x[i + 1]));
        } else if (kind == "Q-") {
            for (std::size_t i = 0; i + 3 < d; i += 2) s = F.add(s, F.mul(x[i], x[i + 1]));
            const u32 a = x[d - 2], b = x[d - 1];
            s = F.add(s, F.mul(a, a));
            s = F.add(s, F.mul(tr, F.mul(a, b)));
            s = F.add(s, F.mul(nm, F.mul(b, b)));
        } else if (kind == "Q") {
            s = F.mul(x[0], x[0]);
            for (std::size_t i = 1; i + 1 < d; i += 2) s = F.add(s, F.mul(x[i], x[i + 1]));
        } else {
            throw std::logic_error("not quadratic");
        }
        return s;
    }

    u32 pair(const Vec& u, const Vec& v) const {
        if (quadratic()) {
            Vec w(d);
            for (std::size_t i = 0; i < d; ++i) w[i] = F.add(u[i], v[i]);
            return F.sub(F.sub(quad(w), quad(u)), quad(v));
        }
        u32 s = 0;
        if (kind == "W") {
            const std::size_t h = d / 2;
            for (std::size_t i = 0; i < h; ++i) {
                s = F.add(s, F.mul(u[i], v[i + h]));
                s = F.sub(s, F.mul(u[i + h], v[i]));
            }
        } else {  // H
            const u32 r = F.sqrt_q();
            for (std::size_t i = 0; i < d; ++i) s = F.add(s, F.mul(u[i], F.pow(v[i], r)));
        }
        return s;
    }

    bool singular(const Vec& x) const { return quadratic() ? quad(x) == 0 : pair(x, x) == 0; }
};

inline u64 ipow(u64 b, u32 e) {
    u64 r = 1;
    for (u32 i = 0; i < e; ++i) r *= b;
    return r;
}

// Canonical points (first nonzero entry 1) in big-endian code order.
inline std::vector<Vec> points(const StdForm& form) {
    const u32 q = form.F.q;
    const std::size_t d = form.d;
    std::vector<Vec> out;
    const u64 total = ipow(q, static_cast<u32>(d));
    for (u64 code = 1; code < total; ++code) {
        Vec v(d);
        u64 c = code;
        for (std::size_t i = d; i-- > 0;) {
            v[i] = static_cast<u32>(c % q);
            c /= q;
        }
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] != 1) continue;
        if (form.singular(v)) out.push_back(std::move(v));
    }
    return out;
}

// theta_r from the closed forms of the classical polar spaces.
inline u64 theta(const std::string& kind, std::size_t d, u32 q, std::size_t r) {
    const auto R = static_cast<u32>(r);
    if (kind == "W" || kind == "Q") return ipow(q, R) + 1;
    if (kind == "Q+") return ipow(q, R - 1) + 1;
    if (kind == "Q-") return ipow(q, R + 1) + 1;
    u32 s = 1;
    while (s * s < q) ++s;
    // H(2r-1, q): s^(2r-1) + 1;  H(2r, q): s^(2r+1) + 1
    return d % 2 == 0 ? ipow(s, 2 * R - 1) + 1 : ipow(s, 2 * R + 1) + 1;
}

inline std::size_t rank_of(const std::string& kind, std::size_t d) {
    if (kind == "W" || kind == "Q+") return d / 2;
    if (kind == "Q-") return d / 2 - 1;
    if (kind == "Q") return (d - 1) / 2;
    return d / 2;  // H
}

struct Intersections {
    std::set<u64> on, off;  // distinct values of |P^perp cap M| for P in M / not in M
};

inline Intersections intersections(const StdForm& form, const std::vector<Vec>& all, const std::vector<bool>& in) {
    Intersections out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        u64 c = 0;
        for (std::size_t j = 0; j < all.size(); ++j)
            if (in[j] && form.pair(all[i], all[j]) == 0) ++c;
        (in[i] ? out.on : out.off).insert(c);
    }
    return out;
}

// Smallest primitive prime divisor of n^k - 1 by trial division.  Every such
// prime divides the cyclotomic value Phi_k(n) and is 1 mod k, and every prime
// factor of Phi_k(n) not dividing k is primitive.
inline std::optional<u64> zsigmondy(u64 n, u32 k) {
    using u128 = unsigned __int128;
    auto phi = [&](auto&& self, u32 m) -> u128 {
        u128 v = 1;
        for (u32 i = 0; i < m; ++i) v *= n;
        v -= 1;
        for (u32 e = 1; e < m; ++e)
            if (m % e == 0) v /= self(self, e);
        return v;
    };
    u128 m = phi(phi, k);
    for (u64 p = 2; p <= k; ++p)
        while (k % p == 0 && m % p == 0) m /= p;
    if (m == 1) return std::nullopt;
    if (m >> 64) throw std::out_of_range("cyclotomic value too large for the oracle");
    const auto m64 = static_cast<u64>(m);
    for (u64 c = k + 1;; c += k) {
        if (c < 2) continue;
        if (c > m64 / c) return m64;
        if (m64 % c == 0) return c;
    }
}

// Multiplicative order of n mod p by repeated multiplication.
inline u64 order_mod(u64 n, u64 p) {
    using u128 = unsigned __int128;
    u64 x = n % p, k = 1;
    while (x != 1) {
        x = static_cast<u64>(static_cast<u128>(x) * (n % p) % p);
        ++k;
    }
    return k;
}

}  // namespace oracle
