#include "polarkit/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

namespace polarkit {

// ---------------------------------------------------------------------------
// number theory helpers

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    auto primes = prime_factors(q);
    if (primes.size() != 1) return std::nullopt;
    std::uint32_t f = 0;
    while (q > 1) {
        q /= primes[0];
        ++f;
    }
    return std::pair{static_cast<std::uint32_t>(primes[0]), f};
}

namespace {

// ---------------------------------------------------------------------------
// dense polynomials over GF(p), coefficients low to high

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

// a mod m, m monic or not
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
    return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
    Poly r{1};
    base = poly_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// c(r) mod m, where c has coefficients over GF(p)
Poly poly_compose(const Poly& c, const Poly& r, const Poly& m, std::uint32_t p) {
    Poly acc;
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = poly_mulmod(acc, r, m, p);
        if (acc.empty()) acc.push_back(0);
        acc[0] = (acc[0] + c[i]) % p;
        trim(acc);
    }
    return acc;
}

bool is_one(const Poly& a) { return a.size() == 1 && a[0] == 1; }

bool is_primitive(const Poly& m, std::uint32_t p, std::uint32_t f) {
    if (m[0] == 0) return false;
    const std::uint64_t n = ipow(p, f) - 1;
    const Poly x{0, 1};
    if (!is_one(poly_powmod(x, n, m, p))) return false;
    for (auto l : prime_factors(n))
        if (is_one(poly_powmod(x, n / l, m, p))) return false;
    return true;
}

std::vector<std::uint32_t> divisors(std::uint32_t n) {
    std::vector<std::uint32_t> d;
    for (std::uint32_t i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Conway polynomials

std::vector<std::uint32_t> conway_polynomial(std::uint32_t p, std::uint32_t f) {
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find({p, f}); it != cache.end()) return it->second;
    }
    if (!is_prime(p) || f == 0) throw InvalidArgument("conway_polynomial: need prime p and f >= 1");

    std::vector<std::pair<std::uint32_t, Poly>> subfields;  // (m, Conway(p, m)) for proper divisors m
    for (auto m : divisors(f))
        if (m < f) subfields.emplace_back(m, conway_polynomial(p, m));

    const std::uint64_t q = ipow(p, f);
    Poly found;
    // Candidates in Conway order: x^f + sum (-1)^(f-i) a_i x^i, with the tuple
    // (a_{f-1}, ..., a_0) increasing lexicographically.
    for (std::uint64_t idx = 0; idx < q && found.empty(); ++idx) {
        Poly m(f + 1, 0);
        m[f] = 1;
        std::uint64_t rest = idx;
        for (std::uint32_t i = 0; i < f; ++i) {  // i-th least significant digit is a_i
            const auto a = static_cast<std::uint32_t>(rest % p);
            rest /= p;
            const bool negate = ((f - i) % 2) == 1;
            m[i] = negate ? (p - a) % p : a;
        }
        if (m[0] == 0 || !is_primitive(m, p, f)) continue;
        bool compatible = true;
        for (const auto& [sub_f, sub_poly] : subfields) {
            const std::uint64_t e = (q - 1) / (ipow(p, sub_f) - 1);
            Poly root = poly_powmod(Poly{0, 1}, e, m, p);
            if (!poly_compose(sub_poly, root, m, p).empty()) {
                compatible = false;
                break;
            }
        }
        if (compatible) found = m;
    }
    if (found.empty()) throw Error("conway_polynomial: search exhausted");
    std::lock_guard lock(mutex);
    cache.emplace(std::pair{p, f}, found);
    return found;
}

// ---------------------------------------------------------------------------
// FiniteField

FieldPtr FiniteField::get(std::uint32_t p, std::uint32_t f) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (f == 0) throw InvalidArgument("field degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < f; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) throw InvalidArgument("field order exceeds 2^20");
    }
    static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> registry;
    {
        std::lock_guard lock(registry_mutex());
        if (auto it = registry.find({p, f}); it != registry.end()) return it->second;
    }
    auto field = std::make_shared<const FiniteField>(p, f);
    std::lock_guard lock(registry_mutex());
    return registry.emplace(std::pair{p, f}, std::move(field)).first->second;
}

FieldPtr FiniteField::of_order(std::uint64_t q) {
    auto pf = prime_power(q);
    if (!pf) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    return get(pf->first, pf->second);
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t f)
    : p_(p), f_(f), q_(static_cast<std::uint32_t>(ipow(p, f))), poly_(conway_polynomial(p, f)) {
    gen_ = f_ == 1 ? FieldElement{(p_ - poly_[0]) % p_} : FieldElement{p_};
    if (q_ == 2) gen_ = FieldElement{1};
    build_tables();
}

void FiniteField::build_tables() {
    if (q_ > (1u << 16)) return;
    has_logs_ = true;
    const std::uint32_t n = q_ - 1;
    log_.assign(q_, 0);
    exp_.assign(2 * static_cast<std::size_t>(n), 0);
    FieldElement x = one();
    for (std::uint32_t k = 0; k < n; ++k) {
        if (k > 0 && x == one()) throw Error("defining polynomial is not primitive");
        exp_[k] = exp_[k + n] = x.code();
        log_[x.code()] = k;
        x = mul_poly(x, gen_);
    }
    if (x != one()) throw Error("defining polynomial is not primitive");

    zech_.assign(n, -1);
    for (std::uint32_t k = 0; k < n; ++k) {
        const FieldElement s = add_slow(FieldElement{exp_[k]}, one());
        zech_[k] = s.is_zero() ? -1 : static_cast<std::int32_t>(log_[s.code()]);
    }

    if (q_ <= 256) {
        add_.assign(static_cast<std::size_t>(q_) * q_, 0);
        mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
        neg_.assign(q_, 0);
        for (std::uint32_t a = 0; a < q_; ++a) {
            neg_[a] = static_cast<std::uint8_t>(neg_slow(FieldElement{a}).code());
            for (std::uint32_t b = 0; b < q_; ++b) {
                add_[a * q_ + b] = static_cast<std::uint8_t>(add_slow(FieldElement{a}, FieldElement{b}).code());
                const bool z = a == 0 || b == 0;
                mul_[a * q_ + b] = static_cast<std::uint8_t>(z ? 0 : exp_[log_[a] + log_[b]]);
            }
        }
        small_ = true;
    }
}

FieldElement FiniteField::from_int(std::int64_t n) const noexcept {
    auto r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return FieldElement{static_cast<std::uint32_t>(r)};
}

FieldElement FiniteField::element(std::uint32_t code) const {
    if (code >= q_) throw InvalidArgument("element code out of range");
    return FieldElement{code};
}

FieldElement FiniteField::add_slow(FieldElement a, FieldElement b) const noexcept {
    std::uint32_t x = a.code(), y = b.code(), r = 0, scale = 1;
    for (std::uint32_t i = 0; i < f_; ++i) {
        r += ((x % p_ + y % p_) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return FieldElement{r};
}

FieldElement FiniteField::neg_slow(FieldElement a) const noexcept {
    std::uint32_t x = a.code(), r = 0, scale = 1;
    for (std::uint32_t i = 0; i < f_; ++i) {
        r += ((p_ - x % p_) % p_) * scale;
        x /= p_;
        scale *= p_;
    }
    return FieldElement{r};
}

FieldElement FiniteField::mul_poly(FieldElement a, FieldElement b) const noexcept {
    const auto ca = coefficients(a), cb = coefficients(b);
    Poly r = poly_mulmod(Poly(ca.begin(), ca.end()), Poly(cb.begin(), cb.end()), poly_, p_);
    r.resize(f_, 0);
    return from_coefficients(r);
}

FieldElement FiniteField::inv(FieldElement a) const {
    if (a.is_zero()) throw InvalidArgument("inverse of zero");
    if (has_logs_) return FieldElement{exp_[(q_ - 1 - log_[a.code()]) % (q_ - 1)]};
    return pow(a, q_ - 2);
}

FieldElement FiniteField::pow(FieldElement a, std::uint64_t e) const noexcept {
    if (e == 0) return one();
    if (a.is_zero()) return zero();
    if (has_logs_) {
        const std::uint64_t n = q_ - 1;
        return FieldElement{exp_[static_cast<std::size_t>((log_[a.code()] * (e % n)) % n)]};
    }
    FieldElement r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

FieldElement FiniteField::frobenius(FieldElement a, std::uint32_t k) const noexcept {
    return pow(a, ipow(p_, k % f_));
}

FieldElement FiniteField::conjugate(FieldElement a) const {
    if (!has_square_order()) throw InvalidArgument("conjugation needs a field of square order");
    return frobenius(a, f_ / 2);
}

std::uint32_t FiniteField::sqrt_order() const {
    if (!has_square_order()) throw InvalidArgument("field order is not a square");
    return static_cast<std::uint32_t>(ipow(p_, f_ / 2));
}

std::uint32_t FiniteField::log(FieldElement a) const {
    if (a.is_zero()) throw InvalidArgument("log of zero");
    if (has_logs_) return log_[a.code()];
    FieldElement x = one();
    for (std::uint32_t k = 0; k < q_ - 1; ++k) {
        if (x == a) return k;
        x = mul(x, gen_);
    }
    throw Error("log: element not reached");
}

FieldElement FiniteField::exp(std::uint64_t k) const noexcept {
    const std::uint64_t n = q_ - 1;
    if (has_logs_) return FieldElement{exp_[k % n]};
    return pow(gen_, k % n);
}

std::uint64_t FiniteField::order(FieldElement a) const {
    const std::uint64_t n = q_ - 1;
    return n / std::gcd<std::uint64_t>(n, log(a));
}

bool FiniteField::is_square(FieldElement a) const noexcept {
    if (a.is_zero() || p_ == 2) return true;
    return pow(a, (q_ - 1) / 2) == one();
}

std::vector<std::uint32_t> FiniteField::coefficients(FieldElement a) const {
    std::vector<std::uint32_t> c(f_);
    std::uint32_t x = a.code();
    for (auto& ci : c) {
        ci = x % p_;
        x /= p_;
    }
    return c;
}

FieldElement FiniteField::from_coefficients(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != f_) throw InvalidArgument("coefficient list has wrong length");
    std::uint32_t code = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= p_) throw InvalidArgument("coefficient out of range");
        code = code * p_ + coeffs[i];
    }
    return FieldElement{code};
}

std::vector<FieldElement> FiniteField::elements() const {
    std::vector<FieldElement> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out[i] = FieldElement{i};
    return out;
}

bool FiniteField::defining_polynomial_is_irreducible() const {
    // Ben-Or: irreducible iff gcd(c, x^(p^i) - x) = 1 for 1 <= i <= f/2.
    Poly xp{0, 1};
    for (std::uint32_t i = 1; i <= f_ / 2; ++i) {
        xp = poly_powmod(xp, p_, poly_, p_);
        Poly g = xp;
        g.resize(std::max<std::size_t>(g.size(), 2), 0);
        g[1] = (g[1] + p_ - 1) % p_;
        trim(g);
        Poly d = poly_gcd(poly_, g, p_);
        if (d.size() > 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// SubfieldEmbedding

SubfieldEmbedding::SubfieldEmbedding(FieldPtr small, FieldPtr large)
    : small_(std::move(small)), large_(std::move(large)) {
    if (!small_ || !large_ || small_->p() != large_->p() || large_->f() % small_->f() != 0)
        throw IncompatibleFields();
    b_ = large_->f() / small_->f();
    step_ = (std::uint64_t{large_->q()} - 1) / (std::uint64_t{small_->q()} - 1);
    image_gen_ = large_->exp(step_);
    // The Conway tower guarantees that this image is a root of the small field's polynomial.
    const auto& c = small_->defining_polynomial();
    FieldElement acc = large_->zero();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = large_->add(large_->mul(acc, image_gen_), large_->from_int(c[i]));
    if (!acc.is_zero()) throw Error("subfield embedding: generator image is not a root");
}

FieldElement SubfieldEmbedding::embed(FieldElement x) const {
    if (x.is_zero()) return x;
    return large_->exp(std::uint64_t{small_->log(x)} * step_);
}

std::optional<FieldElement> SubfieldEmbedding::restrict(FieldElement y) const {
    if (y.is_zero()) return small_->zero();
    if (large_->pow(y, small_->q()) != y) return std::nullopt;
    const std::uint64_t k = large_->log(y);
    return small_->exp(k / step_);
}

FieldElement SubfieldEmbedding::restrict_or_throw(FieldElement y) const {
    auto r = restrict(y);
    if (!r) throw InvalidArgument("element does not lie in the subfield");
    return *r;
}

FieldElement partial_trace(const SubfieldEmbedding& emb, FieldElement y, std::uint32_t c) {
    const auto& L = *emb.large();
    FieldElement acc = L.zero(), term = y;
    for (std::uint32_t i = 0; i < c; ++i) {
        acc = L.add(acc, term);
        term = L.pow(term, emb.small()->q());
    }
    return emb.restrict_or_throw(acc);
}

FieldElement SubfieldEmbedding::trace(FieldElement y) const { return partial_trace(*this, y, b_); }

FieldElement SubfieldEmbedding::norm(FieldElement y) const {
    return restrict_or_throw(large_->pow(y, step_));
}

const SubfieldEmbedding& embedding(const FieldPtr& small, const FieldPtr& large) {
    static std::mutex mutex;
    static std::map<std::pair<const FiniteField*, const FiniteField*>, std::unique_ptr<SubfieldEmbedding>> cache;
    std::lock_guard lock(mutex);
    auto key = std::pair{small.get(), large.get()};
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
    auto emb = std::make_unique<SubfieldEmbedding>(small, large);
    return *cache.emplace(key, std::move(emb)).first->second;
}

FieldElement frobenius(const FiniteField& field, FieldElement x, std::uint32_t k) { return field.frobenius(x, k); }

FieldElement rel_trace(const FieldPtr& large, FieldElement x, const FieldPtr& to) {
    return embedding(to, large).trace(x);
}

FieldElement rel_norm(const FieldPtr& large, FieldElement x, const FieldPtr& to) {
    return embedding(to, large).norm(x);
}

}  // namespace polarkit
