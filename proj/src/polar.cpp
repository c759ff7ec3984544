#include "polarkit/polar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

namespace polarkit {

PolarParameters polar_parameters(FormKind kind, std::size_t d, std::uint32_t q) {
    if (!prime_power(q)) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    PolarParameters pp{kind, d, q, 0, 0, 0, 0, 0, 0};
    switch (kind) {
        case FormKind::Symplectic:
            if (d % 2) throw InvalidArgument("symplectic spaces need even dimension");
            pp.rank = d / 2;
            pp.epsilon2 = 0;
            break;
        case FormKind::QuadraticPlus:
            if (d % 2) throw InvalidArgument("hyperbolic quadrics need even dimension");
            pp.rank = d / 2;
            pp.epsilon2 = 2;
            break;
        case FormKind::QuadraticMinus:
            if (d % 2 || d < 2) throw InvalidArgument("elliptic quadrics need even dimension");
            pp.rank = d / 2 - 1;
            pp.epsilon2 = 2;
            break;
        case FormKind::QuadraticParabolic:
            if (d % 2 == 0) throw InvalidArgument("parabolic quadrics need odd dimension");
            pp.rank = (d - 1) / 2;
            pp.epsilon2 = 2;
            break;
        case FormKind::Hermitian:
            pp.rank = d / 2;
            pp.epsilon2 = 1;
            break;
    }
    // theta_r = q^(d - r - epsilon) + 1, with half-integer exponents for unitary spaces.
    const std::uint64_t twice_exp = 2 * (d - pp.rank) - static_cast<std::uint64_t>(pp.epsilon2);
    std::uint64_t qpow;
    if (twice_exp % 2 == 0) {
        qpow = ipow(q, static_cast<std::uint32_t>(twice_exp / 2));
    } else {
        auto pf = prime_power(q);
        if (pf->second % 2) throw InvalidArgument("Hermitian forms need a field of square order");
        const std::uint64_t s = ipow(pf->first, pf->second / 2);
        qpow = ipow(s, static_cast<std::uint32_t>(twice_exp));
    }
    pp.theta = qpow + 1;
    pp.theta_prev = (pp.theta - 1) / q + 1;
    pp.gaussian = (ipow(q, static_cast<std::uint32_t>(pp.rank)) - 1) / (q - 1);
    pp.num_points = pp.gaussian * pp.theta;
    return pp;
}

void canonicalize(const FiniteField& F, std::span<FieldElement> v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (v[i] == F.one()) return;
        const FieldElement inv = F.inv(v[i]);
        for (std::size_t j = i; j < v.size(); ++j) v[j] = F.mul(inv, v[j]);
        return;
    }
}

std::uint64_t vector_code(std::uint32_t q, std::span<const FieldElement> v) {
    std::uint64_t c = 0;
    for (auto x : v) c = c * q + x.code();
    return c;
}

namespace {

constexpr std::uint32_t kNoIndex = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

// Calls fn(vec) for every canonical vector of length n in increasing code order.
void for_each_canonical(std::size_t n, std::uint32_t q, const std::function<void(std::span<const FieldElement>)>& fn) {
    Vec v(n);
    for (std::size_t lead = n; lead-- > 0;) {
        std::fill(v.begin(), v.end(), FieldElement{});
        v[lead] = FieldElement{1};
        while (true) {
            fn(v);
            // base-q increment of the coordinates after the leading one
            std::size_t pos = n;
            bool carry = true;
            while (carry && pos > lead + 1) {
                --pos;
                if (v[pos].code() + 1 < q) {
                    v[pos] = FieldElement{v[pos].code() + 1};
                    carry = false;
                } else {
                    v[pos] = FieldElement{0};
                }
            }
            if (carry) break;
        }
    }
}

}  // namespace

PolarSpace::PolarSpace(Form form)
    : form_(std::move(form)),
      params_(polar_parameters(form_.kind(), form_.dim(), form_.field()->q())),
      maximal_(form_.field(), form_.dim()) {}

SpacePtr PolarSpace::build(Form form, const BuildOptions& opts) {
    const auto q = form.field()->q();
    if (q > 256) throw InvalidArgument("point enumeration supports q <= 256");
    if (form.kind() == FormKind::QuadraticPlus && form.dim() == 4 && !opts.allow_hyperbolic_3)
        throw InvalidArgument("Q+(3,q) is not supported");
    const auto pp = polar_parameters(form.kind(), form.dim(), q);
    if (pp.rank < 1) throw InvalidArgument("polar space has rank 0");
    if (pp.num_points > opts.point_cap)
        throw CapacityExceeded("space too large: " + std::to_string(pp.num_points) + " points exceed the cap of " +
                               std::to_string(opts.point_cap));
    if (static_cast<double>(form.dim()) * std::log2(static_cast<double>(q)) >= 63.0)
        throw InvalidArgument("space too large for 64-bit point codes");

    auto space = std::make_shared<PolarSpace>(std::move(form));
    const bool algebraic = opts.method == BuildOptions::Method::Algebraic ||
                           (opts.method == BuildOptions::Method::Auto && space->dim() > 10);
    if (algebraic && space->dim() >= 2)
        space->enumerate_algebraic();
    else
        space->enumerate_scan();
    if (space->size() != pp.num_points)
        throw Error("enumerated " + std::to_string(space->size()) + " points, expected " +
                    std::to_string(pp.num_points));
    space->finish_index();
    space->compute_rank();
    return space;
}

void PolarSpace::enumerate_scan() {
    const auto q = this->q();
    for_each_canonical(dim(), q, [&](std::span<const FieldElement> v) {
        if (!form_.is_singular(v)) return;
        for (auto x : v) coords_.push_back(static_cast<std::uint8_t>(x.code()));
        codes_.push_back(vector_code(q, v));
    });
}

void PolarSpace::enumerate_algebraic() {
    // Split v = (x, t) with t the last coordinate.  The singularity condition is
    //   quadratic:  Q(x) + t * L(x) + c t^2 = 0
    //   Hermitian:  k(x,x) + beta t^s + beta^s t + g t^(s+1) = 0
    //   symplectic: always.
    // roots[b * q + a] lists the t solving  lead(t) + b-term(t) + a = 0.
    const auto& F = *field();
    const auto q = this->q();
    const std::size_t d = dim();
    const std::size_t last = d - 1;
    const Matrix& m = form_.matrix();
    const bool quad = is_quadratic(kind());
    const auto sigma = form_.sigma_power();

    std::vector<std::vector<std::uint8_t>> roots(std::size_t{q} * q);
    if (kind() != FormKind::Symplectic) {
        const FieldElement lead = m(last, last);
        for (std::uint32_t b = 0; b < q; ++b)
            for (std::uint32_t t = 0; t < q; ++t) {
                const FieldElement T{t}, B{b};
                FieldElement val;
                if (quad)
                    val = F.add(F.mul(lead, F.mul(T, T)), F.mul(B, T));
                else
                    val = F.add(F.add(F.mul(B, F.frobenius(T, sigma)), F.mul(F.frobenius(B, sigma), T)),
                                F.mul(lead, F.mul(T, F.frobenius(T, sigma))));
                roots[std::size_t{b} * q + F.neg(val).code()].push_back(static_cast<std::uint8_t>(t));
            }
    }

    Vec full(d);
    auto emit = [&](std::span<const FieldElement> v) {
        for (auto x : v) coords_.push_back(static_cast<std::uint8_t>(x.code()));
        codes_.push_back(vector_code(q, v));
    };
    // zero prefix: the vector e_last
    full[last] = F.one();
    if (form_.is_singular(full)) emit(full);

    for_each_canonical(d - 1, q, [&](std::span<const FieldElement> x) {
        std::copy(x.begin(), x.end(), full.begin());
        if (kind() == FormKind::Symplectic) {
            for (std::uint32_t t = 0; t < q; ++t) {
                full[last] = FieldElement{t};
                emit(full);
            }
            return;
        }
        full[last] = F.zero();
        const FieldElement a = form_.evaluate(full);
        FieldElement b = F.zero();
        for (std::size_t i = 0; i < last; ++i) b = F.add(b, F.mul(x[i], m(i, last)));
        for (auto t : roots[std::size_t{b.code()} * q + a.code()]) {
            full[last] = FieldElement{t};
            emit(full);
        }
    });
}

void PolarSpace::finish_index() {
    const std::uint64_t total = ipow(q(), static_cast<std::uint32_t>(dim()));
    if (total <= kDenseLimit) {
        dense_.assign(total, kNoIndex);
        for (std::uint32_t i = 0; i < codes_.size(); ++i) dense_[codes_[i]] = i;
    }
}

std::optional<std::uint32_t> PolarSpace::index_of_code(std::uint64_t code) const noexcept {
    if (!dense_.empty()) {
        if (code >= dense_.size() || dense_[code] == kNoIndex) return std::nullopt;
        return dense_[code];
    }
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) return std::nullopt;
    return static_cast<std::uint32_t>(it - codes_.begin());
}

std::optional<std::uint32_t> PolarSpace::index_of(std::span<const FieldElement> v) const {
    if (v.size() != dim()) throw InvalidArgument("vector length does not match space dimension");
    Vec c(v.begin(), v.end());
    canonicalize(*field(), c);
    const auto code = vector_code(q(), c);
    if (code == 0) return std::nullopt;
    return index_of_code(code);
}

Vec PolarSpace::point(std::uint32_t i) const {
    if (i >= size()) throw InvalidArgument("point index out of range");
    Vec v(dim());
    auto c = coords(i);
    for (std::size_t k = 0; k < dim(); ++k) v[k] = FieldElement{c[k]};
    return v;
}

bool PolarSpace::collinear(std::uint32_t i, std::uint32_t j) const {
    if (i >= size() || j >= size()) throw InvalidArgument("point index out of range");
    if (i == j) return true;
    return form_.evaluate_pair(point(i), point(j)).is_zero();
}

std::uint64_t PolarSpace::h1_trivial() const noexcept {
    const std::uint64_t qr1 = ipow(q(), static_cast<std::uint32_t>(rank() - 1));
    return qr1 + params_.theta * (qr1 - 1) / (q() - 1);
}

void PolarSpace::compute_rank() {
    // Greedy: walk the points in order and keep every point perpendicular to
    // all chosen ones and outside their span.  The result is maximal.
    const auto& F = *field();
    std::vector<Vec> chosen, images;
    std::vector<bool> in_span(size(), false);
    std::vector<std::uint32_t> span_points;
    for (std::uint32_t i = 0; i < size(); ++i) {
        if (in_span[i]) continue;
        const Vec p = point(i);
        bool ok = true;
        for (const auto& w : images)
            if (!dot(F, p, w).is_zero()) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen.push_back(p);
        images.push_back(form_.polar_image(p));
        // mark the points of the enlarged span
        const std::size_t k = chosen.size();
        const std::uint64_t combos = ipow(q(), static_cast<std::uint32_t>(k));
        for (std::uint64_t c = 1; c < combos; ++c) {
            Vec v(dim());
            std::uint64_t x = c;
            for (std::size_t j = 0; j < k; ++j) {
                const FieldElement coef{static_cast<std::uint32_t>(x % q())};
                x /= q();
                if (!coef.is_zero()) v = add(F, v, scale(F, coef, chosen[j]));
            }
            auto idx = index_of(v);
            if (!idx) throw Error("span of singular perpendicular points is not totally singular");
            in_span[*idx] = true;
        }
    }
    for (std::uint32_t i = 0; i < size(); ++i)
        if (in_span[i]) span_points.push_back(i);
    if (chosen.size() != params_.rank)
        throw Error("computed rank " + std::to_string(chosen.size()) + " differs from the expected rank " +
                    std::to_string(params_.rank));
    maximal_ = Subspace::span(field(), dim(), chosen);
    maximal_points_ = std::move(span_points);
}

PointSet::PointSet(SpacePtr space, std::vector<std::uint32_t> members)
    : space_(std::move(space)), members_(std::move(members)) {
    if (!space_) throw InvalidArgument("point set needs a space");
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i] >= space_->size()) throw InvalidArgument("point index out of range");
        if (i > 0 && members_[i] <= members_[i - 1]) throw InvalidArgument("point indices must be strictly increasing");
    }
}

PointSet PointSet::from_unsorted(SpacePtr space, std::vector<std::uint32_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return PointSet(std::move(space), std::move(members));
}

PointSet PointSet::all(SpacePtr space) {
    std::vector<std::uint32_t> m(space->size());
    for (std::uint32_t i = 0; i < m.size(); ++i) m[i] = i;
    return PointSet(std::move(space), std::move(m));
}

bool PointSet::contains(std::uint32_t i) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), i);
}

PointSet PointSet::complement() const {
    std::vector<std::uint32_t> out;
    out.reserve(space_->size() - members_.size());
    std::size_t k = 0;
    for (std::uint32_t i = 0; i < space_->size(); ++i) {
        if (k < members_.size() && members_[k] == i) {
            ++k;
            continue;
        }
        out.push_back(i);
    }
    return PointSet(space_, std::move(out));
}

PointSet PointSet::intersect(const PointSet& other) const {
    if (other.space_ != space_) throw InvalidArgument("point sets live in different spaces");
    std::vector<std::uint32_t> out;
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                          std::back_inserter(out));
    return PointSet(space_, std::move(out));
}

PointSet perp_residual(const SpacePtr& space, const Subspace& w) {
    const auto& F = *space->field();
    std::vector<Vec> images;
    for (std::size_t i = 0; i < w.dim(); ++i) images.push_back(space->form().polar_image(w.basis().row(i)));
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < space->size(); ++i) {
        const Vec p = space->point(i);
        // B(w, p) = 0 iff B(p, w) = 0 for reflexive forms
        bool ok = true;
        for (const auto& img : images)
            if (!dot(F, p, img).is_zero()) {
                ok = false;
                break;
            }
        if (ok) out.push_back(i);
    }
    return PointSet(space, std::move(out));
}

PointSet maximal_ts_points(const SpacePtr& space) { return PointSet(space, space->maximal_subspace_points()); }

namespace {

// Counting kernels for B(P, m) = 0 over all points P and members m.
class CountKernel {
public:
    CountKernel(const PolarSpace& s, const std::vector<std::uint32_t>& members) : s_(s), d_(s.dim()) {
        const auto& F = *s.field();
        if (F.q() == 2 && d_ <= 64)
            mode_ = Mode::Binary;
        else if (F.q() == 3 && d_ <= 64)
            mode_ = Mode::Ternary;
        else
            mode_ = Mode::Generic;
        for (auto m : members) {
            const Vec w = s.form().polar_image(s.point(m));
            switch (mode_) {
                case Mode::Binary: bin_.push_back(mask_of(w, 1)); break;
                case Mode::Ternary:
                    plus_.push_back(mask_of(w, 1));
                    minus_.push_back(mask_of(w, 2));
                    break;
                case Mode::Generic:
                    for (auto x : w) gen_.push_back(static_cast<std::uint8_t>(x.code()));
                    break;
            }
        }
        count_ = members.size();
    }

    std::uint32_t count(std::uint32_t point) const {
        const auto c = s_.coords(point);
        std::uint32_t zeros = 0;
        switch (mode_) {
            case Mode::Binary: {
                const auto p = mask_of(c, 1);
                for (auto w : bin_) zeros += (std::popcount(p & w) & 1) == 0;
                break;
            }
            case Mode::Ternary: {
                const auto pp = mask_of(c, 1), pm = mask_of(c, 2);
                for (std::size_t k = 0; k < count_; ++k) {
                    const auto pos = (pp & plus_[k]) | (pm & minus_[k]);
                    const auto neg = (pp & minus_[k]) | (pm & plus_[k]);
                    zeros += (std::popcount(pos) + 2 * std::popcount(neg)) % 3 == 0;
                }
                break;
            }
            case Mode::Generic: {
                const auto& F = *s_.field();
                for (std::size_t k = 0; k < count_; ++k) {
                    FieldElement acc = F.zero();
                    const std::uint8_t* w = gen_.data() + k * d_;
                    for (std::size_t i = 0; i < d_; ++i)
                        if (c[i]) acc = F.add(acc, F.mul(FieldElement{c[i]}, FieldElement{w[i]}));
                    zeros += acc.is_zero();
                }
                break;
            }
        }
        return zeros;
    }

private:
    enum class Mode { Binary, Ternary, Generic };

    template <class Range>
    static std::uint64_t mask_of(const Range& r, std::uint32_t value) {
        std::uint64_t m = 0;
        std::size_t i = 0;
        for (auto x : r) {
            std::uint32_t code;
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, FieldElement>)
                code = x.code();
            else
                code = x;
            if (code == value) m |= std::uint64_t{1} << i;
            ++i;
        }
        return m;
    }

    const PolarSpace& s_;
    std::size_t d_;
    Mode mode_;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> bin_, plus_, minus_;
    std::vector<std::uint8_t> gen_;
};

unsigned resolve_threads(unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    return threads;
}

}  // namespace

std::vector<std::uint32_t> perp_counts(const PointSet& m, unsigned threads) {
    const auto& space = *m.space();
    const std::size_t n = space.size();
    if (2 * m.size() > n) {
        const auto comp = m.complement();
        auto counts = perp_counts(comp, threads);
        const auto h = static_cast<std::uint32_t>(space.h1_trivial());
        for (auto& c : counts) c = h - c;
        return counts;
    }
    std::vector<std::uint32_t> counts(n, 0);
    if (m.empty()) return counts;
    const CountKernel kernel(space, m.members());
    threads = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(1, n / 1024)));
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) counts[i] = kernel.count(static_cast<std::uint32_t>(i));
    };
    if (threads <= 1) {
        work(0, n);
        return counts;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, n * t / threads, n * (t + 1) / threads);
    for (auto& th : pool) th.join();
    return counts;
}

}  // namespace polarkit
