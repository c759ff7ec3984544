#include "polarkit/group.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>

namespace polarkit {

Semisimilarity::Semisimilarity(FieldPtr field, Matrix matrix, std::uint32_t sigma_power)
    : field_(std::move(field)), matrix_(std::move(matrix)), sigma_(sigma_power % field_->f()) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) throw InvalidArgument("matrix must be square");
    if (det(*field_, matrix_).is_zero()) throw InvalidArgument("matrix is singular");
}

Vec Semisimilarity::apply(std::span<const FieldElement> v) const {
    if (v.size() != dim()) throw InvalidArgument("vector length does not match");
    const Vec vs = frobenius(*field_, v, sigma_);
    return vec_mat(*field_, vs, matrix_);
}

Semisimilarity Semisimilarity::then(const Semisimilarity& other) const {
    if (other.dim() != dim() || other.field_ != field_) throw InvalidArgument("incompatible semisimilarities");
    const Matrix a = frobenius(*field_, matrix_, other.sigma_);
    return Semisimilarity(field_, mul(*field_, a, other.matrix_), sigma_ + other.sigma_);
}

Semisimilarity Semisimilarity::inverse() const {
    const std::uint32_t f = field_->f();
    const std::uint32_t back = (f - sigma_) % f;
    auto inv = polarkit::inverse(*field_, frobenius(*field_, matrix_, back));
    return Semisimilarity(field_, *inv, back);
}

std::optional<FieldElement> multiplier(const Form& form, const Semisimilarity& g, std::string* why) {
    auto fail = [&](const std::string& msg) -> std::optional<FieldElement> {
        if (why) *why = msg;
        return std::nullopt;
    };
    if (g.dim() != form.dim()) return fail("dimension mismatch");
    if (g.field() != form.field()) return fail("field mismatch");
    const auto& F = *form.field();
    const std::size_t d = form.dim();
    const Matrix& a = g.matrix();
    const auto s = g.sigma_power();
    const bool quad = is_quadratic(form.kind());

    // (value before, value after) on basis data
    struct Sample {
        FieldElement before, after;
        std::size_t i, j;
        bool diagonal;
    };
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < d; ++i) {
        if (quad) samples.push_back({form.matrix()(i, i), form.evaluate(a.row(i)), i, i, true});
        for (std::size_t j = quad ? i + 1 : 0; j < d; ++j)
            samples.push_back({form.polar_gram()(i, j), form.evaluate_pair(a.row(i), a.row(j)), i, j, false});
    }
    std::optional<FieldElement> lambda;
    for (const auto& smp : samples) {
        if (smp.before.is_zero()) continue;
        lambda = F.div(smp.after, F.frobenius(smp.before, s));
        break;
    }
    if (!lambda || lambda->is_zero()) return fail("no nonzero multiplier");
    for (const auto& smp : samples) {
        if (smp.after != F.mul(*lambda, F.frobenius(smp.before, s))) {
            const std::string what = smp.diagonal ? "Q(e" + std::to_string(smp.i) + ")"
                                                  : "pair (e" + std::to_string(smp.i) + ", e" + std::to_string(smp.j) + ")";
            return fail("fails on " + what);
        }
    }
    return lambda;
}

GeneratorSet GeneratorSet::with_inverses() const {
    GeneratorSet out{elements, label};
    for (const auto& g : elements) {
        auto inv = g.inverse();
        if (std::find(out.elements.begin(), out.elements.end(), inv) == out.elements.end())
            out.elements.push_back(std::move(inv));
    }
    return out;
}

void validate_generators(const Form& form, const GeneratorSet& gens) {
    for (std::size_t k = 0; k < gens.elements.size(); ++k) {
        std::string why;
        if (!multiplier(form, gens.elements[k], &why)) throw FormInvarianceError(k, why);
    }
}

PointSet OrbitPartition::orbit(std::size_t k) const {
    const auto rep = representatives.at(k);
    std::vector<std::uint32_t> members;
    members.reserve(orbit_sizes[k]);
    for (std::uint32_t i = 0; i < orbit_id.size(); ++i)
        if (orbit_id[i] == rep) members.push_back(i);
    return PointSet(space, std::move(members));
}

std::vector<std::uint64_t> OrbitPartition::sorted_sizes() const {
    auto s = orbit_sizes;
    std::sort(s.begin(), s.end());
    return s;
}

namespace {

unsigned resolve_threads(unsigned threads, std::size_t work) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    return std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, work / 4096)));
}

template <class Fn>
void parallel_ranges(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex mutex;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                fn(n * t / threads, n * (t + 1) / threads);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!error) error = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<std::uint32_t> invert(const std::vector<std::uint32_t>& perm) {
    std::vector<std::uint32_t> inv(perm.size());
    for (std::uint32_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    return inv;
}

}  // namespace

std::vector<std::uint32_t> point_permutation(const PolarSpace& space, const Semisimilarity& g, unsigned threads) {
    const auto& F = *space.field();
    const std::size_t d = space.dim();
    const std::uint32_t q = F.q();
    if (g.dim() != d) throw InvalidArgument("generator dimension does not match the space");
    std::vector<FieldElement> frob(q);
    for (std::uint32_t x = 0; x < q; ++x) frob[x] = F.frobenius(FieldElement{x}, g.sigma_power());
    const Matrix& a = g.matrix();
    std::vector<std::uint32_t> perm(space.size());
    parallel_ranges(space.size(), resolve_threads(threads, space.size()), [&](std::size_t lo, std::size_t hi) {
        Vec img(d);
        for (std::size_t i = lo; i < hi; ++i) {
            std::fill(img.begin(), img.end(), FieldElement{});
            const auto c = space.coords(static_cast<std::uint32_t>(i));
            for (std::size_t k = 0; k < d; ++k) {
                if (c[k] == 0) continue;
                const FieldElement x = frob[c[k]];
                const auto row = a.row(k);
                for (std::size_t j = 0; j < d; ++j) img[j] = F.add(img[j], F.mul(x, row[j]));
            }
            canonicalize(F, img);
            auto idx = space.index_of_code(vector_code(q, img));
            if (!idx) throw Error("generator maps a point off the polar space");
            perm[i] = *idx;
        }
    });
    return perm;
}

OrbitPartition orbits(const SpacePtr& space, const GeneratorSet& gens, const OrbitOptions& opts) {
    validate_generators(space->form(), gens);
    std::vector<std::vector<std::uint32_t>> perms;
    for (const auto& g : gens.elements) perms.push_back(point_permutation(*space, g, opts.threads));
    const std::size_t base = perms.size();
    for (std::size_t k = 0; k < base; ++k) {
        auto inv = invert(perms[k]);
        if (std::find(perms.begin(), perms.end(), inv) == perms.end()) perms.push_back(std::move(inv));
    }

    constexpr std::uint32_t kUnseen = 0xffffffffu;
    OrbitPartition out;
    out.space = space;
    out.orbit_id.assign(space->size(), kUnseen);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t start = 0; start < space->size(); ++start) {
        if (out.orbit_id[start] != kUnseen) continue;
        queue.clear();
        queue.push_back(start);
        out.orbit_id[start] = start;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const auto x = queue[head];
            for (const auto& p : perms) {
                const auto y = p[x];
                if (out.orbit_id[y] == kUnseen) {
                    out.orbit_id[y] = start;
                    queue.push_back(y);
                }
            }
        }
        out.representatives.push_back(start);
        out.orbit_sizes.push_back(queue.size());
    }
    return out;
}

std::vector<std::uint64_t> vector_orbits(const Form& form, const GeneratorSet& gens, std::uint64_t cap) {
    validate_generators(form, gens);
    const auto& F = *form.field();
    const std::uint32_t q = F.q();
    const std::size_t d = form.dim();
    const std::uint64_t total = ipow(q, static_cast<std::uint32_t>(d));
    if (total - 1 > cap) throw CapacityExceeded("too many vectors: " + std::to_string(total - 1));
    const auto all = gens.with_inverses();

    auto decode = [&](std::uint64_t code) {
        Vec v(d);
        for (std::size_t i = d; i-- > 0;) {
            v[i] = FieldElement{static_cast<std::uint32_t>(code % q)};
            code /= q;
        }
        return v;
    };
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(total));
    std::vector<std::uint64_t> sizes;
    std::vector<std::uint64_t> queue;
    for (std::uint64_t start = 1; start < total; ++start) {
        if (seen.count(start)) continue;
        queue.clear();
        queue.push_back(start);
        seen.insert(start);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vec v = decode(queue[head]);
            for (const auto& g : all.elements) {
                const auto c = vector_code(q, g.apply(v));
                if (seen.insert(c).second) queue.push_back(c);
            }
        }
        sizes.push_back(queue.size());
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

std::string_view family_name(GroupFamily f) noexcept {
    switch (f) {
        case GroupFamily::Sp: return "Sp";
        case GroupFamily::SU: return "SU";
        case GroupFamily::OmegaPlus: return "OmegaPlus";
        case GroupFamily::OmegaMinus: return "OmegaMinus";
        case GroupFamily::Omega: return "Omega";
        case GroupFamily::GO1WrSym: return "GO1WrSym";
        case GroupFamily::GU1WrSym: return "GU1WrSym";
    }
    return "?";
}

std::optional<GroupFamily> parse_family(std::string_view s) noexcept {
    for (auto f : {GroupFamily::Sp, GroupFamily::SU, GroupFamily::OmegaPlus, GroupFamily::OmegaMinus,
                   GroupFamily::Omega, GroupFamily::GO1WrSym, GroupFamily::GU1WrSym})
        if (s == family_name(f)) return f;
    return std::nullopt;
}

namespace {

Vec unit(std::size_t d, std::size_t i) {
    Vec v(d);
    v[i] = FieldElement{1};
    return v;
}

// x -> x + t k(x, v) v
Matrix symplectic_transvection(const Form& form, const Vec& v, FieldElement t) {
    const auto& F = *form.field();
    const std::size_t d = form.dim();
    Matrix m = Matrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) {
        const FieldElement c = F.mul(t, form.evaluate_pair(unit(d, i), v));
        for (std::size_t j = 0; j < d; ++j) m(i, j) = F.add(m(i, j), F.mul(c, v[j]));
    }
    return m;
}

// Siegel transformation x -> x + B(x,u) v - B(x,v) u - Q(v) B(x,u) u, u singular, v perp u.
Matrix siegel(const Form& form, const Vec& u, const Vec& v) {
    const auto& F = *form.field();
    const std::size_t d = form.dim();
    const FieldElement qv = form.evaluate(v);
    Matrix m = Matrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) {
        const Vec e = unit(d, i);
        const FieldElement bu = form.evaluate_pair(e, u), bv = form.evaluate_pair(e, v);
        const FieldElement cu = F.neg(F.add(bv, F.mul(qv, bu)));
        for (std::size_t j = 0; j < d; ++j) m(i, j) = F.add(m(i, j), F.add(F.mul(bu, v[j]), F.mul(cu, u[j])));
    }
    return m;
}

Matrix permutation_matrix(std::span<const std::size_t> image) {
    Matrix m(image.size(), image.size());
    for (std::size_t i = 0; i < image.size(); ++i) m(i, image[i]) = FieldElement{1};
    return m;
}

std::vector<FieldElement> prime_field_basis(const FiniteField& F) {
    std::vector<FieldElement> b;
    for (std::uint32_t k = 0; k < F.f(); ++k) b.push_back(F.pow(F.generator(), k));
    return b;
}

}  // namespace

ClassicalGroup classical_generators(GroupFamily family, std::size_t d, FieldPtr field) {
    const auto& F = *field;
    if (d < 2 || d > 14 || F.q() > 9) throw InvalidArgument("classical generators are supported for 2 <= d <= 14, q <= 9");
    const auto label = std::string(family_name(family)) + "(" + std::to_string(d) + "," + std::to_string(F.q()) + ")";
    const auto tvals = prime_field_basis(F);
    std::vector<Semisimilarity> gens;
    auto push = [&](Matrix m) { gens.emplace_back(field, std::move(m), 0); };

    switch (family) {
        case GroupFamily::Sp: {
            Form form = Form::standard(FormKind::Symplectic, d, field);
            const std::size_t m = d / 2;
            std::vector<Vec> vs;
            for (std::size_t i = 0; i < m; ++i) {
                vs.push_back(unit(d, i));
                vs.push_back(unit(d, i + m));
            }
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    if (i < j) {
                        vs.push_back(add(F, unit(d, i), unit(d, j)));
                        vs.push_back(add(F, unit(d, i + m), unit(d, j + m)));
                    }
                    if (i != j) vs.push_back(add(F, unit(d, i), unit(d, j + m)));
                }
            for (const auto& v : vs)
                for (auto t : tvals) push(symplectic_transvection(form, v, t));
            return {std::move(form), {std::move(gens), label}};
        }
        case GroupFamily::SU: {
            Form form = Form::standard(FormKind::Hermitian, d, field);
            const std::uint32_t s = F.sqrt_order();
            // a + a^s = 0: a GF(s)-line spanned by a0
            FieldElement a0{};
            for (std::uint32_t c = 1; c < F.q() && a0.is_zero(); ++c)
                if (F.add(FieldElement{c}, F.conjugate(FieldElement{c})).is_zero()) a0 = FieldElement{c};
            const FieldElement sub_gen = F.pow(F.generator(), s + 1);  // generates GF(s)*
            std::vector<FieldElement> avals;
            for (std::uint32_t k = 0; k < F.f() / 2; ++k) avals.push_back(F.mul(a0, F.pow(sub_gen, k)));
            const FieldElement minus_one = F.neg(F.one());
            std::vector<FieldElement> cs;
            for (std::uint32_t c = 1; c < F.q(); ++c)
                if (F.pow(FieldElement{c}, s + 1) == minus_one) cs.push_back(FieldElement{c});
            std::vector<Vec> us;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i + 1; j < d; ++j)
                    for (auto c : cs) {
                        Vec u = unit(d, i);
                        u[j] = c;
                        us.push_back(std::move(u));
                    }
            // In characteristic 2 the transvections above are monomial; one
            // isotropic vector of wider support breaks the decomposition.
            const std::size_t width = std::min<std::size_t>(d, 4);
            const std::uint64_t combos = ipow(F.q(), static_cast<std::uint32_t>(width - 1));
            for (std::uint64_t code = 1; code < combos && width >= 3; ++code) {
                Vec u(d);
                u[0] = F.one();
                std::uint64_t x = code;
                std::size_t support = 1;
                for (std::size_t j = 1; j < width; ++j) {
                    u[j] = FieldElement{static_cast<std::uint32_t>(x % F.q())};
                    x /= F.q();
                    support += !u[j].is_zero();
                }
                if (support >= 3 && form.evaluate(u).is_zero()) {
                    us.push_back(std::move(u));
                    break;
                }
            }
            for (const auto& u : us)
                for (auto a : avals) {
                    Matrix m = Matrix::identity(d);
                    for (std::size_t r = 0; r < d; ++r) {
                        const FieldElement k = F.mul(a, form.evaluate_pair(unit(d, r), u));
                        for (std::size_t col = 0; col < d; ++col) m(r, col) = F.add(m(r, col), F.mul(k, u[col]));
                    }
                    push(std::move(m));
                }
            return {std::move(form), {std::move(gens), label}};
        }
        case GroupFamily::OmegaPlus:
        case GroupFamily::OmegaMinus:
        case GroupFamily::Omega: {
            const FormKind kind = family == GroupFamily::OmegaPlus    ? FormKind::QuadraticPlus
                                  : family == GroupFamily::OmegaMinus ? FormKind::QuadraticMinus
                                                                      : FormKind::QuadraticParabolic;
            if (d < 3) throw InvalidArgument("orthogonal generators need d >= 3");
            Form form = Form::standard(kind, d, field);
            for (std::size_t i = 0; i < d; ++i) {
                const Vec u = unit(d, i);
                if (!form.evaluate(u).is_zero()) continue;
                for (std::size_t j = 0; j < d; ++j) {
                    if (j == i || !form.evaluate_pair(u, unit(d, j)).is_zero()) continue;
                    for (auto t : tvals) push(siegel(form, u, scale(F, t, unit(d, j))));
                }
            }
            return {std::move(form), {std::move(gens), label}};
        }
        case GroupFamily::GO1WrSym:
        case GroupFamily::GU1WrSym: {
            const bool unitary = family == GroupFamily::GU1WrSym;
            if (!unitary && F.p() == 2) throw InvalidArgument("GO1WrSym needs odd q");
            Vec ones(d, F.one());
            Form form = unitary ? Form::standard(FormKind::Hermitian, d, field) : Form::diagonal_quadratic(field, ones);
            Matrix diag = Matrix::identity(d);
            diag(0, 0) = unitary ? F.pow(F.generator(), F.sqrt_order() - 1) : F.neg(F.one());
            push(std::move(diag));
            std::vector<std::size_t> swap(d), cycle(d);
            for (std::size_t i = 0; i < d; ++i) {
                swap[i] = i;
                cycle[i] = (i + 1) % d;
            }
            std::swap(swap[0], swap[1]);
            push(permutation_matrix(swap));
            if (d > 2) push(permutation_matrix(cycle));
            return {std::move(form), {std::move(gens), label}};
        }
    }
    throw InvalidArgument("unknown group family");
}

}  // namespace polarkit
