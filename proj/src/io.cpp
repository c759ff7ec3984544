#include "polarkit/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace polarkit {

using json = nlohmann::json;

namespace {

json element_json(const FiniteField& F, FieldElement x) { return F.coefficients(x); }

FieldElement parse_element(const FiniteField& F, const json& j) {
    if (j.is_number_integer()) {
        const auto code = j.get<std::int64_t>();
        if (code < 0 || code >= F.q()) throw InvalidArgument("element code out of range: " + j.dump());
        return FieldElement{static_cast<std::uint32_t>(code)};
    }
    if (!j.is_array() || j.size() > F.f()) throw InvalidArgument("bad field element: " + j.dump());
    std::vector<std::uint32_t> c;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() >= F.p())
            throw InvalidArgument("bad coefficient in " + j.dump());
        c.push_back(v.get<std::uint32_t>());
    }
    c.resize(F.f(), 0);
    return F.from_coefficients(c);
}

json matrix_json(const FiniteField& F, const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(element_json(F, m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

Matrix parse_matrix(const FiniteField& F, const json& j, std::size_t d) {
    if (!j.is_array() || j.size() != d) throw InvalidArgument("matrix must have " + std::to_string(d) + " rows");
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (!j[i].is_array() || j[i].size() != d)
            throw InvalidArgument("matrix row " + std::to_string(i) + " must have " + std::to_string(d) + " entries");
        for (std::size_t k = 0; k < d; ++k) m(i, k) = parse_element(F, j[i][k]);
    }
    return m;
}

json space_json(const SpaceDescriptor& s) {
    return {{"kind", std::string(short_name(s.kind))}, {"d", s.d}, {"q", s.q}};
}

SpaceDescriptor parse_space_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("d") || !j.contains("q"))
        throw InvalidArgument("space descriptor needs kind, d and q");
    try {
        const auto kind = parse_kind(j.at("kind").get<std::string>());
        if (!kind) throw InvalidArgument("unknown kind " + j.at("kind").dump());
        return {*kind, j.at("d").get<std::size_t>(), j.at("q").get<std::uint32_t>()};
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("bad space descriptor: ") + e.what());
    }
}

json report_json(const IntriguingReport& r) {
    json j{{"size", r.size}, {"intriguing", r.is_intriguing}};
    j["h1"] = r.h1 ? json(*r.h1) : json(nullptr);
    j["h2"] = r.h2 ? json(*r.h2) : json(nullptr);
    if (r.tight_i) j["tight_i"] = *r.tight_i;
    if (r.ovoid_m) j["ovoid_m"] = *r.ovoid_m;
    return j;
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

std::string to_json(const SpaceDescriptor& s) { return space_json(s).dump(); }

std::string to_json(const Form& form) {
    const auto& F = *form.field();
    json j{{"kind", std::string(short_name(form.kind()))}, {"q", F.q()}, {"d", form.dim()}};
    j["matrix"] = matrix_json(F, form.matrix());
    return j.dump();
}

std::string to_json(const PointSet& set) {
    json j{{"space", space_json(set.space()->descriptor())}, {"indices", set.members()}};
    return j.dump();
}

std::string to_json(const IntriguingReport& report) { return report_json(report).dump(); }

std::string to_json(const FieldReduction& fr) {
    json j{{"row", fr.row()},
           {"q", fr.small_space()->q()},
           {"b", fr.b()},
           {"d", fr.small_space()->dim()},
           {"alpha", element_json(*fr.embedding().large(), fr.alpha())}};
    return j.dump();
}

std::string to_json(const OrbitPartition& parts, const std::vector<IntriguingReport>& reports) {
    json j{{"space", space_json(parts.space->descriptor())}, {"num_orbits", parts.num_orbits()}};
    j["sizes"] = parts.sorted_sizes();
    json orbits = json::array();
    for (std::size_t k = 0; k < parts.num_orbits(); ++k) {
        json o{{"representative", parts.representatives[k]}, {"size", parts.orbit_sizes[k]}};
        if (k < reports.size()) o["report"] = report_json(reports[k]);
        orbits.push_back(std::move(o));
    }
    j["orbits"] = std::move(orbits);
    return j.dump();
}

std::string generators_to_json(const GeneratorSet& gens) {
    json list = json::array();
    std::uint32_t q = 0;
    std::size_t d = 0;
    for (const auto& g : gens.elements) {
        q = g.field()->q();
        d = g.dim();
        list.push_back({{"matrix", matrix_json(*g.field(), g.matrix())}, {"sigma_power", g.sigma_power()}});
    }
    json j{{"q", q}, {"d", d}, {"generators", std::move(list)}};
    if (!gens.label.empty()) j["label"] = gens.label;
    return j.dump();
}

GeneratorFile parse_generators(std::string_view text) {
    const json j = parse_text(text);
    if (!j.is_object() || !j.contains("q") || !j.contains("d") || !j.contains("generators"))
        throw InvalidArgument("generator file needs q, d and generators");
    GeneratorFile out;
    out.field = FiniteField::of_order(j.at("q").get<std::uint64_t>());
    out.d = j.at("d").get<std::size_t>();
    if (j.contains("label")) out.generators.label = j.at("label").get<std::string>();
    const auto& list = j.at("generators");
    if (!list.is_array()) throw InvalidArgument("generators must be a list");
    for (std::size_t k = 0; k < list.size(); ++k) {
        const auto& g = list[k];
        if (!g.is_object() || !g.contains("matrix"))
            throw InvalidArgument("generator " + std::to_string(k) + " needs a matrix");
        const std::uint32_t s = g.value("sigma_power", 0u);
        try {
            out.generators.elements.emplace_back(out.field, parse_matrix(*out.field, g.at("matrix"), out.d), s);
        } catch (const InvalidArgument& e) {
            throw InvalidArgument("generator " + std::to_string(k) + ": " + e.what());
        }
    }
    return out;
}

Form parse_form(std::string_view text) {
    const json j = parse_text(text);
    const auto s = parse_space_json(j);
    if (!j.contains("matrix")) return Form::standard(s.kind, s.d, FiniteField::of_order(s.q));
    const auto field = FiniteField::of_order(s.q);
    return Form::from_matrix(s.kind, field, parse_matrix(*field, j.at("matrix"), s.d));
}

SpaceDescriptor parse_space(std::string_view text) { return parse_space_json(parse_text(text)); }

PointSetFile parse_point_set(std::string_view text) {
    const json j = parse_text(text);
    if (!j.is_object() || !j.contains("space") || !j.contains("indices"))
        throw InvalidArgument("point set file needs space and indices");
    const auto space = parse_space_json(j.at("space"));
    try {
        return {space, j.at("indices").get<std::vector<std::uint32_t>>()};
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("bad indices: ") + e.what());
    }
}

PointSet to_point_set(const PointSetFile& file, const SpacePtr& space) {
    if (file.space != space->descriptor()) throw InvalidArgument("point set belongs to a different space");
    for (auto i : file.indices)
        if (i >= space->size()) throw InvalidArgument("point index " + std::to_string(i) + " out of range");
    return PointSet::from_unsorted(space, file.indices);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace polarkit
