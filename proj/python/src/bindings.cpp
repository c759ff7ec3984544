#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <map>

#include "polarkit/constructions.hpp"
#include "polarkit/intriguing.hpp"
#include "polarkit/io.hpp"
#include "polarkit/verify.hpp"

namespace py = pybind11;
using namespace polarkit;

// The library hands out shared_ptr<const T>; pybind11 holders must be non-const.
template <class T>
struct ConstHolderCaster {
    using Mutable = std::shared_ptr<T>;
    PYBIND11_TYPE_CASTER(std::shared_ptr<const T>, py::detail::make_caster<Mutable>::name);

    bool load(py::handle src, bool convert) {
        py::detail::make_caster<Mutable> inner;
        if (!inner.load(src, convert)) return false;
        value = py::detail::cast_op<Mutable>(inner);
        return true;
    }
    static py::handle cast(const std::shared_ptr<const T>& src, py::return_value_policy policy, py::handle parent) {
        return py::detail::make_caster<Mutable>::cast(std::const_pointer_cast<T>(src), policy, parent);
    }
};

namespace pybind11::detail {
template <>
struct type_caster<std::shared_ptr<const PolarSpace>> : ConstHolderCaster<PolarSpace> {};
template <>
struct type_caster<std::shared_ptr<const FieldReduction>> : ConstHolderCaster<FieldReduction> {};
}  // namespace pybind11::detail

namespace {

FormKind kind_arg(const std::string& s) {
    const auto k = parse_kind(s);
    if (!k) throw InvalidArgument("unknown form kind " + s);
    return *k;
}

std::shared_ptr<PolarSpace> make_space(const std::string& kind, std::size_t d, std::uint32_t q, std::uint64_t point_cap) {
    BuildOptions opts;
    opts.point_cap = point_cap;
    return std::const_pointer_cast<PolarSpace>(
        PolarSpace::build(Form::standard(kind_arg(kind), d, FiniteField::of_order(q)), opts));
}

std::vector<std::uint32_t> coords_of(const PolarSpace& s, std::uint32_t i) {
    const auto c = s.coords(i);
    return {c.begin(), c.end()};
}

Vec vec_of(const std::vector<std::uint32_t>& v) {
    Vec out;
    out.reserve(v.size());
    for (auto x : v) out.push_back(FieldElement{x});
    return out;
}

std::vector<PointSet> orbit_list(const OrbitPartition& p) {
    std::vector<PointSet> out;
    for (std::size_t k = 0; k < p.num_orbits(); ++k) out.push_back(p.orbit(k));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite polar spaces, group orbits and intriguing sets";

    auto base = py::register_exception<Error>(m, "PolarkitError", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<IncompatibleFields>(m, "IncompatibleFields", base.ptr());
    py::register_exception<CapacityExceeded>(m, "CapacityExceeded", base.ptr());
    py::register_exception<FormInvarianceError>(m, "FormInvarianceError", base.ptr());

    py::class_<PolarSpace, std::shared_ptr<PolarSpace>>(m, "Space")
        .def(py::init(&make_space), py::arg("kind"), py::arg("d"), py::arg("q"),
             py::arg("point_cap") = BuildOptions{}.point_cap)
        .def_property_readonly("kind", [](const PolarSpace& s) { return std::string(short_name(s.kind())); })
        .def_property_readonly("dim", &PolarSpace::dim)
        .def_property_readonly("q", &PolarSpace::q)
        .def_property_readonly("rank", &PolarSpace::rank)
        .def_property_readonly("theta", &PolarSpace::theta)
        .def("__len__", &PolarSpace::size)
        .def("point", &coords_of, py::arg("i"), "coordinates of point i as field-element codes")
        .def(
            "index_of",
            [](const PolarSpace& s, const std::vector<std::uint32_t>& v) { return s.index_of(vec_of(v)); },
            py::arg("coords"))
        .def("collinear", &PolarSpace::collinear)
        .def("__repr__", [](const PolarSpace& s) {
            return "Space(" + std::string(short_name(s.kind())) + ", d=" + std::to_string(s.dim()) +
                   ", q=" + std::to_string(s.q()) + ", points=" + std::to_string(s.size()) + ")";
        });

    py::class_<PointSet>(m, "PointSet")
        .def(py::init(&PointSet::from_unsorted), py::arg("space"), py::arg("indices"))
        .def_static("all", &PointSet::all)
        .def_property_readonly("space", &PointSet::space)
        .def_property_readonly("indices", &PointSet::members)
        .def("__len__", &PointSet::size)
        .def("__contains__", &PointSet::contains)
        .def("complement", &PointSet::complement)
        .def("intersect", &PointSet::intersect)
        .def("to_json", [](const PointSet& p) { return to_json(p); })
        .def(py::self == py::self);

    py::class_<IntriguingReport>(m, "Report")
        .def_readonly("is_intriguing", &IntriguingReport::is_intriguing)
        .def_readonly("size", &IntriguingReport::size)
        .def_readonly("h1", &IntriguingReport::h1)
        .def_readonly("h2", &IntriguingReport::h2)
        .def_readonly("tight_i", &IntriguingReport::tight_i)
        .def_readonly("ovoid_m", &IntriguingReport::ovoid_m)
        .def("to_json", [](const IntriguingReport& r) { return to_json(r); })
        .def("__repr__", [](const IntriguingReport& r) { return "Report(" + to_json(r) + ")"; });

    m.def("classify", &classify, py::arg("points"), py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("maximal_ts_points", &maximal_ts_points, py::arg("space"));

    py::class_<OrbitPartition>(m, "OrbitPartition")
        .def_readonly("space", &OrbitPartition::space)
        .def_readonly("orbit_id", &OrbitPartition::orbit_id)
        .def_readonly("representatives", &OrbitPartition::representatives)
        .def_readonly("sizes", &OrbitPartition::orbit_sizes)
        .def("sorted_sizes", &OrbitPartition::sorted_sizes)
        .def("orbits", &orbit_list)
        .def("__len__", &OrbitPartition::num_orbits);

    m.def(
        "orbits",
        [](const SpacePtr& space, const std::string& generators_json, unsigned threads) {
            const auto g = parse_generators(generators_json);
            py::gil_scoped_release release;
            return orbits(space, g.generators, {threads});
        },
        py::arg("space"), py::arg("generators_json"), py::arg("threads") = 0,
        "Point orbits of the group generated by a generator file's contents.");
    m.def(
        "classical_generators",
        [](const std::string& family, std::size_t d, std::uint32_t q) {
            const auto f = parse_family(family);
            if (!f) throw InvalidArgument("unknown group family " + family);
            return generators_to_json(classical_generators(*f, d, FiniteField::of_order(q)).generators);
        },
        py::arg("family"), py::arg("d"), py::arg("q"));
    m.def(
        "sl2_5_generators", [](bool ovoids) {
            return generators_to_json(sl2_5_in_sl2_9(ovoids ? Sl25Class::Ovoids : Sl25Class::TightSets));
        },
        py::arg("ovoids") = false);

    m.def(
        "adjoint_sl3", [](std::uint32_t q, unsigned threads) { return adjoint_sl3(q, {threads}).orbits; },
        py::arg("q"), py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def(
        "extsq_sp6", [](std::uint32_t q, unsigned threads) { return extsq_sp6(q, {threads}).orbits; },
        py::arg("q"), py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def(
        "dlength_partition",
        [](const std::string& kind, std::uint32_t q, std::size_t t) {
            const auto dp = dlength_partition(kind_arg(kind), q, t);
            std::map<std::size_t, PointSet> out;
            for (std::size_t k = 0; k < dp.lengths.size(); ++k) out.emplace(dp.lengths[k], dp.classes[k]);
            return out;
        },
        py::arg("kind"), py::arg("q"), py::arg("t"), "Points of the space grouped by D-length.");
    m.def("perp_residual", [](const SpacePtr& space, const std::vector<std::vector<std::uint32_t>>& basis) {
        std::vector<Vec> rows;
        for (const auto& r : basis) rows.push_back(vec_of(r));
        return perp_residual(space, Subspace::span(space->field(), space->dim(), rows));
    }, py::arg("space"), py::arg("basis"));

    py::class_<FieldReduction, std::shared_ptr<FieldReduction>>(m, "FieldReduction")
        .def(py::init([](int row, const std::string& kind, std::size_t d, std::uint32_t q_large, std::uint32_t q_small) {
                 return std::const_pointer_cast<FieldReduction>(reduce(
                     row, Form::standard(kind_arg(kind), d, FiniteField::of_order(q_large)), FiniteField::of_order(q_small)));
             }),
             py::arg("row"), py::arg("kind"), py::arg("d"), py::arg("q_large"), py::arg("q_small"))
        .def_property_readonly("row", &FieldReduction::row)
        .def_property_readonly("b", &FieldReduction::b)
        .def_property_readonly("small_space", &FieldReduction::small_space)
        .def_property_readonly("large_space", &FieldReduction::large_space)
        .def("blow_up", [](const FieldReduction& fr) { return blow_up(fr); })
        .def("push_down", [](const FieldReduction& fr, const PointSet& o) { return push_down(fr, o); })
        .def("lift_up", [](const FieldReduction& fr, const PointSet& o) { return lift_up(fr, o); });

    m.def("zsigmondy", &zsigmondy, py::arg("n"), py::arg("k"));
    m.def(
        "feasibility",
        [](const std::string& kind, std::size_t d, std::uint32_t q, std::uint64_t group_order) {
            const auto r = feasibility({kind_arg(kind), d, q, group_order});
            py::dict out;
            out["dim_bound"] = r.dim_bound;
            out["max_dim"] = r.max_dim;
            out["dim_ok"] = r.dim_ok;
            out["feasible_i"] = r.feasible_i;
            out["divisibility_ok"] = r.divisibility_ok;
            return out;
        },
        py::arg("kind"), py::arg("d"), py::arg("q"), py::arg("group_order"));

    m.def(
        "verify",
        [](const std::string& selector, unsigned threads) {
            const auto targets = select_targets(builtin_manifest(), selector);
            std::vector<RunReport> reports;
            {
                py::gil_scoped_release release;
                reports = run_targets(targets, {threads, false, false});
            }
            py::list out;
            for (const auto& r : reports) {
                py::dict d;
                d["id"] = r.id;
                d["match"] = r.match;
                d["computed"] = r.computed;
                d["expected"] = r.expected;
                out.append(d);
            }
            return out;
        },
        py::arg("selector") = "fast", py::arg("threads") = 0);
}
