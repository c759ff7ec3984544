#pragma once

// JSON text for the library's value types.
//
// Field elements are coefficient lists [c_0, ..., c_(f-1)] in the polynomial
// basis (a bare integer code is accepted on input).  Space descriptors are
// {kind, d, q} with the short kind names.

#include <string>
#include <string_view>
#include <vector>

#include "polarkit/fieldred.hpp"
#include "polarkit/intriguing.hpp"

namespace polarkit {

std::string to_json(const SpaceDescriptor& s);
std::string to_json(const Form& form);
std::string to_json(const PointSet& set);
std::string to_json(const IntriguingReport& report);
std::string to_json(const FieldReduction& fr);
/// {space, num_orbits, sizes, orbits:[{representative, size, report}]}; reports
/// are omitted when empty.
std::string to_json(const OrbitPartition& parts, const std::vector<IntriguingReport>& reports = {});
/// {q, d, generators:[{matrix, sigma_power}]}
std::string generators_to_json(const GeneratorSet& gens);

struct GeneratorFile {
    FieldPtr field;
    std::size_t d = 0;
    GeneratorSet generators;
};

/// Throws InvalidArgument on malformed input.
GeneratorFile parse_generators(std::string_view text);
Form parse_form(std::string_view text);
SpaceDescriptor parse_space(std::string_view text);

struct PointSetFile {
    SpaceDescriptor space;
    std::vector<std::uint32_t> indices;
};

PointSetFile parse_point_set(std::string_view text);
/// Checks the descriptor against the space and the indices against its size.
PointSet to_point_set(const PointSetFile& file, const SpacePtr& space);

std::string read_text_file(const std::string& path);

}  // namespace polarkit
