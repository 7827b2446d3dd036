#ifndef HZREACH_JSON_IO_HPP_
#define HZREACH_JSON_IO_HPP_

#include <string>

#include <json.hpp>

#include "hzreach/hybrid_zonotope.hpp"

namespace hzreach {

using Json = nlohmann::ordered_json;

/// Canonical serialization: keys "Gc","Gb","c","Ac","Ab","b" as nested
/// row-major arrays plus explicit "n","ng","nb","nc" so empty blocks ([])
/// keep their dimensions.
Json hz_to_json(const HybridZonotope& Z);
HybridZonotope hz_from_json(const Json& j);

Json box_to_json(const Box& B);
Box box_from_json(const Json& j);

Json matrix_to_json(const Mat& M);
Mat matrix_from_json(const Json& j, Index rows, Index cols);
Json vector_to_json(const Vec& v);
Vec vector_from_json(const Json& j);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace hzreach

#endif  // HZREACH_JSON_IO_HPP_
