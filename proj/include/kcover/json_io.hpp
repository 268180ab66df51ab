#pragma once

#include <string>

#include <json.hpp>

#include "kcover/circuit.hpp"
#include "kcover/covering.hpp"
#include "kcover/matrix.hpp"

namespace kcover {

/// Embedded as "schema" in every JSON artifact and printed by --version.
inline constexpr const char* kSchemaVersion = "1";

using Json = nlohmann::ordered_json;

Json to_json(const BoolMatrix& m);
BoolMatrix matrix_from_json(const Json& j);

/// Rectangles are written in canonical (sorted) order.
Json to_json(const Covering& cover);
Covering covering_from_json(const Json& j);

Json to_json(const Depth2Circuit& c);
Depth2Circuit circuit_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string dump(const Json& j);

}  // namespace kcover
