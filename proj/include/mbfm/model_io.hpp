#pragma once

#include "mbfm/model.hpp"

#include <string>

namespace mbfm {

// Parses the documented threat-model JSON (see data/schemas/threatmodel.schema.json).
// Strict: unknown or missing fields raise SchemaError with the field path;
// malformed JSON raises SyntaxError with the byte offset. Array order is
// preserved, so serialize_model(parse_model(x)) round-trips.
ThreatModel parse_model(const std::string& raw);

// Canonical form: object keys sorted, arrays in stored order, 2-space
// indent, trailing newline. Byte-identical across runs for equal models.
std::string serialize_model(const ThreatModel& model);

} // namespace mbfm
