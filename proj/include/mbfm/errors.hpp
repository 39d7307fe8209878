#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbfm {

// Base for all library exceptions; diagnostics from validators are values,
// never thrown (see model.hpp / linking.hpp).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input that fails before any schema logic runs.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t byte_offset, std::size_t line = 0)
        : Error(msg), byte_offset(byte_offset), line(line) {}

    std::size_t byte_offset;
    std::size_t line; // 1-based; 0 when the input is not line-oriented
};

// Structurally valid input that violates the documented schema.
class SchemaError : public Error {
public:
    SchemaError(const std::string& msg, std::string field_path, std::size_t line = 0)
        : Error(msg), field_path(std::move(field_path)), line(line) {}

    std::string field_path;
    std::size_t line;
};

// Catalog invariant violation while loading taxonomy data.
class CatalogError : public Error {
public:
    CatalogError(const std::string& msg, std::string offending_id)
        : Error(msg), offending_id(std::move(offending_id)) {}

    std::string offending_id;
};

// Tag that resolves in neither the SWC nor the SCSVS catalog.
class UnknownTag : public Error {
public:
    UnknownTag(const std::string& msg, std::string tag, std::vector<std::string> nearest)
        : Error(msg), tag(std::move(tag)), nearest(std::move(nearest)) {}

    std::string tag;
    std::vector<std::string> nearest; // up to 3 closest catalog IDs by edit distance
};

// Operation requires a model free of validation errors.
class InvalidModel : public Error {
public:
    using Error::Error;
};

// Simulator configuration violates its invariants.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Operation received an empty input where at least one record is required.
class EmptyInput : public Error {
public:
    using Error::Error;
};

} // namespace mbfm
