#pragma once

#include <stdexcept>
#include <string>

#include "chordex/body.hpp"

namespace chordex {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse a body description document (see README for the schema).
Body body_from_json(const std::string& text, Tolerance tol = {});

/// Load a body description file.
Body load_body(const std::string& path, Tolerance tol = {});

/// Serialize a body back to its JSON description.
std::string body_to_json(const Body& body);

}  // namespace chordex
