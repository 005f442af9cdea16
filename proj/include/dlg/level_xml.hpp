#pragma once

#include <string>

#include "dlg/config.hpp"
#include "dlg/model.hpp"

namespace dlg {

// Raised on malformed markup; message carries line:column.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses a level document. Unknown elements and attributes are hard errors.
// The config supplies the health table for dynamic objects. With
// strict=false the playability invariants (slingshot, birds, >=1 pig) are
// waived; that mode backs entity fragments in the repository.
Level parse_level(const std::string& text, const Config& cfg,
                  bool strict = true);

// Deterministic inverse of parse_level: objects sorted by id, floats printed
// with fixed precision, so equal levels serialize byte-identically.
std::string serialize_level(const Level& level);

}  // namespace dlg
