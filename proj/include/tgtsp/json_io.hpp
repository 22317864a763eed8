#ifndef TGTSP_JSON_IO_HPP
#define TGTSP_JSON_IO_HPP

#include <string>

#include <json.hpp>

namespace tgtsp {

using ordered_json = nlohmann::ordered_json;

/// Deterministic JSON writer. Key order is the insertion order of the tree,
/// doubles are emitted with 17 significant digits so parsing recovers them
/// bit-exactly. indent < 0 emits a single line.
std::string dump_json(const ordered_json& j, int indent = 2);

/// Parse with position-reporting errors (throws ParseError).
ordered_json parse_json(const std::string& text, const std::string& what);

/// Format one double the same way dump_json does.
std::string format_double(double v);

}  // namespace tgtsp

#endif  // TGTSP_JSON_IO_HPP
