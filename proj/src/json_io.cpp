#include "tgtsp/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "tgtsp/errors.hpp"

namespace tgtsp {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw ValidationError("non-finite number in output");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void dump_rec(const ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent < 0 ? "" : std::string(indent * (depth + 1), ' ');
  const std::string pad_close = indent < 0 ? "" : std::string(indent * depth, ' ');
  const char* nl = indent < 0 ? "" : "\n";
  switch (j.type()) {
    case nlohmann::detail::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ',';
          out += nl;
        }
        first = false;
        out += pad;
        append_escaped(out, it.key());
        out += indent < 0 ? ":" : ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += nl;
      out += pad_close;
      out += '}';
      return;
    }
    case nlohmann::detail::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short numeric arrays stay on one line
      bool scalars_only = true;
      for (const auto& e : j)
        if (e.is_structured()) scalars_only = false;
      if (scalars_only || indent < 0) {
        out += '[';
        bool first = true;
        for (const auto& e : j) {
          if (!first) out += indent < 0 ? "," : ", ";
          first = false;
          dump_rec(e, out, -1, 0);
        }
        out += ']';
        return;
      }
      out += '[';
      out += nl;
      bool first = true;
      for (const auto& e : j) {
        if (!first) {
          out += ',';
          out += nl;
        }
        first = false;
        out += pad;
        dump_rec(e, out, indent, depth + 1);
      }
      out += nl;
      out += pad_close;
      out += ']';
      return;
    }
    case nlohmann::detail::value_t::string:
      append_escaped(out, j.get_ref<const std::string&>());
      return;
    case nlohmann::detail::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case nlohmann::detail::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case nlohmann::detail::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case nlohmann::detail::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case nlohmann::detail::value_t::null:
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string dump_json(const ordered_json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  if (indent >= 0) out += '\n';
  return out;
}

ordered_json parse_json(const std::string& text, const std::string& what) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

}  // namespace tgtsp
