#include <cctype>

#include "folab/cli.hpp"
#include "folab/parse.hpp"

namespace folab {

namespace {

struct Position {
  int line = 1;
  int column = 1;
};

Position position_of(const std::string& text, size_t pos) {
  Position p;
  for (size_t k = 0; k < pos && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void fail_at(const std::string& text, size_t pos, const std::string& msg) {
  const Position p = position_of(text, pos);
  throw ParseError(msg, p.line, p.column);
}

/// Copy of text with everything outside [begin, end) blanked, newlines kept,
/// so that parser positions refer to the whole file.
std::string visible(const std::string& text, size_t begin, size_t end) {
  std::string out = text;
  for (size_t k = 0; k < out.size(); ++k)
    if ((k < begin || k >= end) && out[k] != '\n') out[k] = ' ';
  return out;
}

const std::vector<std::string>& vars_of(InputKind k) {
  switch (k) {
    case InputKind::Omega2: return kVarsUV;
    case InputKind::Omega3: return kVarsXYZ;
    case InputKind::Proj2: return kVarsP2;
    case InputKind::Proj3: return kVarsP3;
  }
  return kVarsUV;
}

std::optional<InputKind> form_header(const std::string& word) {
  if (word == "omega2") return InputKind::Omega2;
  if (word == "omega3") return InputKind::Omega3;
  if (word == "proj2") return InputKind::Proj2;
  if (word == "proj3") return InputKind::Proj3;
  return std::nullopt;
}

bool block_header(const std::string& word) { return word == "divisor" || word == "separatrix" || word == "script"; }

/// Header word at the start of the line beginning at pos, with the offset of
/// its ':'; nullopt for other lines.
std::optional<std::pair<std::string, size_t>> header_at(const std::string& text, size_t pos) {
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
  size_t e = pos;
  while (e < text.size() && std::isalnum(static_cast<unsigned char>(text[e]))) ++e;
  const std::string word = text.substr(pos, e - pos);
  size_t c = e;
  while (c < text.size() && (text[c] == ' ' || text[c] == '\t')) ++c;
  if (c >= text.size() || text[c] != ':') return std::nullopt;
  if (!form_header(word) && !block_header(word)) return std::nullopt;
  return std::make_pair(word, c);
}

size_t line_end(const std::string& text, size_t pos) {
  const size_t e = text.find('\n', pos);
  return e == std::string::npos ? text.size() : e;
}

}  // namespace

const char* to_string(InputKind k) {
  switch (k) {
    case InputKind::Omega2: return "omega2";
    case InputKind::Omega3: return "omega3";
    case InputKind::Proj2: return "proj2";
    case InputKind::Proj3: return "proj3";
  }
  return "?";
}

FieldDescriptor ParsedInput::field() const {
  FieldDescriptor d;
  if (omega2) d = omega2->descriptor();
  if (omega3) d = omega3->descriptor();
  if (proj)
    for (const auto& c : proj->coeffs) d = FieldDescriptor::join(d, c.descriptor());
  for (const auto& f : divisor) d = FieldDescriptor::join(d, f.descriptor());
  for (const auto& f : separatrix) d = FieldDescriptor::join(d, f.descriptor());
  return d;
}

ScriptCenter parse_script_center(const std::string& text) {
  ScriptCenter c;
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t k = text.find(':', start);
    parts.push_back(text.substr(start, k == std::string::npos ? std::string::npos : k - start));
    if (k == std::string::npos) break;
    start = k + 1;
  }
  for (auto& p : parts) {
    while (!p.empty() && std::isspace(static_cast<unsigned char>(p.back()))) p.pop_back();
    while (!p.empty() && std::isspace(static_cast<unsigned char>(p.front()))) p.erase(p.begin());
  }
  const bool point = parts.size() == 2 && parts[1] == "point";
  const bool axis = parts.size() == 3 && parts[1] == "axis" && parts[2].size() == 1 &&
                    std::string("xyz").find(parts[2][0]) != std::string::npos;
  if (!point && !axis) throw DomainError("script entry must be <path>:point or <path>:axis:<x|y|z>: '" + text + "'");
  if (axis) c.axis = static_cast<int>(std::string("xyz").find(parts[2][0]));
  if (parts[0] != "origin") {
    size_t s = 0;
    while (true) {
      const size_t k = parts[0].find('>', s);
      const std::string label = parts[0].substr(s, k == std::string::npos ? std::string::npos : k - s);
      if (label.empty()) throw DomainError("empty chart label in script entry '" + text + "'");
      c.chart.push_back(label);
      if (k == std::string::npos) break;
      s = k + 1;
    }
  }
  return c;
}

ParsedInput parse_form(const std::string& raw) {
  // Comments run from '#' to the end of the line.
  std::string text = raw;
  for (size_t k = 0; k < text.size(); ++k)
    if (text[k] == '#')
      while (k < text.size() && text[k] != '\n') text[k++] = ' ';

  struct Section {
    std::string word;
    size_t header, body_begin, body_end;
  };
  std::vector<Section> sections;
  for (size_t pos = 0; pos <= text.size();) {
    const size_t e = line_end(text, pos);
    if (auto h = header_at(text, pos)) {
      if (!sections.empty()) sections.back().body_end = pos;
      sections.push_back({h->first, pos, h->second + 1, text.size()});
    } else {
      size_t first = pos;
      while (first < e && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
      if (first < e && sections.empty())
        fail_at(text, first, "expected a header (omega2:, omega3:, proj2:, proj3:)");
    }
    pos = e + 1;
  }

  ParsedInput in;
  const Section* form = nullptr;
  for (const auto& s : sections) {
    if (!form_header(s.word)) continue;
    if (form) fail_at(text, s.header, "only one form per file");
    form = &s;
  }
  if (!form) fail_at(text, text.size(), "missing form (omega2:, omega3:, proj2: or proj3:)");
  in.kind = *form_header(form->word);
  const auto& vars = vars_of(in.kind);
  const auto coeffs = parse_differential(visible(text, form->body_begin, form->body_end), vars);
  switch (in.kind) {
    case InputKind::Omega2: in.omega2 = OneForm2(coeffs[0], coeffs[1]); break;
    case InputKind::Omega3: in.omega3 = OneForm3(coeffs[0], coeffs[1], coeffs[2]); break;
    default: in.proj = ProjFoliation::make(coeffs); break;
  }

  for (const auto& s : sections) {
    if (!block_header(s.word)) continue;
    const char open = s.word == "script" ? '[' : '{';
    const char close = s.word == "script" ? ']' : '}';
    size_t b = s.body_begin;
    while (b < s.body_end && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    if (b >= s.body_end || text[b] != open) fail_at(text, b, std::string("expected '") + open + "'");
    const size_t c = text.find(close, b);
    if (c == std::string::npos || c >= s.body_end) fail_at(text, b, std::string("unclosed '") + open + "'");
    for (size_t k = c + 1; k < s.body_end; ++k)
      if (!std::isspace(static_cast<unsigned char>(text[k]))) fail_at(text, k, "unexpected text after block");
    size_t item = b + 1;
    for (size_t k = b + 1; k <= c; ++k) {
      if (k < c && text[k] != ';' && text[k] != ',') continue;
      size_t first = item;
      while (first < k && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
      if (first < k) {
        if (s.word == "script") {
          try {
            in.script.push_back(parse_script_center(text.substr(first, k - first)));
          } catch (const DomainError& e) {
            fail_at(text, first, e.what());
          }
        } else {
          MPoly f = parse_poly(visible(text, first, k), vars);
          (s.word == "divisor" ? in.divisor : in.separatrix).push_back(std::move(f));
        }
      }
      item = k + 1;
    }
  }
  return in;
}

}  // namespace folab
