#pragma once

// Map description files:
//
//   # comment
//   name doubling
//   bp 0 0
//   bp 1 2
//
// One `bp <x> <y>` line per breakpoint, x increasing from 0 to 1, rationals
// written p/q or as integers. The optional `name` line may appear once.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cdyn/errors.hpp"
#include "cdyn/lifting.hpp"
#include "cdyn/rational.hpp"

namespace cdyn {

struct MapFile {
  std::string name;
  PLLifting lifting = PLLifting::identity();

  friend bool operator==(const MapFile& a, const MapFile& b) {
    return a.name == b.name && a.lifting == b.lifting;
  }
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

}  // namespace detail

inline MapFile parse_map(std::string_view text) {
  MapFile out;
  std::vector<Breakpoint> bps;
  bool named = false;
  std::size_t lineno = 0, last_bp_line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    pos = nl + 1;
    auto tok = detail::tokenize(line);
    if (tok.empty()) continue;
    if (tok[0].text == "name") {
      if (named) throw ParseError(lineno, tok[0].column, "duplicate name line");
      if (tok.size() != 2) throw ParseError(lineno, tok[0].column, "expected: name <identifier>");
      out.name = std::string(tok[1].text);
      named = true;
    } else if (tok[0].text == "bp") {
      if (tok.size() != 3) {
        std::size_t col = tok.size() > 3 ? tok[3].column : line.size() + 1;
        throw ParseError(lineno, col, "expected: bp <x> <y>");
      }
      Rational x, y;
      try {
        x = parse_rational(tok[1].text);
      } catch (const Error&) {
        throw ParseError(lineno, tok[1].column, "bad rational '" + std::string(tok[1].text) + "'");
      }
      try {
        y = parse_rational(tok[2].text);
      } catch (const Error&) {
        throw ParseError(lineno, tok[2].column, "bad rational '" + std::string(tok[2].text) + "'");
      }
      if (!bps.empty() && !(bps.back().x < x))
        throw ParseError(lineno, tok[1].column, "x values must be strictly increasing");
      if (bps.empty() && x != 0) throw ParseError(lineno, tok[1].column, "first breakpoint must have x = 0");
      bps.push_back({x, y});
      last_bp_line = lineno;
    } else {
      throw ParseError(lineno, tok[0].column, "unknown directive '" + std::string(tok[0].text) + "'");
    }
  }
  if (bps.size() < 2) throw ParseError(lineno, 1, "need at least two breakpoints");
  if (bps.back().x != 1) throw ParseError(last_bp_line, 1, "last breakpoint must have x = 1");
  if (!is_integer(bps.back().y - bps.front().y))
    throw ParseError(last_bp_line, 1, "degree y(1) - y(0) is not an integer");
  out.lifting = PLLifting(std::move(bps));
  return out;
}

inline std::string serialize_map(const MapFile& m) {
  std::ostringstream os;
  if (!m.name.empty()) os << "name " << m.name << "\n";
  for (const auto& b : m.lifting.breakpoints()) os << "bp " << to_string(b.x) << " " << to_string(b.y) << "\n";
  return os.str();
}

inline MapFile load_map(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_map(ss.str());
}

/// Cover files: one element per line, `element <start> <length> [<start> <length> ...]`.
inline std::vector<std::vector<std::pair<Rational, Rational>>> parse_cover_arcs(std::string_view text) {
  std::vector<std::vector<std::pair<Rational, Rational>>> out;
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++lineno;
    pos = nl + 1;
    auto tok = detail::tokenize(line);
    if (tok.empty()) continue;
    if (tok[0].text != "element") throw ParseError(lineno, tok[0].column, "expected: element <start> <length> ...");
    if (tok.size() < 3 || tok.size() % 2 == 0)
      throw ParseError(lineno, tok[0].column, "element needs start/length pairs");
    std::vector<std::pair<Rational, Rational>> el;
    for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
      Rational s, l;
      try {
        s = parse_rational(tok[k].text);
        l = parse_rational(tok[k + 1].text);
      } catch (const Error&) {
        throw ParseError(lineno, tok[k].column, "bad rational");
      }
      el.emplace_back(s, l);
    }
    out.push_back(std::move(el));
  }
  return out;
}

}  // namespace cdyn
