#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bb/abstraction.hpp"
#include "bb/formula.hpp"
#include "bb/parser.hpp"
#include "bb/semantics.hpp"

namespace bb {

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

inline bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename PerLine>
void for_each_payload_line(const std::string& text, PerLine&& fn) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string payload = strip_comment(line);
    if (blank(payload)) continue;
    fn(lineno, payload);
  }
}

}  // namespace detail

/// Theory text: one formula per line, '#' comments, blank lines ignored.
inline Theory parse_theory(const std::string& text, const std::string& filename = "") {
  Theory t;
  detail::for_each_payload_line(text, [&](int lineno, const std::string& payload) {
    try {
      t.push_back(parse(payload));
    } catch (const ParseError& e) {
      throw e.with_location(filename, lineno);
    }
  });
  return t;
}

inline Theory load_theory(const std::string& path) {
  return parse_theory(detail::read_file(path), path);
}

/// Definition text: one `head := formula` per line, same comment rules.
inline DefinitionSet parse_definitions(const std::string& text, const std::string& filename = "") {
  std::vector<DefinitionSet::Entry> entries;
  detail::for_each_payload_line(text, [&](int lineno, const std::string& payload) {
    auto sep = payload.find(":=");
    if (sep == std::string::npos)
      throw ParseError(filename, lineno, 1, "expected 'head := formula'");
    std::string head = payload.substr(0, sep);
    head.erase(0, head.find_first_not_of(" \t"));
    head.erase(head.find_last_not_of(" \t") + 1);
    if (!valid_atom_name(head))
      throw ParseError(filename, lineno, 1, "invalid definition head: '" + head + "'");
    try {
      entries.emplace_back(std::move(head), parse(payload.substr(sep + 2)));
    } catch (const ParseError& e) {
      throw e.with_location(filename, lineno);
    }
  });
  return DefinitionSet(std::move(entries));
}

inline DefinitionSet load_definitions(const std::string& path) {
  return parse_definitions(detail::read_file(path), path);
}

/// Fact-base text: one identifier per line, '#' comments, blank lines
/// ignored.
inline FactBase parse_facts(const std::string& text, const std::string& filename = "") {
  std::set<std::string> atoms;
  detail::for_each_payload_line(text, [&](int lineno, const std::string& payload) {
    std::string atom = payload;
    atom.erase(0, atom.find_first_not_of(" \t"));
    atom.erase(atom.find_last_not_of(" \t\r") + 1);
    if (!valid_atom_name(atom))
      throw ParseError(filename, lineno, 1, "expected an identifier, got '" + atom + "'");
    atoms.insert(std::move(atom));
  });
  return FactBase(std::move(atoms));
}

inline FactBase load_facts(const std::string& path) {
  return parse_facts(detail::read_file(path), path);
}

}  // namespace bb
