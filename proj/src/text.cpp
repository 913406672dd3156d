#include "text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nhier/automaton.hpp"

namespace nhier::text {

std::vector<Tokenized> tokenize(std::string_view text) {
  std::vector<Tokenized> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Tokenized t{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t s = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > s) t.tokens.emplace_back(std::string(line.substr(s, i - s)), s + 1);
    }
    if (!t.tokens.empty()) out.push_back(std::move(t));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::size_t parse_index(const Tokenized& t, std::size_t i, std::size_t bound, const char* what) {
  const auto& [tok, col] = t.tokens.at(i);
  std::size_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoul(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty() || tok[0] == '-')
    throw ParseError(t.line, col, std::string("expected ") + what + ", got '" + tok + "'");
  if (value >= bound) throw ParseError(t.line, col, std::string("unknown ") + what + " " + tok);
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace nhier::text
