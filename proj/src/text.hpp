#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nhier::text {

struct Tokenized {
  std::size_t line;
  std::vector<std::pair<std::string, std::size_t>> tokens;  // token, column
};

/// Whitespace-separated tokens per non-empty line; `#` starts a comment.
std::vector<Tokenized> tokenize(std::string_view text);

/// Non-negative integer token `i` below `bound`, else ParseError at its column.
std::size_t parse_index(const Tokenized& t, std::size_t i, std::size_t bound, const char* what);

std::string read_file(const std::string& path);

}  // namespace nhier::text
