#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace icm::md {

// A physical line: [begin, end) excludes the terminator. `number` is 1-based.
struct Line {
  std::size_t number;
  std::size_t begin;
  std::size_t end;
};

std::vector<Line> scan_lines(std::string_view text);

inline std::string_view line_view(std::string_view text, const Line& l) {
  return text.substr(l.begin, l.end - l.begin);
}

struct Heading {
  int level;         // 1..6
  std::string text;  // trimmed heading text
  std::size_t line;  // 1-based
};

// ATX headings only: 1-6 '#' followed by at least one space.
std::vector<Heading> scan_headings(std::string_view text);

// Anchor form of a heading: lowercase, spaces collapsed to '-'.
std::string slug(std::string_view text);

// The byte range of the section starting at the first heading whose slug
// matches `anchor`, running to the line before the next heading of equal or
// higher level. Includes the heading line itself.
std::optional<std::string> heading_slice(std::string_view text,
                                         std::string_view anchor);

std::string_view trim(std::string_view s);

std::size_t count_words(std::string_view text);

}  // namespace icm::md
