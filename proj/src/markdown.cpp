#include "icm/markdown.hpp"

#include <cctype>

namespace icm::md {

std::vector<Line> scan_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t begin = 0;
  std::size_t number = 1;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size()) {
      if (begin < i) lines.push_back({number, begin, i});
      break;
    }
    if (text[i] == '\n') {
      std::size_t end = i;
      if (end > begin && text[end - 1] == '\r') --end;  // CRLF tolerance
      lines.push_back({number, begin, end});
      begin = i + 1;
      ++number;
    }
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

static std::optional<std::pair<int, std::string_view>> parse_heading(
    std::string_view line) {
  std::size_t hashes = 0;
  while (hashes < line.size() && line[hashes] == '#') ++hashes;
  if (hashes == 0 || hashes > 6) return std::nullopt;
  if (hashes >= line.size() || line[hashes] != ' ') return std::nullopt;
  return std::make_pair(static_cast<int>(hashes), trim(line.substr(hashes)));
}

std::vector<Heading> scan_headings(std::string_view text) {
  std::vector<Heading> out;
  for (const Line& l : scan_lines(text)) {
    if (auto h = parse_heading(line_view(text, l))) {
      out.push_back({h->first, std::string(h->second), l.number});
    }
  }
  return out;
}

std::string slug(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : trim(text)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty() && out.back() != '-') out.push_back('-');
    } else {
      out.push_back(static_cast<char>(
          std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

std::optional<std::string> heading_slice(std::string_view text,
                                         std::string_view anchor) {
  const std::string want = slug(anchor);
  const auto lines = scan_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto h = parse_heading(line_view(text, lines[i]));
    if (!h || slug(h->second) != want) continue;
    std::size_t end = text.size();
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto next = parse_heading(line_view(text, lines[j]));
      if (next && next->first <= h->first) {
        end = lines[j].begin;
        break;
      }
    }
    return std::string(text.substr(lines[i].begin, end - lines[i].begin));
  }
  return std::nullopt;
}

std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

}  // namespace icm::md
