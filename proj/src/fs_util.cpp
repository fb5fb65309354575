#include "icm/fs_util.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "icm/error.hpp"

namespace fs = std::filesystem;

namespace icm {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, std::string_view content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoError, "cannot write " + p.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(Errc::IoError, "short write to " + p.string());
}

fs::path lexical_resolve(const fs::path& base, const std::string& rel) {
  std::string r = rel;
  while (r.size() > 1 && r.back() == '/') r.pop_back();
  fs::path joined = base / fs::path(r);
  fs::path norm = joined.lexically_normal();
  // lexically_normal keeps a trailing slash as a final "." element; drop it.
  if (norm.filename() == ".") norm = norm.parent_path();
  return norm;
}

bool lexically_under(const fs::path& p, const fs::path& base) {
  auto pi = p.begin();
  for (auto bi = base.begin(); bi != base.end(); ++bi, ++pi) {
    if (pi == p.end() || *pi != *bi) return false;
  }
  return true;
}

std::string rel_str(const fs::path& root, const fs::path& p) {
  fs::path rel = p.lexically_relative(root);
  if (rel.empty() || *rel.begin() == "..") return p.generic_string();
  return rel.generic_string();
}

bool has_hidden_component(const fs::path& p, const fs::path& root) {
  fs::path rel = lexically_under(p, root) ? p.lexically_relative(root) : p;
  for (const auto& part : rel) {
    const std::string s = part.string();
    if (s.size() > 1 && s[0] == '.' && s != "..") return true;
  }
  return false;
}

std::vector<fs::path> list_dir_files(const fs::path& dir, bool recursive) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  auto visible = [](const fs::path& p) {
    const std::string name = p.filename().string();
    return name.empty() || name[0] != '.';
  };
  if (recursive) {
    for (fs::recursive_directory_iterator it(dir), end; it != end; ++it) {
      if (!visible(it->path())) {
        if (it->is_directory()) it.disable_recursion_pending();
        continue;
      }
      if (it->is_regular_file()) out.push_back(it->path().lexically_normal());
    }
  } else {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (visible(entry.path()) && entry.is_regular_file())
        out.push_back(entry.path().lexically_normal());
    }
  }
  std::sort(out.begin(), out.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.generic_string() < b.generic_string();
            });
  return out;
}

}  // namespace icm
