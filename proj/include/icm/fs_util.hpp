#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace icm {

std::string read_file(const std::filesystem::path& p);

// Writes bytes, creating parent directories as needed.
void write_file(const std::filesystem::path& p, std::string_view content);

// Resolves `rel` against `base` and normalizes lexically. Never touches the
// filesystem; trailing separators are dropped.
std::filesystem::path lexical_resolve(const std::filesystem::path& base,
                                      const std::string& rel);

// True when `p` equals `base` or lies below it, compared lexically.
bool lexically_under(const std::filesystem::path& p,
                     const std::filesystem::path& base);

// Workspace-relative path with '/' separators, or the full path when `p` is
// not under `root`.
std::string rel_str(const std::filesystem::path& root,
                    const std::filesystem::path& p);

// True when any component of `p` starts with '.' (".icm", ".git", dotfiles).
bool has_hidden_component(const std::filesystem::path& p,
                          const std::filesystem::path& root);

// Regular files under `dir`, sorted by path. `recursive` descends into
// subdirectories; hidden entries are skipped either way.
std::vector<std::filesystem::path> list_dir_files(
    const std::filesystem::path& dir, bool recursive);

}  // namespace icm
