#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace icm {

// Content digest. The algorithm is fixed: sha-256 over exact file bytes,
// rendered as 64 lowercase hex characters.
struct Digest {
  std::string hex;

  bool operator==(const Digest&) const = default;
};

inline constexpr const char* kDigestAlgorithm = "sha-256";

Digest sha256(std::string_view bytes);
Digest sha256_file(const std::filesystem::path& p);

}  // namespace icm
