#include "icm/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "icm/error.hpp"
#include "icm/fs_util.hpp"

namespace icm {

Digest sha256(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> raw{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), raw.data(), &len, EVP_sha256(),
                 nullptr) != 1) {
    fail(Errc::IoError, "sha-256 computation failed");
  }
  std::string hex(static_cast<size_t>(len) * 2, '\0');
  static const char* digits = "0123456789abcdef";
  for (unsigned int i = 0; i < len; ++i) {
    hex[2 * i] = digits[raw[i] >> 4];
    hex[2 * i + 1] = digits[raw[i] & 0xf];
  }
  return Digest{hex};
}

Digest sha256_file(const std::filesystem::path& p) {
  return sha256(read_file(p));
}

}  // namespace icm
