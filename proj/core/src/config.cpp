#include "gradedvb/config.hpp"

#include <cstdlib>
#include <string>

#include "gradedvb/errors.hpp"

namespace gvb {

namespace {
constexpr int kDefaultMaxN = 8;
constexpr int kHardMaxN = 30;  // subsets are stored as 32-bit masks
}  // namespace

int max_n() {
  const char* env = std::getenv("GRADEDVB_MAX_N");
  if (env == nullptr || *env == '\0') return kDefaultMaxN;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > kHardMaxN) {
    throw DomainError("GRADEDVB_MAX_N must be an integer in [1, " +
                      std::to_string(kHardMaxN) + "], got '" + env + "'");
  }
  return static_cast<int>(v);
}

void check_n(int n) {
  if (n < 1) throw DomainError("n must be positive, got " + std::to_string(n));
  int cap = max_n();
  if (n > cap) {
    throw CapExceeded("n = " + std::to_string(n) + " exceeds the cap " +
                      std::to_string(cap) + " (set GRADEDVB_MAX_N to raise it)");
  }
}

}  // namespace gvb
