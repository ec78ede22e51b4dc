#include "connsys/limits.hpp"

#include <cstdlib>
#include <string>

namespace connsys::limits {

std::size_t effective(std::size_t default_gate) {
  const char* env = std::getenv("CONNSYS_MAX_N");
  if (env == nullptr || *env == '\0') return default_gate;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return default_gate;
  return static_cast<std::size_t>(v) < kMaxGroundSize ? static_cast<std::size_t>(v) : kMaxGroundSize;
}

void require(std::size_t n, std::size_t default_gate, ErrorCode code, std::string_view what) {
  const std::size_t gate = effective(default_gate);
  if (n > gate) {
    throw Error(code, std::string(what) + " supports at most " + std::to_string(gate) +
                          " ground elements (got " + std::to_string(n) + "); set CONNSYS_MAX_N to override");
  }
}

}  // namespace connsys::limits
