#pragma once

#include <cstdlib>
#include <string>

#include "acp/arith.hpp"

namespace acp {

// Bytes allowed for dense tables; ACP_MEMORY_BUDGET_MB overrides the default.
inline u64 memory_budget_bytes() {
  if (const char* env = std::getenv("ACP_MEMORY_BUDGET_MB")) {
    char* end = nullptr;
    unsigned long long mb = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<u64>(mb) << 20;
  }
  return u64{2048} << 20;
}

inline void check_budget(u64 bytes, const std::string& what) {
  if (bytes > memory_budget_bytes())
    fail(ErrorKind::MemoryBudgetExceeded, what + " needs " + std::to_string(bytes >> 20) + " MiB");
}

}  // namespace acp
