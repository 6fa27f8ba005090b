#include "braidforge/perm_kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace braidforge::kernels {

#if defined(BRAIDFORGE_HAVE_SSSE3_TU)
const PermKernels* ssse3_kernels_impl();
#endif

const PermKernels* ssse3_kernels() {
#if defined(BRAIDFORGE_HAVE_SSSE3_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("ssse3");
  return supported ? ssse3_kernels_impl() : nullptr;
#else
  return nullptr;
#endif
}

const PermKernels& active_kernels() {
  static const PermKernels& chosen = [] () -> const PermKernels& {
    const char* forced = std::getenv("BRAIDFORGE_KERNELS");
    if (forced && std::strcmp(forced, "scalar") == 0) return scalar_kernels();
    if (const PermKernels* k = ssse3_kernels()) return *k;
    return scalar_kernels();
  }();
  return chosen;
}

Perm16 identity_perm() {
  Perm16 p{};
  for (int i = 0; i < kMaxPoints; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return p;
}

}  // namespace braidforge::kernels
