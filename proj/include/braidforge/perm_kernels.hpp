#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace braidforge::kernels {

// Permutations of up to 16 points packed one byte per point. Entries past the
// active strand count hold the identity so that full-width kernels never need
// to know n.
inline constexpr int kMaxPoints = 16;
using Perm16 = std::array<std::uint8_t, kMaxPoints>;

struct PermKernels {
  // out[p] = a[b[p]]
  void (*compose)(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out);
  // out[a[p]] = p
  void (*invert)(const std::uint8_t* a, std::uint8_t* out);
  // bit i-1 set when a[i-1] > a[i], for 1 <= i < n
  std::uint32_t (*descent_mask)(const std::uint8_t* a, int n);
  // out[p] = n-1-a[n-1-p] for p < n, identity above
  void (*flip)(const std::uint8_t* a, int n, std::uint8_t* out);
  const char* name;
};

const PermKernels& scalar_kernels();
// Null when the translation unit is absent or the CPU lacks SSSE3.
const PermKernels* ssse3_kernels();

// Best kernels for the running CPU. BRAIDFORGE_KERNELS=scalar forces the
// reference path.
const PermKernels& active_kernels();

Perm16 identity_perm();

}  // namespace braidforge::kernels
