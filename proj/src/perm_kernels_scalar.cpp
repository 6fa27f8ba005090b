#include "braidforge/perm_kernels.hpp"

namespace braidforge::kernels {

namespace {

void compose_scalar(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) {
  for (int p = 0; p < kMaxPoints; ++p) out[p] = a[b[p]];
}

void invert_scalar(const std::uint8_t* a, std::uint8_t* out) {
  for (int p = 0; p < kMaxPoints; ++p) out[a[p]] = static_cast<std::uint8_t>(p);
}

std::uint32_t descent_mask_scalar(const std::uint8_t* a, int n) {
  std::uint32_t m = 0;
  for (int i = 1; i < n; ++i) {
    if (a[i - 1] > a[i]) m |= 1u << (i - 1);
  }
  return m;
}

void flip_scalar(const std::uint8_t* a, int n, std::uint8_t* out) {
  for (int p = 0; p < kMaxPoints; ++p) {
    out[p] = p < n ? static_cast<std::uint8_t>(n - 1 - a[n - 1 - p]) : static_cast<std::uint8_t>(p);
  }
}

}  // namespace

const PermKernels& scalar_kernels() {
  static const PermKernels k{compose_scalar, invert_scalar, descent_mask_scalar, flip_scalar, "scalar"};
  return k;
}

}  // namespace braidforge::kernels
