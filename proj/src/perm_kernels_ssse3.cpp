#include "braidforge/perm_kernels.hpp"

#include <tmmintrin.h>

namespace braidforge::kernels {

namespace {

inline __m128i load(const std::uint8_t* p) { return _mm_loadu_si128(reinterpret_cast<const __m128i*>(p)); }
inline void store(std::uint8_t* p, __m128i v) { _mm_storeu_si128(reinterpret_cast<__m128i*>(p), v); }

inline __m128i lane_index() { return _mm_setr_epi8(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15); }

void compose_ssse3(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) {
  store(out, _mm_shuffle_epi8(load(a), load(b)));
}

void invert_ssse3(const std::uint8_t* a, std::uint8_t* out) {
  const __m128i va = load(a);
  alignas(16) std::uint8_t tmp[kMaxPoints];
  for (int q = 0; q < kMaxPoints; ++q) {
    auto hits = static_cast<unsigned>(_mm_movemask_epi8(_mm_cmpeq_epi8(va, _mm_set1_epi8(static_cast<char>(q)))));
    tmp[q] = static_cast<std::uint8_t>(__builtin_ctz(hits | 0x10000u));
  }
  store(out, load(tmp));
}

std::uint32_t descent_mask_ssse3(const std::uint8_t* a, int n) {
  if (n < 2) return 0;
  const __m128i va = load(a);
  const __m128i next = _mm_srli_si128(va, 1);
  auto m = static_cast<std::uint32_t>(_mm_movemask_epi8(_mm_cmpgt_epi8(va, next)));
  return m & ((1u << (n - 1)) - 1u);
}

void flip_ssse3(const std::uint8_t* a, int n, std::uint8_t* out) {
  const __m128i lanes = lane_index();
  const __m128i vn = _mm_set1_epi8(static_cast<char>(n));
  const __m128i active = _mm_cmpgt_epi8(vn, lanes);  // p < n
  const __m128i top = _mm_set1_epi8(static_cast<char>(n - 1));
  // gather index n-1-p inside the active lanes, zeroing (0x80) elsewhere
  const __m128i idx = _mm_or_si128(_mm_and_si128(active, _mm_sub_epi8(top, lanes)),
                                   _mm_andnot_si128(active, _mm_set1_epi8(static_cast<char>(0x80))));
  const __m128i flipped = _mm_sub_epi8(top, _mm_shuffle_epi8(load(a), idx));
  store(out, _mm_or_si128(_mm_and_si128(active, flipped), _mm_andnot_si128(active, lanes)));
}

}  // namespace

const PermKernels* ssse3_kernels_impl() {
  static const PermKernels k{compose_ssse3, invert_ssse3, descent_mask_ssse3, flip_ssse3, "ssse3"};
  return &k;
}

}  // namespace braidforge::kernels
