#include <algorithm>
#include <numeric>
#include <random>

#include "braidforge/perm_kernels.hpp"
#include "doctest.h"

using namespace braidforge::kernels;

namespace {

Perm16 random_perm(std::mt19937_64& rng, int n) {
  Perm16 p = identity_perm();
  std::shuffle(p.begin(), p.begin() + n, rng);
  return p;
}

// Straightforward definitions, independent of both kernel sets.
Perm16 ref_compose(const Perm16& a, const Perm16& b) {
  Perm16 o{};
  for (int p = 0; p < kMaxPoints; ++p) o[static_cast<std::size_t>(p)] = a[b[static_cast<std::size_t>(p)]];
  return o;
}
Perm16 ref_invert(const Perm16& a) {
  Perm16 o{};
  for (int p = 0; p < kMaxPoints; ++p) o[a[static_cast<std::size_t>(p)]] = static_cast<std::uint8_t>(p);
  return o;
}
std::uint32_t ref_descents(const Perm16& a, int n) {
  std::uint32_t m = 0;
  for (int i = 1; i < n; ++i) {
    if (a[static_cast<std::size_t>(i - 1)] > a[static_cast<std::size_t>(i)]) m |= 1u << (i - 1);
  }
  return m;
}
Perm16 ref_flip(const Perm16& a, int n) {
  Perm16 o = identity_perm();
  for (int p = 0; p < n; ++p) o[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(n - 1 - a[static_cast<std::size_t>(n - 1 - p)]);
  return o;
}

void check_against_reference(const PermKernels& k) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5000; ++trial) {
    const int n = 1 + trial % kMaxPoints;
    const Perm16 a = random_perm(rng, n), b = random_perm(rng, n);
    Perm16 o{};
    k.compose(a.data(), b.data(), o.data());
    CHECK(o == ref_compose(a, b));
    k.invert(a.data(), o.data());
    CHECK(o == ref_invert(a));
    CHECK(k.descent_mask(a.data(), n) == ref_descents(a, n));
    k.flip(a.data(), n, o.data());
    CHECK(o == ref_flip(a, n));
  }
}

}  // namespace

TEST_CASE("scalar kernels match the reference definitions") { check_against_reference(scalar_kernels()); }

TEST_CASE("simd kernels match the reference definitions") {
  const PermKernels* k = ssse3_kernels();
  if (!k) {
    MESSAGE("SSSE3 kernels unavailable on this machine");
    return;
  }
  check_against_reference(*k);
}

TEST_CASE("scalar and simd kernels agree") {
  const PermKernels* simd = ssse3_kernels();
  if (!simd) return;
  const PermKernels& ref = scalar_kernels();
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % kMaxPoints);
    const Perm16 a = random_perm(rng, n), b = random_perm(rng, n);
    Perm16 x{}, y{};
    ref.compose(a.data(), b.data(), x.data());
    simd->compose(a.data(), b.data(), y.data());
    REQUIRE(x == y);
    ref.invert(a.data(), x.data());
    simd->invert(a.data(), y.data());
    REQUIRE(x == y);
    REQUIRE(ref.descent_mask(a.data(), n) == simd->descent_mask(a.data(), n));
    ref.flip(a.data(), n, x.data());
    simd->flip(a.data(), n, y.data());
    REQUIRE(x == y);
  }
}

TEST_CASE("kernel algebra") {
  const PermKernels& k = active_kernels();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 15;
    const Perm16 a = random_perm(rng, n), b = random_perm(rng, n), c = random_perm(rng, n);
    Perm16 ab{}, bc{}, l{}, r{}, inv{}, id{};
    k.compose(a.data(), b.data(), ab.data());
    k.compose(b.data(), c.data(), bc.data());
    k.compose(ab.data(), c.data(), l.data());
    k.compose(a.data(), bc.data(), r.data());
    CHECK(l == r);
    k.invert(a.data(), inv.data());
    k.compose(a.data(), inv.data(), id.data());
    CHECK(id == identity_perm());
    k.flip(a.data(), n, l.data());
    k.flip(l.data(), n, r.data());
    CHECK(r == a);
  }
}
