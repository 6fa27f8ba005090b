#pragma once

// Independent oracles and generators shared by the tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "braidforge/braid.hpp"

namespace support {

using braidforge::BraidWord;

inline int pick(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

inline BraidWord random_word(std::mt19937_64& rng, int n, int len) {
  BraidWord w{n, {}};
  for (int k = 0; k < len && n > 1; ++k) {
    const int i = 1 + pick(rng, n - 1);
    w.letters.push_back(pick(rng, 2) ? i : -i);
  }
  return w;
}

// --- Burau representation over Z/p at a fixed t --------------------------

inline constexpr std::uint64_t kPrime = 2305843009213693951ull;  // 2^61 - 1

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}
inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b) { return (a + b) % kPrime; }
inline std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return (a + kPrime - b) % kPrime; }
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a)) {
    if (e & 1) r = mulmod(r, a);
  }
  return r;
}

using Matrix = std::vector<std::vector<std::uint64_t>>;

// Unreduced Burau image of w evaluated at t.
inline Matrix burau(const BraidWord& w, std::uint64_t t) {
  const int n = w.strands;
  Matrix m(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  const std::uint64_t tinv = powmod(t, kPrime - 2);
  for (int l : w.letters) {
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    // right-multiply by the 2x2 block acting on columns i, i+1
    std::uint64_t a, b, c, d;
    if (l > 0) {
      a = submod(1, t), b = t, c = 1, d = 0;
    } else {
      a = 0, b = 1, c = tinv, d = submod(1, tinv);
    }
    for (auto& row : m) {
      const std::uint64_t x = row[i], y = row[i + 1];
      row[i] = addmod(mulmod(x, a), mulmod(y, c));
      row[i + 1] = addmod(mulmod(x, b), mulmod(y, d));
    }
  }
  return m;
}

inline bool burau_equal(const BraidWord& u, const BraidWord& v) {
  for (std::uint64_t t : {3ull, 1000003ull, 98765432123ull}) {
    if (burau(u, t) != burau(v, t)) return false;
  }
  return true;
}

// Characteristic polynomial coefficients (Faddeev-LeVerrier is awkward mod p;
// use the trace of powers instead, which determines it for n < p).
inline std::vector<std::uint64_t> power_traces(const BraidWord& w, std::uint64_t t) {
  const Matrix m = burau(w, t);
  const std::size_t n = m.size();
  Matrix p = m;
  std::vector<std::uint64_t> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr = addmod(tr, p[i][i]);
    out.push_back(tr);
    Matrix q(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t s = 0;
        for (std::size_t r = 0; r < n; ++r) s = addmod(s, mulmod(p[i][r], m[r][j]));
        q[i][j] = s;
      }
    }
    p = std::move(q);
  }
  return out;
}

// --- linking by strand tracking --------------------------------------------

struct Linking {
  int components = 0;
  // signed crossing counts, components numbered by lowest start position
  std::vector<std::vector<int>> counts;
};

inline Linking track_linking(const BraidWord& w) {
  const int n = w.strands;
  // pos_owner[p] = start position of the strand currently at p
  std::vector<int> owner(static_cast<std::size_t>(n));
  std::iota(owner.begin(), owner.end(), 0);
  struct Cross {
    int a, b, sign;
  };
  std::vector<Cross> crossings;
  for (int l : w.letters) {
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    crossings.push_back({owner[i], owner[i + 1], l > 0 ? 1 : -1});
    std::swap(owner[i], owner[i + 1]);
  }
  // strand starting at s ends at position p where owner[p] == s, and the
  // closure feeds it back into start position p
  std::vector<int> next(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) next[static_cast<std::size_t>(owner[static_cast<std::size_t>(p)])] = p;
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  Linking out;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    for (int x = s; comp[static_cast<std::size_t>(x)] < 0; x = next[static_cast<std::size_t>(x)]) {
      comp[static_cast<std::size_t>(x)] = out.components;
    }
    ++out.components;
  }
  out.counts.assign(static_cast<std::size_t>(out.components), std::vector<int>(static_cast<std::size_t>(out.components), 0));
  for (const auto& c : crossings) {
    const auto a = static_cast<std::size_t>(comp[static_cast<std::size_t>(c.a)]);
    const auto b = static_cast<std::size_t>(comp[static_cast<std::size_t>(c.b)]);
    out.counts[a][b] += c.sign;
    if (a != b) out.counts[b][a] += c.sign;
  }
  return out;
}

inline std::vector<std::vector<int>> counts_of(const braidforge::LinkingMatrix& m) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(m.size()), std::vector<int>(static_cast<std::size_t>(m.size())));
  for (int a = 0; a < m.size(); ++a) {
    for (int b = 0; b < m.size(); ++b) out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = m.signed_count(a, b);
  }
  return out;
}

// Equal after some relabeling of the components.
inline bool same_up_to_relabeling(const std::vector<std::vector<int>>& x, const std::vector<std::vector<int>>& y) {
  if (x.size() != y.size()) return false;
  std::vector<std::size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t a = 0; a < x.size() && ok; ++a) {
      for (std::size_t b = 0; b < x.size() && ok; ++b) ok = x[a][b] == y[perm[a]][perm[b]];
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace support
