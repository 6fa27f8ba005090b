#include "braidforge/garside.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace braidforge {

namespace garside {

namespace {

const kernels::PermKernels& K() { return kernels::active_kernels(); }

SimpleBraid compose(const SimpleBraid& a, const SimpleBraid& b) {
  SimpleBraid out;
  K().compose(a.data(), b.data(), out.data());
  return out;
}

SimpleBraid inverse(const SimpleBraid& a) {
  SimpleBraid out;
  K().invert(a.data(), out.data());
  return out;
}

SimpleBraid flip_power(const SimpleBraid& s, int n, int power) {
  return (power % 2 != 0) ? flip(s, n) : s;
}

// Makes (a, b) left-weighted by moving generators from the head of b to the
// tail of a. Returns true when anything moved.
bool left_weight(SimpleBraid& a, SimpleBraid& b, int n) {
  bool moved = false;
  for (;;) {
    std::uint32_t m = starting_set(b, n) & ~finishing_set(a, n);
    if (!m) return moved;
    int i = __builtin_ctz(m) + 1;
    std::swap(a[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
    const SimpleBraid g = generator(n, i);
    b = compose(g, b);
    moved = true;
  }
}

}  // namespace

SimpleBraid delta(int n) {
  SimpleBraid d = kernels::identity_perm();
  for (int p = 0; p < n; ++p) d[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(n - 1 - p);
  return d;
}

SimpleBraid generator(int n, int i) {
  (void)n;
  SimpleBraid g = kernels::identity_perm();
  std::swap(g[static_cast<std::size_t>(i - 1)], g[static_cast<std::size_t>(i)]);
  return g;
}

bool is_identity(const SimpleBraid& s, int n) {
  for (int p = 0; p < n; ++p) {
    if (s[static_cast<std::size_t>(p)] != p) return false;
  }
  return true;
}

bool is_delta(const SimpleBraid& s, int n) {
  for (int p = 0; p < n; ++p) {
    if (s[static_cast<std::size_t>(p)] != n - 1 - p) return false;
  }
  return true;
}

SimpleBraid flip(const SimpleBraid& s, int n) {
  SimpleBraid out;
  K().flip(s.data(), n, out.data());
  return out;
}

SimpleBraid left_complement(const SimpleBraid& s, int n) {
  SimpleBraid inv = inverse(s);
  SimpleBraid out = kernels::identity_perm();
  for (int q = 0; q < n; ++q) {
    out[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(n - 1 - inv[static_cast<std::size_t>(q)]);
  }
  return out;
}

std::uint32_t finishing_set(const SimpleBraid& s, int n) { return K().descent_mask(s.data(), n); }

std::uint32_t starting_set(const SimpleBraid& s, int n) {
  SimpleBraid inv = inverse(s);
  return K().descent_mask(inv.data(), n);
}

std::vector<int> simple_letters(const SimpleBraid& s, int n) {
  std::vector<int> rev;
  SimpleBraid a = s;
  for (;;) {
    std::uint32_t f = finishing_set(a, n);
    if (!f) break;
    int i = __builtin_ctz(f) + 1;
    rev.push_back(i);
    std::swap(a[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

GarsideForm normalize(int strands, int infimum, std::vector<SimpleBraid> f) {
  const int n = strands;
  GarsideForm out;
  out.strands = n;
  if (n <= 1) return out;
  bool changed = true;
  while (changed) {
    changed = false;
    f.erase(std::remove_if(f.begin(), f.end(), [n](const SimpleBraid& s) { return is_identity(s, n); }), f.end());
    for (std::size_t j = f.size(); j-- > 1;) {
      if (left_weight(f[j - 1], f[j], n)) changed = true;
    }
  }
  std::size_t lead = 0;
  while (lead < f.size() && is_delta(f[lead], n)) ++lead;
  infimum += static_cast<int>(lead);
  f.erase(f.begin(), f.begin() + static_cast<long>(lead));
  // The Delta factors were leading, so the remaining ones are untouched by the
  // shift; nothing else to flip.
  out.infimum = infimum;
  out.factors = std::move(f);
  return out;
}

GarsideForm multiply(const GarsideForm& a, const GarsideForm& b) {
  const int n = std::max(a.strands, b.strands);
  std::vector<SimpleBraid> f;
  f.reserve(a.factors.size() + b.factors.size());
  for (const auto& s : a.factors) f.push_back(flip_power(s, n, b.infimum));
  f.insert(f.end(), b.factors.begin(), b.factors.end());
  return normalize(n, a.infimum + b.infimum, std::move(f));
}

GarsideForm cycling(const GarsideForm& x) {
  if (x.factors.empty()) return x;
  std::vector<SimpleBraid> f(x.factors.begin() + 1, x.factors.end());
  f.push_back(flip_power(x.factors.front(), x.strands, x.infimum));
  return normalize(x.strands, x.infimum, std::move(f));
}

GarsideForm decycling(const GarsideForm& x) {
  if (x.factors.empty()) return x;
  std::vector<SimpleBraid> f;
  f.push_back(flip_power(x.factors.back(), x.strands, x.infimum));
  f.insert(f.end(), x.factors.begin(), x.factors.end() - 1);
  return normalize(x.strands, x.infimum, std::move(f));
}

GarsideForm conjugate_by_simple(const GarsideForm& x, const SimpleBraid& s) {
  const int n = x.strands;
  // s^{-1} = Delta^{-1} * L(s) where L(s) * s = Delta
  GarsideForm s_inv{n, -1, {left_complement(s, n)}};
  GarsideForm s_form{n, 0, {s}};
  return multiply(multiply(s_inv, x), s_form);
}

BraidWord to_word(const GarsideForm& x) {
  const int n = x.strands;
  BraidWord w{n, {}};
  if (n <= 1) return w;
  auto d = simple_letters(delta(n), n);
  for (int k = 0; k < std::abs(x.infimum); ++k) {
    if (x.infimum > 0) {
      w.letters.insert(w.letters.end(), d.begin(), d.end());
    } else {
      for (auto it = d.rbegin(); it != d.rend(); ++it) w.letters.push_back(-*it);
    }
  }
  for (const auto& s : x.factors) {
    auto l = simple_letters(s, n);
    w.letters.insert(w.letters.end(), l.begin(), l.end());
  }
  return w;
}

std::string key(const GarsideForm& x) {
  std::string k;
  k.reserve(8 + x.factors.size() * static_cast<std::size_t>(x.strands));
  k.append(reinterpret_cast<const char*>(&x.infimum), sizeof(x.infimum));
  for (const auto& s : x.factors) k.append(reinterpret_cast<const char*>(s.data()), static_cast<std::size_t>(x.strands));
  return k;
}

}  // namespace garside

GarsideForm left_normal_form(const BraidWord& w) {
  validate_word(w);
  const int n = w.strands;
  if (n > garside::kMaxStrands) {
    throw Error(ErrorCode::BudgetExceeded, "Garside forms support at most 16 strands");
  }
  if (n <= 1) return GarsideForm{n, 0, {}};
  const SimpleBraid d = garside::delta(n);
  int inf = 0;
  std::vector<SimpleBraid> f;
  for (int l : w.letters) {
    const int i = std::abs(l);
    if (l > 0) {
      f.push_back(garside::generator(n, i));
    } else {
      // sigma_i^{-1} = Delta^{-1} (Delta sigma_i^{-1}); push Delta^{-1} left.
      for (auto& s : f) s = garside::flip(s, n);
      --inf;
      SimpleBraid x = d;
      std::swap(x[static_cast<std::size_t>(i - 1)], x[static_cast<std::size_t>(i)]);
      f.push_back(x);
    }
  }
  return garside::normalize(n, inf, std::move(f));
}

GarsideForm to_super_summit(const GarsideForm& start) {
  const int n = start.strands;
  const int norm = n * (n - 1) / 2;
  GarsideForm x = start;
  // raise the infimum
  for (bool improved = true; improved;) {
    improved = false;
    GarsideForm y = x;
    for (int k = 0; k < norm && !y.factors.empty(); ++k) {
      y = garside::cycling(y);
      if (y.infimum > x.infimum) {
        x = y;
        improved = true;
        break;
      }
    }
  }
  // lower the supremum
  for (bool improved = true; improved;) {
    improved = false;
    GarsideForm y = x;
    for (int k = 0; k < norm && !y.factors.empty(); ++k) {
      y = garside::decycling(y);
      if (y.supremum() < x.supremum() && y.infimum >= x.infimum) {
        x = y;
        improved = true;
        break;
      }
    }
  }
  return x;
}

std::vector<GarsideForm> super_summit_set(const GarsideForm& x0, const ConjugacyBudget& budget) {
  const int n = x0.strands;
  if (n > budget.max_strands) throw Error(ErrorCode::BudgetExceeded, "strand count above conjugacy cap");
  GarsideForm x = to_super_summit(x0);
  std::vector<SimpleBraid> simples;
  {
    SimpleBraid p = kernels::identity_perm();
    do {
      if (!garside::is_identity(p, n)) simples.push_back(p);
    } while (std::next_permutation(p.begin(), p.begin() + n));
  }
  std::vector<GarsideForm> set{x};
  std::unordered_set<std::string> seen{garside::key(x)};
  for (std::size_t head = 0; head < set.size(); ++head) {
    for (const auto& s : simples) {
      GarsideForm z = garside::conjugate_by_simple(set[head], s);
      if (z.infimum != x.infimum || z.supremum() != x.supremum()) continue;
      if (seen.insert(garside::key(z)).second) {
        set.push_back(std::move(z));
        if (set.size() > budget.max_summit_size) {
          throw Error(ErrorCode::BudgetExceeded, "super summit set exceeds cap");
        }
      }
    }
  }
  return set;
}

namespace {

std::vector<int> cycle_type(const BraidWord& w) {
  auto cc = closure_components(w);
  std::vector<int> sizes(static_cast<std::size_t>(cc.count), 0);
  for (int c : cc.assignment) ++sizes[static_cast<std::size_t>(c)];
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

bool are_conjugate(const BraidWord& a, const BraidWord& b, const ConjugacyBudget& budget) {
  validate_word(a);
  validate_word(b);
  if (a.strands != b.strands) return false;
  if (exponent_sum(a) != exponent_sum(b)) return false;
  if (cycle_type(a) != cycle_type(b)) return false;
  if (a.strands <= 1) return true;
  if (a.strands > budget.max_strands) throw Error(ErrorCode::BudgetExceeded, "strand count above conjugacy cap");
  GarsideForm xa = to_super_summit(left_normal_form(a));
  GarsideForm xb = to_super_summit(left_normal_form(b));
  if (xa.infimum != xb.infimum || xa.supremum() != xb.supremum()) return false;
  if (xa == xb) return true;
  const std::string target = garside::key(xb);
  for (const auto& y : super_summit_set(xa, budget)) {
    if (garside::key(y) == target) return true;
  }
  return false;
}

}  // namespace braidforge
