#include "braidforge/braid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace braidforge {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidStrandCount: return "InvalidStrandCount";
    case ErrorCode::StrandCountTooSmall: return "StrandCountTooSmall";
    case ErrorCode::NotInDestabilizationForm: return "NotInDestabilizationForm";
    case ErrorCode::FormMismatch: return "FormMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::EmptyDiagram: return "EmptyDiagram";
    case ErrorCode::InvalidDiagram: return "InvalidDiagram";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::SpecIncompatible: return "SpecIncompatible";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void validate_word(const BraidWord& w) {
  if (w.strands < 1) throw Error(ErrorCode::InvalidStrandCount, "strand count must be >= 1");
  for (int l : w.letters) {
    if (l == 0 || std::abs(l) > w.strands - 1) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "generator " + std::to_string(l) + " on " + std::to_string(w.strands) + " strands");
    }
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view tok, std::string_view context) {
  int value = 0;
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::ParseError, "bad integer '" + std::string(tok) + "' in '" + std::string(context) + "'");
  }
  return value;
}

}  // namespace

BraidWord parse_word(std::string_view text) {
  std::string_view s = trim(text);
  if (s.substr(0, 2) != "n=") throw Error(ErrorCode::ParseError, "expected 'n=<N>:' prefix");
  auto colon = s.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::ParseError, "missing ':'");
  BraidWord w;
  w.strands = parse_int(trim(s.substr(2, colon - 2)), text);
  if (w.strands < 1) throw Error(ErrorCode::InvalidStrandCount, "n must be >= 1");
  std::string_view rest = s.substr(colon + 1);
  std::size_t i = 0;
  while (i < rest.size()) {
    while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t' || rest[i] == ',')) ++i;
    std::size_t j = i;
    while (j < rest.size() && rest[j] != ' ' && rest[j] != '\t' && rest[j] != ',') ++j;
    if (j > i) {
      int v = parse_int(rest.substr(i, j - i), text);
      if (v == 0) throw Error(ErrorCode::ParseError, "generator index 0");
      w.letters.push_back(v);
    }
    i = j;
  }
  validate_word(w);
  return w;
}

std::string format_word(const BraidWord& w) {
  std::string out = "n=" + std::to_string(w.strands) + ":";
  for (int l : w.letters) {
    out += ' ';
    out += std::to_string(l);
  }
  return out;
}

BraidWord rotate_word(const BraidWord& w, std::size_t offset) {
  BraidWord r{w.strands, w.letters};
  if (!r.letters.empty()) {
    std::rotate(r.letters.begin(), r.letters.begin() + static_cast<long>(offset % r.letters.size()), r.letters.end());
  }
  return r;
}

BraidWord inverse_word(const BraidWord& w) {
  BraidWord r{w.strands, {}};
  r.letters.reserve(w.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(-*it);
  return r;
}

BraidWord concat(const BraidWord& a, const BraidWord& b) {
  BraidWord r{std::max(a.strands, b.strands), a.letters};
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return r;
}

int exponent_sum(const BraidWord& w) {
  int s = 0;
  for (int l : w.letters) s += l > 0 ? 1 : -1;
  return s;
}

BraidWord cyclic_reduce(const BraidWord& w) {
  std::vector<int> st;
  st.reserve(w.size());
  for (int l : w.letters) {
    if (!st.empty() && st.back() == -l) {
      st.pop_back();
    } else {
      st.push_back(l);
    }
  }
  std::size_t lo = 0;
  std::size_t hi = st.size();
  while (hi - lo >= 2 && st[lo] == -st[hi - 1]) {
    ++lo;
    --hi;
  }
  return BraidWord{w.strands, std::vector<int>(st.begin() + static_cast<long>(lo), st.begin() + static_cast<long>(hi))};
}

bool cyclically_equal(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands || a.size() != b.size()) return false;
  if (a.empty()) return true;
  std::vector<int> doubled(a.letters);
  doubled.insert(doubled.end(), a.letters.begin(), a.letters.end());
  return std::search(doubled.begin(), doubled.end(), b.letters.begin(), b.letters.end()) != doubled.end();
}

BraidWord commuting_reduce(const BraidWord& w) {
  std::vector<int> l = cyclic_reduce(w).letters;
  bool changed = true;
  while (changed && l.size() > 1) {
    changed = false;
    const std::size_t m = l.size();
    for (std::size_t i = 0; i < m && !changed; ++i) {
      // walk forward around the cycle while letters commute with l[i]
      for (std::size_t step = 1; step < m; ++step) {
        const std::size_t j = (i + step) % m;
        if (l[j] == -l[i]) {
          const std::size_t hi = std::max(i, j), lo = std::min(i, j);
          l.erase(l.begin() + static_cast<std::ptrdiff_t>(hi));
          l.erase(l.begin() + static_cast<std::ptrdiff_t>(lo));
          changed = true;
          break;
        }
        if (std::abs(std::abs(l[j]) - std::abs(l[i])) < 2) break;
      }
    }
  }
  return cyclic_reduce(BraidWord{w.strands, std::move(l)});
}

BraidWord least_rotation(const BraidWord& w) {
  BraidWord best = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    BraidWord r = rotate_word(w, k);
    if (r.letters < best.letters) best = std::move(r);
  }
  return best;
}

std::vector<BraidWord> far_commutation_class(const BraidWord& w, std::size_t limit) {
  std::vector<BraidWord> out{least_rotation(w)};
  std::set<std::vector<int>> seen{out.front().letters};
  const std::size_t m = w.size();
  for (std::size_t head = 0; head < out.size() && out.size() < limit; ++head) {
    for (std::size_t k = 0; k < m && m > 1 && out.size() < limit; ++k) {
      const std::size_t j = (k + 1) % m;
      if (j == k) continue;
      BraidWord next = out[head];
      auto& l = next.letters;
      if (std::abs(std::abs(l[k]) - std::abs(l[j])) < 2) continue;
      std::swap(l[k], l[j]);
      next = least_rotation(next);
      if (seen.insert(next.letters).second) out.push_back(std::move(next));
    }
  }
  return out;
}

ClosureComponents closure_components(const BraidWord& w) {
  const int n = w.strands;
  std::vector<int> at(static_cast<std::size_t>(n));
  std::iota(at.begin(), at.end(), 0);
  for (int l : w.letters) {
    int i = std::abs(l);
    std::swap(at[static_cast<std::size_t>(i - 1)], at[static_cast<std::size_t>(i)]);
  }
  ClosureComponents out;
  out.permutation.assign(static_cast<std::size_t>(n), 0);
  for (int p = 0; p < n; ++p) out.permutation[static_cast<std::size_t>(at[static_cast<std::size_t>(p)])] = p;
  out.assignment.assign(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (out.assignment[static_cast<std::size_t>(s)] >= 0) continue;
    int c = out.count++;
    for (int x = s; out.assignment[static_cast<std::size_t>(x)] < 0; x = out.permutation[static_cast<std::size_t>(x)]) {
      out.assignment[static_cast<std::size_t>(x)] = c;
    }
  }
  return out;
}

void LinkingMatrix::add_crossing(int a, int b, int sign) {
  counts_[static_cast<std::size_t>(a * n_ + b)] += sign;
  if (a != b) counts_[static_cast<std::size_t>(b * n_ + a)] += sign;
}

double LinkingMatrix::entry(int a, int b) const {
  int c = signed_count(a, b);
  return a == b ? static_cast<double>(c) : c / 2.0;
}

std::string to_string(const LinkingMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (int a = 0; a < m.size(); ++a) {
    if (a) os << "; ";
    for (int b = 0; b < m.size(); ++b) {
      if (b) os << ' ';
      os << m.entry(a, b);
    }
  }
  os << ']';
  return os.str();
}

LinkingMatrix linking_matrix_of_word(const BraidWord& w) {
  validate_word(w);
  auto cc = closure_components(w);
  LinkingMatrix m(cc.count);
  std::vector<int> at(static_cast<std::size_t>(w.strands));
  std::iota(at.begin(), at.end(), 0);
  for (int l : w.letters) {
    auto i = static_cast<std::size_t>(std::abs(l));
    int ca = cc.assignment[static_cast<std::size_t>(at[i - 1])];
    int cb = cc.assignment[static_cast<std::size_t>(at[i])];
    m.add_crossing(ca, cb, l > 0 ? 1 : -1);
    std::swap(at[i - 1], at[i]);
  }
  return m;
}

// --- detectors ------------------------------------------------------------

std::optional<DestabilizationForm> detect_destabilization_form(const BraidWord& w) {
  validate_word(w);
  const int top = w.strands - 1;
  if (top < 1) return std::nullopt;
  std::size_t found = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(w.letters[i]) == top) {
      if (found != w.size()) return std::nullopt;
      found = i;
    }
  }
  if (found == w.size()) return std::nullopt;
  // Rotate so the lone top letter is last.
  DestabilizationForm f;
  f.rotation = (found + 1) % w.size();
  BraidWord rot = rotate_word(w, f.rotation);
  f.sign = rot.letters.back() > 0 ? 1 : -1;
  rot.letters.pop_back();
  f.reduced = rot;
  return f;
}

std::optional<DoubleDestabilizationForm> detect_double_destabilization_form(const BraidWord& w) {
  validate_word(w);
  const int n = w.strands;
  if (n < 4) throw Error(ErrorCode::StrandCountTooSmall, "double destabilization needs n >= 4");
  const std::size_t len = w.size();
  if (len < 4) return std::nullopt;
  const int pattern[4] = {n - 2, n - 1, n - 3, n - 2};
  for (std::size_t r = 0; r < len; ++r) {
    BraidWord rot = rotate_word(w, r);
    const auto& L = rot.letters;
    int eps = L[len - 4] > 0 ? 1 : -1;
    bool ok = true;
    for (int k = 0; k < 4 && ok; ++k) ok = L[len - 4 + static_cast<std::size_t>(k)] == eps * pattern[k];
    for (std::size_t k = 0; k + 4 < len && ok; ++k) ok = std::abs(L[k]) <= n - 3;
    if (!ok) continue;
    DoubleDestabilizationForm f;
    f.rotation = r;
    f.epsilon = eps;
    f.prefix = BraidWord{n, std::vector<int>(L.begin(), L.end() - 4)};
    return f;
  }
  return std::nullopt;
}

std::vector<ExchangeForm> enumerate_exchange_forms(const BraidWord& w) {
  validate_word(w);
  const int n = w.strands;
  const std::size_t len = w.size();
  std::vector<ExchangeForm> out;
  if (n < 4 || len < 2) return out;

  using Key = std::tuple<std::vector<int>, std::vector<int>, int, int>;
  std::set<Key> seen;
  for (std::size_t r = 0; r < len; ++r) {
    BraidWord rot = rotate_word(w, r);
    const auto& L = rot.letters;
    std::vector<int> suffix_min(len + 1, n);
    for (std::size_t k = len; k-- > 0;) suffix_min[k] = std::min(suffix_min[k + 1], std::abs(L[k]));
    int max_w = 0;
    for (std::size_t split = 1; split < len; ++split) {
      max_w = std::max(max_w, std::abs(L[split - 1]));
      const int min_u = suffix_min[split];
      std::vector<std::pair<int, int>> st;
      if (max_w <= min_u) {
        for (int v = std::max(max_w, 2); v <= std::min(min_u, n - 2); ++v) st.emplace_back(v, v);
      } else if (min_u >= 2 && max_w <= n - 2) {
        st.emplace_back(min_u, max_w);
      }
      for (auto [s, t] : st) {
        ExchangeForm f;
        f.rotation = r;
        f.split = split;
        f.s = s;
        f.t = t;
        f.w_block.assign(L.begin(), L.begin() + static_cast<long>(split));
        f.u_block.assign(L.begin() + static_cast<long>(split), L.end());
        // Letters of W with index <= s-2 commute with U: a commuting suffix of
        // W may be moved to the front without changing the move.
        std::vector<int> canon = f.w_block;
        std::size_t k = canon.size();
        while (k > 0 && std::abs(canon[k - 1]) <= s - 2) --k;
        std::rotate(canon.begin(), canon.begin() + static_cast<long>(k), canon.end());
        if (seen.emplace(canon, f.u_block, s, t).second) out.push_back(std::move(f));
      }
    }
  }
  int best = n;
  for (const auto& f : out) best = std::min(best, f.t - f.s);
  for (auto& f : out) f.thin = (f.t - f.s == best);
  return out;
}

std::vector<FlypeForm> enumerate_elementary_flype_forms(const BraidWord& w) {
  validate_word(w);
  const int n = w.strands;
  const int top = n - 1;
  std::vector<FlypeForm> out;
  const std::size_t len = w.size();
  if (n < 3 || len < 4) return out;
  // Rotate so position 0 is not a top letter but position len-1 is, which makes
  // the top-letter blocks contiguous in the rotated word.
  std::size_t start = len;
  for (std::size_t i = 0; i < len; ++i) {
    if (std::abs(w.letters[i]) != top && std::abs(w.letters[(i + len - 1) % len]) == top) {
      start = i;
      break;
    }
  }
  if (start == len) return out;
  BraidWord base = rotate_word(w, start);
  struct Block {
    std::size_t begin, end;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < len;) {
    if (std::abs(base.letters[i]) == top) {
      std::size_t j = i;
      while (j < len && std::abs(base.letters[j]) == top) ++j;
      blocks.push_back({i, j});
      i = j;
    } else {
      ++i;
    }
  }
  if (blocks.size() != 2) return out;
  for (int which = 0; which < 2; ++which) {
    const Block& lone = blocks[static_cast<std::size_t>(which)];
    const Block& pow = blocks[static_cast<std::size_t>(1 - which)];
    if (lone.end - lone.begin != 1) continue;
    int sgn = base.letters[pow.begin] > 0 ? 1 : -1;
    bool uniform = true;
    for (std::size_t i = pow.begin; i < pow.end; ++i) uniform = uniform && (base.letters[i] > 0 ? 1 : -1) == sgn;
    if (!uniform) continue;
    FlypeForm f;
    f.rotation = (start + lone.end) % len;
    BraidWord rot = rotate_word(base, lone.end);
    // rot = W1 sigma^p W2 sigma^delta
    std::size_t pb = (pow.begin + len - lone.end) % len;
    std::size_t pe = pb + (pow.end - pow.begin);
    f.w1_block.assign(rot.letters.begin(), rot.letters.begin() + static_cast<long>(pb));
    f.w2_block.assign(rot.letters.begin() + static_cast<long>(pe), rot.letters.end() - 1);
    f.p = sgn * static_cast<int>(pow.end - pow.begin);
    f.delta = rot.letters.back() > 0 ? 1 : -1;
    if (f.w1_block.empty() || f.w2_block.empty()) continue;
    if (cyclic_reduce(BraidWord{n, f.w1_block}).empty() || cyclic_reduce(BraidWord{n, f.w2_block}).empty()) continue;
    bool dup = false;
    for (const auto& g : out) {
      dup = dup || (g.w1_block == f.w1_block && g.w2_block == f.w2_block && g.p == f.p && g.delta == f.delta);
    }
    if (!dup) out.push_back(std::move(f));
  }
  return out;
}

std::vector<int> full_twist_letters(int lo, int hi, int sign) {
  std::vector<int> half;
  for (int k = hi - 1; k >= lo; --k) {
    for (int i = lo; i <= k; ++i) half.push_back(i);
  }
  std::vector<int> full(half);
  full.insert(full.end(), half.begin(), half.end());
  if (sign < 0) {
    std::reverse(full.begin(), full.end());
    for (int& l : full) l = -l;
  }
  return full;
}

BraidWord apply_exchange_move(const BraidWord& w, const ExchangeForm& f, int twist_sign) {
  BraidWord rot = rotate_word(w, f.rotation);
  std::vector<int> expect(f.w_block);
  expect.insert(expect.end(), f.u_block.begin(), f.u_block.end());
  if (rot.letters != expect) throw Error(ErrorCode::FormMismatch, "exchange form does not match word");
  const int sign = twist_sign >= 0 ? 1 : -1;
  BraidWord out{w.strands, f.w_block};
  auto tau = full_twist_letters(f.s, f.t + 1, sign);
  auto tau_inv = full_twist_letters(f.s, f.t + 1, -sign);
  out.letters.insert(out.letters.end(), tau.begin(), tau.end());
  out.letters.insert(out.letters.end(), f.u_block.begin(), f.u_block.end());
  out.letters.insert(out.letters.end(), tau_inv.begin(), tau_inv.end());
  return out;
}

BraidWord apply_elementary_flype(const BraidWord& w, const FlypeForm& f) {
  const int top = w.strands - 1;
  BraidWord rot = rotate_word(w, f.rotation);
  std::vector<int> expect(f.w1_block);
  for (int i = 0; i < std::abs(f.p); ++i) expect.push_back(f.p > 0 ? top : -top);
  expect.insert(expect.end(), f.w2_block.begin(), f.w2_block.end());
  expect.push_back(f.delta * top);
  if (rot.letters != expect) throw Error(ErrorCode::FormMismatch, "flype form does not match word");
  BraidWord out{w.strands, f.w1_block};
  out.letters.push_back(f.delta * top);
  out.letters.insert(out.letters.end(), f.w2_block.begin(), f.w2_block.end());
  for (int i = 0; i < std::abs(f.p); ++i) out.letters.push_back(f.p > 0 ? top : -top);
  return out;
}

BraidWord destabilize_word(const BraidWord& w) {
  auto f = detect_destabilization_form(w);
  if (!f) throw Error(ErrorCode::NotInDestabilizationForm, format_word(w));
  BraidWord out = f->reduced;
  out.strands = w.strands - 1;
  return out;
}

}  // namespace braidforge
