#include "braidforge/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "braidforge/garside.hpp"
#include "json.hpp"

namespace braidforge {

namespace {

// rng() % n rather than a distribution object: the sequence has to be the same
// on every standard library.
int pick(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

int sign(std::mt19937_64& rng) { return pick(rng, 2) == 0 ? 1 : -1; }

std::vector<int> random_letters(std::mt19937_64& rng, int lo, int hi, int len) {
  std::vector<int> out;
  for (int k = 0; k < len; ++k) {
    int x = 0;
    do {
      x = sign(rng) * (lo + pick(rng, hi - lo + 1));
    } while (!out.empty() && out.back() == -x);
    out.push_back(x);
  }
  return out;
}

int min_strands(TargetMove t) {
  switch (t) {
    case TargetMove::Destabilization: return 2;
    case TargetMove::ElementaryFlype: return 3;
    case TargetMove::ThinExchange:
    case TargetMove::DoubleDestabilization: return 4;
  }
  return 2;
}

// grow: letters added on top of core_length after failed attempts
BraidWord make_core(const InstanceSpec& spec, std::mt19937_64& rng, int grow) {
  const int n = spec.n;
  const int len = spec.core_length + grow;
  BraidWord w{n, {}};
  switch (spec.target) {
    case TargetMove::Destabilization:
      if (n > 2) w.letters = random_letters(rng, 1, n - 2, std::max(0, len - 1));
      w.letters.push_back(sign(rng) * (n - 1));
      break;
    case TargetMove::ThinExchange: {
      const int s = 2 + pick(rng, n - 3);
      const int wl = std::max(1, len / 2);
      const int ul = std::max(1, len - wl);
      w.letters = random_letters(rng, 1, s, wl);
      const auto u = random_letters(rng, s, n - 1, ul);
      w.letters.insert(w.letters.end(), u.begin(), u.end());
      break;
    }
    case TargetMove::ElementaryFlype: {
      const int p = sign(rng) * (1 + pick(rng, 3));
      const int rest = std::max(2, len - std::abs(p) - 1);
      // each block needs a sigma_{n-2}, or it slides through the top strand
      auto block = [&](int size) {
        auto b = random_letters(rng, 1, n - 2, size);
        if (std::none_of(b.begin(), b.end(), [&](int x) { return std::abs(x) == n - 2; })) {
          b[static_cast<std::size_t>(pick(rng, size))] = sign(rng) * (n - 2);
        }
        return b;
      };
      const auto w1 = block(std::max(1, rest / 2));
      const auto w2 = block(std::max(1, rest - rest / 2));
      w.letters = w1;
      for (int k = 0; k < std::abs(p); ++k) w.letters.push_back(p > 0 ? n - 1 : -(n - 1));
      w.letters.insert(w.letters.end(), w2.begin(), w2.end());
      w.letters.push_back(sign(rng) * (n - 1));
      break;
    }
    case TargetMove::DoubleDestabilization: {
      const int e = sign(rng);
      w.letters = random_letters(rng, 1, n - 3, std::max(0, len - 4));
      for (int i : {n - 2, n - 1, n - 3, n - 2}) w.letters.push_back(e * i);
      break;
    }
  }
  return w;
}

bool core_in_form(TargetMove t, const BraidWord& w) {
  switch (t) {
    case TargetMove::Destabilization: return detect_destabilization_form(w).has_value();
    case TargetMove::ThinExchange: return !enumerate_exchange_forms(w).empty();
    case TargetMove::ElementaryFlype: return !enumerate_elementary_flype_forms(w).empty();
    case TargetMove::DoubleDestabilization: return detect_double_destabilization_form(w).has_value();
  }
  return false;
}

// A flype core whose flype lands in its own conjugacy class (for instance one
// whose closure splits off the top strand) exercises nothing.
bool degenerate_flype(TargetMove t, const BraidWord& core) {
  if (t != TargetMove::ElementaryFlype) return false;
  const auto forms = enumerate_elementary_flype_forms(core);
  try {
    return std::all_of(forms.begin(), forms.end(),
                       [&](const FlypeForm& f) { return are_conjugate(core, apply_elementary_flype(core, f)); });
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

std::string random_rewrite(BraidWord& w, std::mt19937_64& rng) {
  auto& l = w.letters;
  const int m = static_cast<int>(l.size());
  // sites: (kind, position)
  std::vector<std::pair<int, int>> sites;
  for (int k = 0; k + 2 < m; ++k) {
    const int a = std::abs(l[static_cast<std::size_t>(k)]), b = std::abs(l[static_cast<std::size_t>(k) + 1]);
    const int c = std::abs(l[static_cast<std::size_t>(k) + 2]);
    const bool same_tail = (l[static_cast<std::size_t>(k) + 1] > 0) == (l[static_cast<std::size_t>(k) + 2] > 0);
    if (a == c && std::abs(a - b) == 1 && same_tail) sites.emplace_back(0, k);
  }
  for (int k = 0; k + 1 < m; ++k) {
    if (std::abs(std::abs(l[static_cast<std::size_t>(k)]) - std::abs(l[static_cast<std::size_t>(k) + 1])) >= 2) {
      sites.emplace_back(1, k);
    }
  }
  for (int k = 0; k + 1 < m; ++k) {
    if (l[static_cast<std::size_t>(k)] == -l[static_cast<std::size_t>(k) + 1]) sites.emplace_back(2, k);
  }
  if (w.strands > 1) {
    for (int k = 0; k <= m; ++k) sites.emplace_back(3, k);
  }
  if (sites.empty()) return "none";
  // kind first, then a site of that kind, so insertions do not crowd out the
  // braid relations
  std::vector<int> kinds;
  for (const auto& st : sites) {
    if (std::find(kinds.begin(), kinds.end(), st.first) == kinds.end()) kinds.push_back(st.first);
  }
  const int chosen = kinds[static_cast<std::size_t>(pick(rng, static_cast<int>(kinds.size())))];
  std::vector<int> at_kind;
  for (const auto& st : sites) {
    if (st.first == chosen) at_kind.push_back(st.second);
  }
  const int kind = chosen;
  const int k = at_kind[static_cast<std::size_t>(pick(rng, static_cast<int>(at_kind.size())))];
  const auto at = l.begin() + k;
  char buf[64];
  switch (kind) {
    case 0: {
      // s_i^e s_j^d s_i^d = s_j^d s_i^d s_j^e for |i-j| = 1
      const int x = *at, y = *(at + 1), z = *(at + 2);
      const int i = std::abs(x), j = std::abs(y);
      const int e = x > 0 ? 1 : -1, d = y > 0 ? 1 : -1;
      (void)z;
      *at = d * j;
      *(at + 1) = d * i;
      *(at + 2) = e * j;
      std::snprintf(buf, sizeof buf, "relation@%d", k);
      break;
    }
    case 1:
      std::iter_swap(at, at + 1);
      std::snprintf(buf, sizeof buf, "commute@%d", k);
      break;
    case 2:
      l.erase(at, at + 2);
      std::snprintf(buf, sizeof buf, "cancel@%d", k);
      break;
    default: {
      const int x = sign(rng) * (1 + pick(rng, w.strands - 1));
      l.insert(at, {x, -x});
      std::snprintf(buf, sizeof buf, "insert@%d", k);
      break;
    }
  }
  return buf;
}

Instance random_obfuscated_instance(const InstanceSpec& spec) {
  if (spec.core_length < 0 || spec.obf_conj_length < 0 || spec.obf_rewrites < 0) {
    throw Error(ErrorCode::SpecIncompatible, "instance counts must be nonnegative");
  }
  if (spec.n < min_strands(spec.target)) {
    throw Error(ErrorCode::SpecIncompatible, std::string(to_string(spec.target)) + " needs n >= " +
                                                 std::to_string(min_strands(spec.target)));
  }
  std::mt19937_64 rng(spec.seed);
  Instance inst;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 128) throw Error(ErrorCode::SpecIncompatible, "no nondegenerate core for this spec");
    inst.witness.core = make_core(spec, rng, attempt / 4);
    if (!core_in_form(spec.target, inst.witness.core)) {
      throw Error(ErrorCode::PreconditionViolated, "generated core is not in form");
    }
    if (!degenerate_flype(spec.target, inst.witness.core)) break;
  }
  inst.witness.conjugator = BraidWord{spec.n, random_letters(rng, 1, spec.n - 1, spec.obf_conj_length)};
  BraidWord w = concat(concat(inst.witness.conjugator, inst.witness.core), inverse_word(inst.witness.conjugator));
  for (int k = 0; k < spec.obf_rewrites; ++k) inst.witness.rewrites.push_back(random_rewrite(w, rng));
  inst.word = std::move(w);
  return inst;
}

namespace {

Percentiles percentiles(std::vector<double> v) {
  Percentiles p;
  if (v.empty()) return p;
  std::sort(v.begin(), v.end());
  auto at = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size()))) - 1;
    return v[std::min(idx, v.size() - 1)];
  };
  p.p50 = at(0.5);
  p.p90 = at(0.9);
  p.p99 = at(0.99);
  p.max = v.back();
  return p;
}

}  // namespace

BenchReport run_benchmark_suite(const std::vector<InstanceSpec>& specs, const SearchBudget& b) {
  BenchReport rep;
  std::vector<double> states, ms;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    BenchRow row;
    row.id = std::to_string(i);
    row.move = s.target;
    row.n = s.n;
    row.core_length = s.core_length;
    const auto inst = random_obfuscated_instance(s);
    const auto v = recognize(s.target, inst.word, b);
    row.verdict = v.outcome;
    row.states = v.states_visited;
    row.millis = v.millis;
    if (v.certificate) {
      row.cert_len = v.certificate->moves.size();
      row.replay_ok = replay_certificate(*v.certificate).ok();
    }
    switch (v.outcome) {
      case Outcome::Found: ++rep.found; break;
      case Outcome::NotAdmitted: ++rep.not_admitted; break;
      case Outcome::Inconclusive: ++rep.inconclusive; break;
    }
    states.push_back(static_cast<double>(row.states));
    ms.push_back(row.millis);
    rep.rows.push_back(std::move(row));
  }
  rep.states = percentiles(std::move(states));
  rep.millis = percentiles(std::move(ms));
  return rep;
}

std::string report_csv(const BenchReport& r, bool with_timing) {
  std::ostringstream out;
  out << "id,move,n,coreLength,verdict,states,certLen,millis\n";
  char buf[32];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%.3f", with_timing ? row.millis : 0.0);
    out << row.id << ',' << to_string(row.move) << ',' << row.n << ',' << row.core_length << ','
        << to_string(row.verdict) << ',' << row.states << ',' << row.cert_len << ',' << buf << '\n';
  }
  return out.str();
}

std::string report_json(const BenchReport& r, bool with_timing) {
  using nlohmann::ordered_json;
  auto pct = [](const Percentiles& p) {
    return ordered_json{{"p50", p.p50}, {"p90", p.p90}, {"p99", p.p99}, {"max", p.max}};
  };
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"id", row.id},
                    {"move", to_string(row.move)},
                    {"n", row.n},
                    {"coreLength", row.core_length},
                    {"verdict", to_string(row.verdict)},
                    {"states", row.states},
                    {"certLen", row.cert_len},
                    {"replayOk", row.replay_ok},
                    {"millis", with_timing ? row.millis : 0.0}});
  }
  ordered_json j{{"schemaVersion", 1},
                 {"rows", rows},
                 {"found", r.found},
                 {"notAdmitted", r.not_admitted},
                 {"inconclusive", r.inconclusive},
                 {"states", pct(r.states)},
                 {"millis", with_timing ? pct(r.millis) : pct(Percentiles{})}};
  return j.dump(2) + "\n";
}

std::vector<InstanceSpec> default_suite(TargetMove kind, int count, std::uint64_t seed) {
  std::vector<int> ns;
  switch (kind) {
    case TargetMove::Destabilization: ns = {2, 3, 4, 5}; break;
    case TargetMove::ThinExchange: ns = {4, 5}; break;
    case TargetMove::ElementaryFlype: ns = {3, 4}; break;
    case TargetMove::DoubleDestabilization: ns = {4, 5}; break;
  }
  std::mt19937_64 rng(seed);
  std::vector<InstanceSpec> out;
  for (int i = 0; i < count; ++i) {
    InstanceSpec s;
    s.target = kind;
    s.n = ns[static_cast<std::size_t>(i) % ns.size()];
    s.core_length = 2 + pick(rng, 5);
    s.obf_conj_length = pick(rng, 7);
    s.obf_rewrites = pick(rng, 7);
    s.seed = rng();
    out.push_back(s);
  }
  return out;
}

}  // namespace braidforge
