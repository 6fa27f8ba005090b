#include <random>

#include "braidforge/corpus.hpp"
#include "braidforge/garside.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace braidforge;

namespace {

bool core_in_form(TargetMove kind, const BraidWord& w) {
  switch (kind) {
    case TargetMove::Destabilization:
      return detect_destabilization_form(w).has_value();
    case TargetMove::ThinExchange:
      for (const auto& f : enumerate_exchange_forms(w)) {
        if (f.thin) return true;
      }
      return false;
    case TargetMove::ElementaryFlype:
      return !enumerate_elementary_flype_forms(w).empty();
    case TargetMove::DoubleDestabilization:
      return detect_double_destabilization_form(w).has_value();
  }
  return false;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("instances are deterministic per seed") {
  for (auto kind : {TargetMove::Destabilization, TargetMove::ThinExchange, TargetMove::ElementaryFlype,
                    TargetMove::DoubleDestabilization}) {
    for (const auto& spec : default_suite(kind, 12, 77)) {
      const auto a = random_obfuscated_instance(spec);
      const auto b = random_obfuscated_instance(spec);
      CHECK(a.word == b.word);
      CHECK(a.witness.core == b.witness.core);
      CHECK(a.witness.rewrites == b.witness.rewrites);
    }
  }
  CHECK(default_suite(TargetMove::ThinExchange, 5, 1).size() == 5);
}

TEST_CASE("cores are in form and obfuscation keeps the conjugacy class") {
  for (auto kind : {TargetMove::Destabilization, TargetMove::ThinExchange, TargetMove::ElementaryFlype,
                    TargetMove::DoubleDestabilization}) {
    for (const auto& spec : default_suite(kind, 25, 5)) {
      const auto inst = random_obfuscated_instance(spec);
      INFO(format_word(inst.word));
      CHECK(core_in_form(kind, inst.witness.core));
      CHECK(inst.word.strands == spec.n);
      CHECK(static_cast<int>(inst.witness.rewrites.size()) <= spec.obf_rewrites);
      CHECK(support::power_traces(inst.word, 17) == support::power_traces(inst.witness.core, 17));
      if (spec.n <= 4 && inst.word.size() <= 16) {
        try {
          CHECK(are_conjugate(inst.word, inst.witness.core));
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::BudgetExceeded);
        }
      }
    }
  }
}

TEST_CASE("rewrites keep the group element") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 500; ++k) {
    auto w = support::random_word(rng, 3 + k % 4, 2 + k % 9);
    const auto before = w;
    random_rewrite(w, rng);
    CHECK(support::burau_equal(before, w));
  }
}

TEST_CASE("incompatible specs") {
  InstanceSpec s;
  s.target = TargetMove::ThinExchange;
  s.n = 3;
  CHECK(code_of([&] { random_obfuscated_instance(s); }) == ErrorCode::SpecIncompatible);
  s.target = TargetMove::DoubleDestabilization;
  CHECK(code_of([&] { random_obfuscated_instance(s); }) == ErrorCode::SpecIncompatible);
  s.target = TargetMove::Destabilization;
  s.obf_rewrites = -1;
  CHECK(code_of([&] { random_obfuscated_instance(s); }) == ErrorCode::SpecIncompatible);
}

TEST_CASE("benchmark reports") {
  const auto empty = run_benchmark_suite({}, default_budget());
  CHECK(empty.rows.empty());
  CHECK(report_csv(empty, false) == "id,move,n,coreLength,verdict,states,certLen,millis\n");

  const auto specs = default_suite(TargetMove::Destabilization, 6, 3);
  const auto r = run_benchmark_suite(specs, default_budget());
  CHECK(r.rows.size() == 6);
  CHECK(r.found + r.not_admitted + r.inconclusive == 6);
  CHECK(report_csv(r, false) == report_csv(run_benchmark_suite(specs, default_budget()), false));
  CHECK(report_json(r, false) == report_json(run_benchmark_suite(specs, default_budget()), false));
  CHECK(r.states.p50 <= r.states.p90);
  CHECK(r.states.p90 <= r.states.p99);
  CHECK(r.states.p99 <= r.states.max);

  SearchBudget tiny;
  tiny.max_states = 1;
  // rows that run out of budget are kept, not dropped
  const auto t = run_benchmark_suite(default_suite(TargetMove::ElementaryFlype, 8, 9), tiny);
  CHECK(t.rows.size() == 8);
}
