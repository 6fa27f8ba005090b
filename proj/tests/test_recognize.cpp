#include <chrono>

#include "braidforge/recognize.hpp"
#include "braidforge/transit.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace braidforge;

namespace {

BraidWord W(const char* s) { return parse_word(s); }

// Independent reading of the terminal pattern: the syntactic detectors on
// the form word the claim points at.
bool detector_accepts(TargetMove kind, const BraidWord& w) {
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

void check_found(TargetMove kind, const BraidWord& w) {
  const Verdict v = recognize(kind, w);
  REQUIRE(v.outcome == Outcome::Found);
  REQUIRE(v.certificate);
  const auto& c = *v.certificate;
  CHECK(replay_certificate(c).ok());
  CHECK(detector_accepts(kind, c.claim.form_word));
  CHECK(c.claim.kind == kind);
  // the search never leaves the braid index and never splits components
  const auto end = terminal_state(c);
  CHECK(flatten(end.grid).strands == w.strands);
  CHECK(grid_components(end.grid).count == closure_components(w).count);
  CHECK(c.initial_word == commuting_reduce(w));
}

}  // namespace

TEST_CASE("destabilization") {
  check_found(TargetMove::Destabilization, W("n=3: 1 2"));
  check_found(TargetMove::Destabilization, W("n=3: 2 1 1 2 -1 -2"));
  check_found(TargetMove::Destabilization, W("n=2: 1"));
  const auto v = recognize_destabilization(W("n=2: 1 1 1"));
  CHECK(v.outcome == Outcome::NotAdmitted);
  CHECK_FALSE(v.certificate);
}

TEST_CASE("thin exchange") {
  check_found(TargetMove::ThinExchange, W("n=4: 1 3"));
  check_found(TargetMove::ThinExchange, W("n=4: 2 1 3 -2"));
  CHECK(recognize_thin_exchange(W("n=2: 1")).outcome == Outcome::NotAdmitted);
}

TEST_CASE("elementary flype") {
  check_found(TargetMove::ElementaryFlype, W("n=3: 1 2 2 1 2"));
  check_found(TargetMove::ElementaryFlype, W("n=3: -1 1 2 2 1 2 1"));
  CHECK(recognize_elementary_flype(W("n=2: 1 1 1")).outcome == Outcome::NotAdmitted);
  CHECK(recognize_elementary_flype(W("n=3: 1")).outcome == Outcome::NotAdmitted);
}

TEST_CASE("double destabilization") {
  check_found(TargetMove::DoubleDestabilization, W("n=4: 1 2 3 1 2"));
  check_found(TargetMove::DoubleDestabilization, W("n=4: -2 -3 -1 -2"));
  check_found(TargetMove::DoubleDestabilization, W("n=4: 3 1 2 3 1 2 -3"));
  // mixed signs: the pattern never appears; the search may not finish
  // within budget, but it must never claim Found
  SearchBudget small;
  small.max_states = 2000;
  CHECK(recognize_double_destabilization(W("n=4: 1 2 -3 1 2"), small).outcome != Outcome::Found);
}

TEST_CASE("small strand counts") {
  CHECK(recognize_thin_exchange(W("n=3: 1 2")).outcome == Outcome::NotAdmitted);
  CHECK(recognize_double_destabilization(W("n=3: 1 2")).outcome == Outcome::NotAdmitted);
}

TEST_CASE("budget exhaustion is inconclusive") {
  SearchBudget tiny;
  tiny.max_states = 1;
  const auto v = recognize_destabilization(W("n=3: 1 1 1 2 2 2"), tiny);
  CHECK(v.outcome == Outcome::Inconclusive);
  // the trefoil needs no search: its only component sits on two strands
  const auto t = recognize_destabilization(W("n=2: 1 1 1"), tiny);
  CHECK(t.outcome == Outcome::NotAdmitted);
}

TEST_CASE("syntactic pattern check") {
  CHECK(word_admits(TargetMove::Destabilization, W("n=3: 1 2")));
  CHECK_FALSE(word_admits(TargetMove::Destabilization, W("n=3: 2 1 2")));
  CHECK(word_admits(TargetMove::DoubleDestabilization, W("n=4: 1 2 3 1 2")));
  CHECK(word_admits(TargetMove::ThinExchange, W("n=4: 1 3")));
  CHECK(word_admits(TargetMove::ElementaryFlype, W("n=3: 1 2 2 1 2")));
  // the arrangement search finds the pattern behind far commutations
  const auto a = admitting_arrangement(TargetMove::DoubleDestabilization, W("n=5: 3 4 1 2 3"));
  REQUIRE(a);
  CHECK(word_admits(TargetMove::DoubleDestabilization, *a));
}

TEST_CASE("replay rejects tampered certificates") {
  const auto v = recognize_destabilization(W("n=3: 2 1 1 2 -1 -2"));
  REQUIRE(v.certificate);
  auto c = *v.certificate;
  REQUIRE(replay_certificate(c).ok());

  auto bad = c;
  if (bad.moves.empty()) {
    bad.moves.push_back({MoveKind::VExchange, 999, 0, -1, 0});
  } else {
    bad.moves.front().a += 999;
  }
  auto r = replay_certificate(bad);
  CHECK(r.error == ReplayError::InvalidMoveAtStep);
  CHECK(r.step == 0);

  auto wrong = c;
  wrong.claim.kind = TargetMove::ThinExchange;
  CHECK(replay_certificate(wrong).error == ReplayError::PatternMismatch);
}

TEST_CASE("related by move") {
  const auto x = W("n=4: 1 3");
  const auto f = enumerate_exchange_forms(x).front();
  for (int sgn : {1, -1}) {
    const auto v = related_by_move(x, apply_exchange_move(x, f, sgn), TargetMove::ThinExchange);
    CHECK(v.outcome == Outcome::Found);
    CHECK(v.related_word);
  }
  CHECK(related_by_move(W("n=3: 1 2 2 1 2"), W("n=3: 1 2 1 2 2"), TargetMove::ElementaryFlype).outcome ==
        Outcome::Found);
  CHECK(related_by_move(W("n=4: 1 2 3 1 2"), W("n=2: 1"), TargetMove::DoubleDestabilization).outcome ==
        Outcome::Found);

  const auto t0 = std::chrono::steady_clock::now();
  const auto v = related_by_move(W("n=4: 1 3"), W("n=4: 1 -3"), TargetMove::ThinExchange);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  CHECK(v.outcome == Outcome::NotAdmitted);
  CHECK(ms < 1.0);
}

TEST_CASE("recognizer agrees with the plain search") {
  // every word of length <= 2 on at most 3 strands
  std::vector<BraidWord> words;
  for (int n = 2; n <= 3; ++n) {
    words.push_back({n, {}});
    for (int a = -(n - 1); a <= n - 1; ++a) {
      if (a == 0) continue;
      words.push_back({n, {a}});
      for (int b = -(n - 1); b <= n - 1; ++b) {
        if (b != 0) words.push_back({n, {a, b}});
      }
    }
  }
  for (const auto& w : words) {
    const auto g = braid_to_grid(w).first;
    const auto plain = plain_destabilization_search(g, 200000);
    const auto v = recognize_destabilization(w);
    INFO(format_word(w));
    REQUIRE(plain.outcome != Outcome::Inconclusive);
    CHECK(v.outcome == plain.outcome);
  }
}
