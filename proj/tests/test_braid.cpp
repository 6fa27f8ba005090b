#include <random>

#include "braidforge/braid.hpp"
#include "braidforge/garside.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace braidforge;

namespace {

BraidWord W(const char* s) { return parse_word(s); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

std::vector<std::vector<int>> off_diagonal(std::vector<std::vector<int>> m) {
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = 0;
  return m;
}

}  // namespace

TEST_CASE("parse and format") {
  CHECK(W("n=3: 1 2") == BraidWord{3, {1, 2}});
  CHECK(W("n=2: 1 1 1") == BraidWord{2, {1, 1, 1}});
  CHECK(code_of([] { W("n=3: 3"); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { W("3: 1"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { W("n=3: 0"); }) == ErrorCode::ParseError);
  CHECK(W("n=2:").empty());
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const auto w = support::random_word(rng, 2 + k % 5, k % 13);
    CHECK(parse_word(format_word(w)) == w);
  }
}

TEST_CASE("cyclic reduction") {
  CHECK(cyclic_reduce(W("n=2: 1 -1")).empty());
  CHECK(cyclic_reduce(W("n=3: 2 1 -2")) == W("n=3: 1"));
  CHECK(cyclic_reduce(W("n=3: 1 2")) == W("n=3: 1 2"));
}

TEST_CASE("cyclic reduction properties") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const auto w = support::random_word(rng, 2 + k % 4, k % 17);
    const auto r = cyclic_reduce(w);
    const std::size_t m = r.size();
    for (std::size_t j = 0; j < m && m > 1; ++j) {
      CHECK(r.letters[j] != -r.letters[(j + 1) % m]);
    }
    CHECK(support::same_up_to_relabeling(support::track_linking(w).counts, support::track_linking(r).counts));
    CHECK(exponent_sum(w) == exponent_sum(r));
    CHECK(support::power_traces(w, 3) == support::power_traces(r, 3));
  }
}

TEST_CASE("commuting reduction and far commutation class") {
  CHECK(commuting_reduce(W("n=4: 1 3 -1 2")) == W("n=4: 3 2"));
  CHECK(commuting_reduce(W("n=4: 1 2 -1 2")).size() == 4);
  const auto cls = far_commutation_class(W("n=4: 1 3 2"));
  CHECK(cls.size() == 2);  // 1 3 2 and 3 1 2
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const auto w = support::random_word(rng, 3 + k % 3, 1 + k % 10);
    const auto r = commuting_reduce(w);
    CHECK(support::power_traces(w, 5) == support::power_traces(r, 5));
    CHECK(commuting_reduce(r) == r);
    for (const auto& v : far_commutation_class(w, 64)) {
      CHECK(cyclically_equal(least_rotation(v), v));
      CHECK(support::power_traces(v, 7) == support::power_traces(w, 7));
    }
  }
}

TEST_CASE("closure components") {
  auto c = closure_components(W("n=2: 1 1"));
  CHECK(c.count == 2);
  c = closure_components(W("n=2: 1"));
  CHECK(c.count == 1);
  c = closure_components(W("n=3:"));
  CHECK(c.count == 3);
  CHECK(c.permutation == std::vector<int>{0, 1, 2});
  c = closure_components(W("n=3: 1 2"));
  CHECK(c.count == 1);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    const auto w = support::random_word(rng, 2 + k % 5, k % 12);
    CHECK(closure_components(w).count == support::track_linking(w).components);
  }
}

TEST_CASE("linking matrix against strand tracking") {
  CHECK(linking_matrix_of_word(W("n=2: 1 1")).entry(0, 1) == doctest::Approx(1.0));
  CHECK(linking_matrix_of_word(W("n=2: -1 -1")).entry(0, 1) == doctest::Approx(-1.0));
  const auto z = linking_matrix_of_word(W("n=3:"));
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) CHECK(z.entry(a, b) == 0.0);
  }
  std::mt19937_64 rng(13);
  for (int k = 0; k < 500; ++k) {
    const auto w = support::random_word(rng, 2 + k % 6, k % 20);
    // same numbering convention, so the counts must agree exactly
    CHECK(support::counts_of(linking_matrix_of_word(w)) == support::track_linking(w).counts);
  }
}

TEST_CASE("destabilization form") {
  auto f = detect_destabilization_form(W("n=3: 1 2"));
  REQUIRE(f);
  CHECK(f->reduced.letters == std::vector<int>{1});
  CHECK_FALSE(detect_destabilization_form(W("n=3: 2 1 2")));
  f = detect_destabilization_form(W("n=2: 1"));
  REQUIRE(f);
  CHECK(f->reduced.empty());
  CHECK(destabilize_word(W("n=3: 1 2")) == W("n=2: 1"));
  CHECK(destabilize_word(W("n=2: 1")) == BraidWord{1, {}});
  CHECK(code_of([] { destabilize_word(W("n=3: 2 1 2")); }) == ErrorCode::NotInDestabilizationForm);
}

TEST_CASE("destabilization preserves components and off-diagonal linking") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    const int n = 3 + k % 3;
    auto w = support::random_word(rng, n - 1, k % 9);
    w.strands = n;
    w.letters.insert(w.letters.begin() + static_cast<long>(rng() % (w.size() + 1)), (k % 2 ? 1 : -1) * (n - 1));
    const auto d = destabilize_word(w);
    const auto a = support::track_linking(w), b = support::track_linking(d);
    REQUIRE(a.components == b.components);
    CHECK(support::same_up_to_relabeling(off_diagonal(a.counts), off_diagonal(b.counts)));
  }
}

TEST_CASE("double destabilization form") {
  auto f = detect_double_destabilization_form(W("n=4: 1 2 3 1 2"));
  REQUIRE(f);
  CHECK(f->prefix.letters == std::vector<int>{1});
  CHECK(f->epsilon == 1);
  CHECK_FALSE(detect_double_destabilization_form(W("n=4: 1 2 3 1 -2")));
  f = detect_double_destabilization_form(W("n=4: -2 -3 -1 -2"));
  REQUIRE(f);
  CHECK(f->prefix.empty());
  CHECK(f->epsilon == -1);
  CHECK(code_of([] { detect_double_destabilization_form(W("n=3: 1 2")); }) == ErrorCode::StrandCountTooSmall);
}

TEST_CASE("exchange forms") {
  auto forms = enumerate_exchange_forms(W("n=4: 1 3"));
  REQUIRE(forms.size() == 1);
  CHECK(forms[0].s == 2);
  CHECK(forms[0].t == 2);
  CHECK(forms[0].thin);
  forms = enumerate_exchange_forms(W("n=4: 1 2 1 3"));
  bool seen = false;
  for (const auto& f : forms) {
    seen |= f.w_block == std::vector<int>{1, 2, 1} && f.u_block == std::vector<int>{3} && f.s == 2 && f.t == 2;
  }
  CHECK(seen);
  CHECK(enumerate_exchange_forms(W("n=3: 1 2")).empty());

  const auto x = W("n=4: 1 3");
  const auto f = enumerate_exchange_forms(x).front();
  CHECK(apply_exchange_move(x, f, 1) == W("n=4: 1 2 2 3 -2 -2"));
  CHECK(apply_exchange_move(x, f, -1) == W("n=4: 1 -2 -2 3 2 2"));
}

TEST_CASE("exchange and flype preserve closure invariants") {
  std::mt19937_64 rng(19);
  int exchanged = 0, flyped = 0;
  for (int k = 0; k < 400; ++k) {
    const int n = 3 + k % 4;
    const auto w = support::random_word(rng, n, 3 + k % 8);
    const auto base = support::track_linking(w);
    for (const auto& f : enumerate_exchange_forms(w)) {
      for (int sgn : {1, -1}) {
        const auto y = apply_exchange_move(w, f, sgn);
        CHECK(support::same_up_to_relabeling(base.counts, support::track_linking(y).counts));
        ++exchanged;
      }
    }
    for (const auto& f : enumerate_elementary_flype_forms(w)) {
      const auto y = apply_elementary_flype(w, f);
      // self-writhe may move between components; linking numbers may not
      CHECK(support::same_up_to_relabeling(off_diagonal(base.counts), off_diagonal(support::track_linking(y).counts)));
      CHECK(exponent_sum(y) == exponent_sum(w));
      ++flyped;
    }
  }
  CHECK(exchanged > 0);
  CHECK(flyped > 0);
}

TEST_CASE("flype forms and application") {
  auto forms = enumerate_elementary_flype_forms(W("n=3: 1 2 2 1 2"));
  bool seen = false;
  for (const auto& f : forms) {
    seen |= f.w1_block == std::vector<int>{1} && f.p == 2 && f.w2_block == std::vector<int>{1} && f.delta == 1;
  }
  CHECK(seen);
  CHECK(enumerate_elementary_flype_forms(W("n=4: 1 3 2")).empty());
  CHECK(enumerate_elementary_flype_forms(W("n=3: 1 2 2")).empty());

  auto apply_first = [](const BraidWord& w, int p, int delta) {
    for (const auto& f : enumerate_elementary_flype_forms(w)) {
      if (f.p == p && f.delta == delta) return apply_elementary_flype(w, f);
    }
    FAIL("form not found");
    return w;
  };
  CHECK(cyclically_equal(apply_first(W("n=3: 1 2 2 1 2"), 2, 1), W("n=3: 1 2 1 2 2")));
  CHECK(cyclically_equal(apply_first(W("n=3: 1 2 1 2"), 1, 1), W("n=3: 1 2 1 2")));
  CHECK(cyclically_equal(apply_first(W("n=3: 1 2 2 1 -2"), 2, -1), W("n=3: 1 -2 1 2 2")));
}

TEST_CASE("flype twice returns the original up to rotation") {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    const int n = 3 + k % 3;
    const auto w = support::random_word(rng, n, 4 + k % 8);
    for (const auto& f : enumerate_elementary_flype_forms(w)) {
      if (f.p != f.delta * std::abs(f.p)) continue;
      const auto y = apply_elementary_flype(w, f);
      bool back = false;
      for (const auto& g : enumerate_elementary_flype_forms(y)) {
        back |= cyclically_equal(apply_elementary_flype(y, g), w);
      }
      CHECK(back);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("full twist is central on its strands") {
  // the full twist on 1..n commutes with every generator (Burau check)
  for (int n = 2; n <= 5; ++n) {
    BraidWord t{n, full_twist_letters(1, n, 1)};
    for (int i = 1; i < n; ++i) {
      BraidWord g{n, {i}};
      CHECK(support::burau_equal(concat(t, g), concat(g, t)));
    }
    CHECK(exponent_sum(t) == n * (n - 1));
    CHECK(support::burau_equal(concat(t, BraidWord{n, full_twist_letters(1, n, -1)}), BraidWord{n, {}}));
  }
}
