#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "braidforge/braid.hpp"
#include "braidforge/grid.hpp"

namespace braidforge {

struct SearchBudget {
  // cap on memoized states per root choice
  std::size_t max_states = 100000;
  std::size_t max_moves_per_certificate = 10000;
};

// Default budget, honouring BRAIDFORGE_MAX_STATES when set.
SearchBudget default_budget();

enum class TargetMove { Destabilization, ThinExchange, ElementaryFlype, DoubleDestabilization };

const char* to_string(TargetMove t);
std::optional<TargetMove> target_move_from_string(const std::string& s);

struct Claim {
  TargetMove kind = TargetMove::Destabilization;
  // flattened, cyclically reduced word of the terminal diagram
  BraidWord terminal_word;
  // far-commutation rearrangement of terminal_word in which the pattern is read
  BraidWord form_word;
  // vertical arcs whose sweep emits the letters the pattern is built on
  std::vector<ArcRef> witness;

  friend bool operator==(const Claim&, const Claim&) = default;
};

struct MoveCertificate {
  // the input after commuting_reduce; initial_grid is built from it
  BraidWord initial_word;
  ArcPresentation initial_grid;
  ShearingConfig config;
  Marking initial_marking;
  std::vector<ElementaryMove> moves;
  Claim claim;

  friend bool operator==(const MoveCertificate&, const MoveCertificate&) = default;
};

enum class Outcome { Found, NotAdmitted, Inconclusive };
const char* to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::optional<MoveCertificate> certificate;
  std::size_t states_visited = 0;
  std::size_t roots_explored = 0;
  double millis = 0.0;
  // related_by_move: the word obtained from x by the witnessing move
  std::optional<BraidWord> related_word;
  std::string note;
};

Verdict recognize_destabilization(const BraidWord& w, const SearchBudget& b = default_budget());
Verdict recognize_thin_exchange(const BraidWord& w, const SearchBudget& b = default_budget());
Verdict recognize_elementary_flype(const BraidWord& w, const SearchBudget& b = default_budget());
Verdict recognize_double_destabilization(const BraidWord& w, const SearchBudget& b = default_budget());
Verdict recognize(TargetMove kind, const BraidWord& w, const SearchBudget& b = default_budget());

// Is y obtained from x by one move of the given kind
// (up to conjugacy)? kind must be ThinExchange, ElementaryFlype or
// DoubleDestabilization.
Verdict related_by_move(const BraidWord& x, const BraidWord& y, TargetMove kind,
                        const SearchBudget& b = default_budget());

// Syntactic check of the terminal pattern on a flattened word.
bool word_admits(TargetMove kind, const BraidWord& w);

// A rearrangement of w by far commutations (w itself first) that passes
// word_admits, if one exists.
std::optional<BraidWord> admitting_arrangement(TargetMove kind, const BraidWord& w);

enum class ReplayError { None, InvalidMoveAtStep, PatternMismatch, ComplexityIncreased };
const char* to_string(ReplayError e);

struct ReplayResult {
  ReplayError error = ReplayError::None;
  int step = -1;
  std::string detail;
  bool ok() const { return error == ReplayError::None; }
};

ReplayResult replay_certificate(const MoveCertificate& c);

// Final state of a certificate (no checks).
GridState terminal_state(const MoveCertificate& c);

// Oracle: unmarked, interval-free search over exact diagrams (no key
// collapsing) for a diagram whose flattened word is in destabilization form.
struct PlainSearchResult {
  Outcome outcome = Outcome::Inconclusive;
  std::size_t states = 0;
};
PlainSearchResult plain_destabilization_search(const ArcPresentation& g, std::size_t max_states);

}  // namespace braidforge
