#include "braidforge/recognize.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <queue>
#include <unordered_set>

#include "braidforge/garside.hpp"
#include "braidforge/transit.hpp"
#include "grid_internal.hpp"

namespace braidforge {

SearchBudget default_budget() {
  SearchBudget b;
  if (const char* env = std::getenv("BRAIDFORGE_MAX_STATES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) b.max_states = static_cast<std::size_t>(v);
  }
  return b;
}

namespace {

constexpr const char* kTargetNames[] = {"destab", "thin-exchange", "flype", "double-destab"};

}  // namespace

const char* to_string(TargetMove t) { return kTargetNames[static_cast<int>(t)]; }

std::optional<TargetMove> target_move_from_string(const std::string& s) {
  for (int i = 0; i < 4; ++i) {
    if (s == kTargetNames[i]) return static_cast<TargetMove>(i);
  }
  if (s == "destabilization") return TargetMove::Destabilization;
  if (s == "thinExchange") return TargetMove::ThinExchange;
  if (s == "elementaryFlype") return TargetMove::ElementaryFlype;
  if (s == "doubleDestab") return TargetMove::DoubleDestabilization;
  return std::nullopt;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Found: return "FOUND";
    case Outcome::NotAdmitted: return "NOT ADMITTED";
    case Outcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(ReplayError e) {
  switch (e) {
    case ReplayError::None: return "ok";
    case ReplayError::InvalidMoveAtStep: return "InvalidMoveAtStep";
    case ReplayError::PatternMismatch: return "PatternMismatch";
    case ReplayError::ComplexityIncreased: return "ComplexityIncreased";
  }
  return "?";
}

bool word_admits(TargetMove kind, const BraidWord& w) {
  const int n = w.strands;
  switch (kind) {
    case TargetMove::Destabilization:
      return n >= 2 && detect_destabilization_form(w).has_value();
    case TargetMove::ThinExchange: {
      if (n < 4) return false;
      for (const auto& f : enumerate_exchange_forms(w)) {
        if (f.thin) return true;
      }
      return false;
    }
    case TargetMove::ElementaryFlype:
      return n >= 3 && !enumerate_elementary_flype_forms(w).empty();
    case TargetMove::DoubleDestabilization:
      return n >= 4 && detect_double_destabilization_form(w).has_value();
  }
  return false;
}

std::optional<BraidWord> admitting_arrangement(TargetMove kind, const BraidWord& w) {
  if (word_admits(kind, w)) return w;
  // rotations already cover destabilization; other patterns need enough
  // letters of the top indices before the rearrangements are worth listing
  const int n = w.strands;
  auto count = [&](int i) {
    return std::count_if(w.letters.begin(), w.letters.end(), [i](int x) { return std::abs(x) == i; });
  };
  switch (kind) {
    case TargetMove::Destabilization: return std::nullopt;
    case TargetMove::ElementaryFlype:
      if (n < 3 || count(n - 1) < 2) return std::nullopt;
      break;
    case TargetMove::DoubleDestabilization:
      if (n < 4 || count(n - 1) != 1 || count(n - 2) != 2 || count(n - 3) < 1) return std::nullopt;
      break;
    case TargetMove::ThinExchange:
      if (n < 4) return std::nullopt;
      break;
  }
  for (auto& v : far_commutation_class(w)) {
    if (word_admits(kind, v)) return std::move(v);
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

using Goal = std::function<std::optional<Claim>(const GridState&)>;

Claim make_claim(TargetMove kind, const GridState& s, BraidWord reduced, BraidWord form) {
  Claim c;
  c.kind = kind;
  c.terminal_word = std::move(reduced);
  c.form_word = std::move(form);
  const auto [flat, trace] = grid_to_braid(s.grid);
  const int top = flat.strands - 1;
  for (std::size_t col = 0; col < trace.column_to_letters.size(); ++col) {
    for (int l : trace.column_to_letters[col]) {
      if (std::abs(l) == top) {
        c.witness.push_back({false, static_cast<int>(col)});
        break;
      }
    }
  }
  return c;
}

Goal pattern_goal(TargetMove kind) {
  return [kind](const GridState& s) -> std::optional<Claim> {
    BraidWord r = cyclic_reduce(flatten(s.grid));
    auto form = admitting_arrangement(kind, commuting_reduce(r));
    if (!form) return std::nullopt;
    return make_claim(kind, s, std::move(r), std::move(*form));
  };
}

enum class RootStatus { Found, Exhausted, Capped };

struct RootRun {
  RootStatus status = RootStatus::Capped;
  std::size_t states = 0;
  std::vector<ElementaryMove> path;
  Claim claim;
};

// Best-first search ordered by (sheared complexity, insertion order). Goals
// are tested as states are generated.
RootRun search_root(const GridState& start, const Goal& goal, std::size_t cap, std::size_t max_depth,
                    bool collapse_keys) {
  struct Node {
    GridState state;
    int parent;
    ElementaryMove move;
    std::size_t depth;
  };
  RootRun run;
  std::vector<Node> nodes;
  std::unordered_set<std::string> seen;
  auto key_of = [&](const GridState& s) { return collapse_keys ? canonical_key(s) : full_key(s.grid); };
  auto finish = [&](int idx, Claim claim) {
    for (int i = idx; i > 0; i = nodes[static_cast<std::size_t>(i)].parent) {
      run.path.push_back(nodes[static_cast<std::size_t>(i)].move);
    }
    std::reverse(run.path.begin(), run.path.end());
    run.status = RootStatus::Found;
    run.claim = std::move(claim);
    run.states = nodes.size();
    return run;
  };

  using Entry = std::pair<std::pair<int, std::size_t>, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  nodes.push_back({start, -1, {}, 0});
  seen.insert(key_of(start));
  if (auto c = goal(start)) return finish(0, std::move(*c));
  open.push({{sheared_complexity(start.grid, start.config), 0}, 0});
  bool capped = false;
  while (!open.empty()) {
    const int idx = open.top().second;
    open.pop();
    if (nodes[static_cast<std::size_t>(idx)].depth >= max_depth) {
      capped = true;
      continue;
    }
    const auto moves = enumerate_elementary_moves(nodes[static_cast<std::size_t>(idx)].state);
    for (const auto& mv : moves) {
      GridState next = detail::apply_move_unchecked(nodes[static_cast<std::size_t>(idx)].state, mv);
      if (!seen.insert(key_of(next)).second) continue;
      if (nodes.size() >= cap) {
        capped = true;
        break;
      }
      const std::size_t depth = nodes[static_cast<std::size_t>(idx)].depth + 1;
      const int sc = sheared_complexity(next.grid, next.config);
      nodes.push_back({std::move(next), idx, mv, depth});
      const int id = static_cast<int>(nodes.size()) - 1;
      if (auto c = goal(nodes.back().state)) return finish(id, std::move(*c));
      open.push({{sc, static_cast<std::size_t>(id)}, id});
    }
    if (capped && nodes.size() >= cap) break;
  }
  run.states = nodes.size();
  run.status = capped ? RootStatus::Capped : RootStatus::Exhausted;
  return run;
}

// --- root choices -----------------------------------------------------------

struct RootFamily {
  ShearingConfig config;
  // lazily generated markings for this placement
  std::function<std::vector<Marking>()> markings;
};

std::vector<int> rows_over_gap(const ArcPresentation& g, int gap) {
  std::vector<int> out;
  for (int r = 0; r < g.size(); ++r) {
    if (g.covers_gap(r, gap)) out.push_back(r);
  }
  return out;
}

// Edge paths that start and end on horizontal arcs crossing the gap, one lap
// at most, on components that wind more than once.
std::vector<Marking> edge_paths_over_gap(const ArcPresentation& g, int gap) {
  std::vector<Marking> out;
  const auto comps = grid_components(g);
  for (int h1 : rows_over_gap(g, gap)) {
    const int comp = comps.row_component[static_cast<std::size_t>(h1)];
    if (component_winding(g, comps, comp) < 2) continue;
    for (int r = g.row_starting_at(g.end(h1)); r != h1; r = g.row_starting_at(g.end(r))) {
      if (g.covers_gap(r, gap)) out.push_back({h1, r, {}});
    }
  }
  return out;
}

std::vector<Marking> protected_markings(const ArcPresentation& g, int gap, int extra) {
  std::vector<Marking> out;
  const auto crossing = rows_over_gap(g, gap);
  for (const auto& e : edge_paths_over_gap(g, gap)) {
    std::vector<int> free_rows;
    for (int r : crossing) {
      if (!row_in_path(g, e, r)) free_rows.push_back(r);
    }
    // too few free strands: protect as many as there are
    const std::size_t want = std::min(free_rows.size(), static_cast<std::size_t>(extra));
    if (want == 0) {
      out.push_back(e);
    } else if (want == 1) {
      for (int h : free_rows) out.push_back({e.first_row, e.last_row, {h}});
    } else {
      for (std::size_t i = 0; i < free_rows.size(); ++i) {
        for (std::size_t j = 0; j < free_rows.size(); ++j) {
          if (i != j) out.push_back({e.first_row, e.last_row, {free_rows[i], free_rows[j]}});
        }
      }
    }
  }
  return out;
}

std::vector<RootFamily> root_families(TargetMove kind, const ArcPresentation& g) {
  std::vector<RootFamily> out;
  auto add = [&](int k, bool mirrored, int extra) {
    for (const auto& p : place_shearing_intervals(g, k, mirrored)) {
      const int gap = p.gap;
      out.push_back({p.config, [&g, gap, extra]() {
                       return extra == 0 ? edge_paths_over_gap(g, gap) : protected_markings(g, gap, extra);
                     }});
    }
  };
  switch (kind) {
    case TargetMove::Destabilization: add(1, false, 0); break;
    case TargetMove::ThinExchange:
    case TargetMove::DoubleDestabilization: add(2, false, 1); break;
    case TargetMove::ElementaryFlype:
      add(3, false, 2);
      add(3, true, 2);
      break;
  }
  return out;
}

struct SearchOutcome {
  Outcome outcome = Outcome::Inconclusive;
  std::optional<MoveCertificate> certificate;
  std::size_t states = 0;
  std::size_t roots = 0;
  std::string note;
};

// Root choices are (placement, marking) pairs; NotAdmitted needs every one of
// them exhausted. The interval-free root and the unmarked root of each
// placement only forbid fewer moves, so they are run as shortcuts towards a
// goal but never decide a negative answer.
// settle(): consulted once after the first phase leaves the question open; a
// non-empty reason ends the search with NotAdmitted.
SearchOutcome run_roots(TargetMove kind, const BraidWord& w, const Goal& goal, const SearchBudget& b,
                        const std::function<std::string()>& settle) {
  SearchOutcome out;
  const ArcPresentation g = braid_to_grid(w).first;
  const std::size_t cap = std::max<std::size_t>(1, b.max_states);
  const std::size_t total_cap = cap * 20;

  struct Pending {
    ShearingConfig config;
    Marking marking;
    bool decisive = false;
    bool done = false;
  };
  std::vector<Pending> roots;
  roots.push_back({ShearingConfig{}, Marking{}, false});
  const auto families = root_families(kind, g);
  for (const auto& f : families) {
    for (auto& m : f.markings()) roots.push_back({f.config, std::move(m), true});
  }
  const bool marked = roots.size() > 1;
  // with no admissible marking the placement itself is the root choice
  for (const auto& f : families) roots.push_back({f.config, Marking{}, !marked});

  auto decided = [&] {
    return std::all_of(roots.begin(), roots.end(), [](const Pending& r) { return !r.decisive || r.done; });
  };
  std::vector<std::size_t> phases;
  for (std::size_t p : {std::size_t{2000}, std::size_t{20000}}) {
    if (p < cap) phases.push_back(p);
  }
  phases.push_back(cap);
  for (std::size_t limit : phases) {
    for (auto& r : roots) {
      if (r.done) continue;
      if (out.states >= total_cap) return out;
      // shortcuts are skipped once the decisive roots settle the question
      if (!r.decisive && decided()) continue;
      RootRun run = search_root(GridState{g, r.config, r.marking}, goal, limit, b.max_moves_per_certificate, true);
      out.states += run.states;
      ++out.roots;
      if (run.status == RootStatus::Found) {
        MoveCertificate c;
        c.initial_word = w;
        c.initial_grid = g;
        c.config = r.config;
        c.initial_marking = r.marking;
        c.moves = std::move(run.path);
        c.claim = std::move(run.claim);
        out.outcome = Outcome::Found;
        out.certificate = std::move(c);
        return out;
      }
      if (run.status == RootStatus::Exhausted) r.done = true;
    }
    if (decided()) break;
    if (limit == phases.front() && settle) {
      out.note = settle();
      if (!out.note.empty()) {
        out.outcome = Outcome::NotAdmitted;
        return out;
      }
    }
  }
  const bool any_decisive = std::any_of(roots.begin(), roots.end(), [](const Pending& r) { return r.decisive; });
  out.outcome = any_decisive && decided() ? Outcome::NotAdmitted : Outcome::Inconclusive;
  return out;
}

Verdict to_verdict(SearchOutcome s, Clock::time_point t0) {
  Verdict v;
  v.outcome = s.outcome;
  v.certificate = std::move(s.certificate);
  v.states_visited = s.states;
  v.roots_explored = s.roots;
  v.millis = millis_since(t0);
  v.note = std::move(s.note);
  return v;
}

Verdict not_admitted(Clock::time_point t0, std::string note) {
  Verdict v;
  v.outcome = Outcome::NotAdmitted;
  v.millis = millis_since(t0);
  v.note = std::move(note);
  return v;
}

bool has_winding_component(const BraidWord& w) {
  const auto cc = closure_components(w);
  std::vector<int> size(static_cast<std::size_t>(cc.count), 0);
  for (int c : cc.assignment) ++size[static_cast<std::size_t>(c)];
  return std::any_of(size.begin(), size.end(), [](int s) { return s > 1; });
}

// Destabilizing removes one strand from one component, and what is left of
// that component is a braid of its own on one strand fewer. A component on two
// strands is sigma_1^k with k its signed self-crossing count; it only survives
// the loss of a strand when it is the unknot, |k| = 1.
std::string destab_obstruction(const BraidWord& w) {
  const auto cc = closure_components(w);
  const auto lm = linking_matrix_of_word(w);
  std::vector<int> size(static_cast<std::size_t>(cc.count), 0);
  for (int c : cc.assignment) ++size[static_cast<std::size_t>(c)];
  for (int c = 0; c < cc.count; ++c) {
    const int s = size[static_cast<std::size_t>(c)];
    if (s > 2 || (s == 2 && std::abs(lm.signed_count(c, c)) == 1)) return {};
  }
  return "every component on two strands is a nontrivial torus knot";
}

int min_strands(TargetMove kind) {
  switch (kind) {
    case TargetMove::Destabilization: return 2;
    case TargetMove::ElementaryFlype: return 3;
    default: return 4;
  }
}

}  // namespace

Verdict recognize(TargetMove kind, const BraidWord& w, const SearchBudget& b) {
  validate_word(w);
  const auto t0 = Clock::now();
  if (w.strands < min_strands(kind)) return not_admitted(t0, "too few strands");
  if (kind == TargetMove::Destabilization && !has_winding_component(w)) {
    return not_admitted(t0, "no component winds more than once");
  }
  if (kind == TargetMove::ElementaryFlype) {
    const auto r = cyclic_reduce(w);
    if (std::none_of(r.letters.begin(), r.letters.end(), [&](int x) { return std::abs(x) == w.strands - 1; })) {
      return not_admitted(t0, "top strand is split off");
    }
  }
  std::function<std::string()> settle;
  if (kind == TargetMove::Destabilization) settle = [&w] { return destab_obstruction(w); };
  return to_verdict(run_roots(kind, commuting_reduce(w), pattern_goal(kind), b, settle), t0);
}

Verdict recognize_destabilization(const BraidWord& w, const SearchBudget& b) {
  return recognize(TargetMove::Destabilization, w, b);
}
Verdict recognize_thin_exchange(const BraidWord& w, const SearchBudget& b) {
  return recognize(TargetMove::ThinExchange, w, b);
}
Verdict recognize_elementary_flype(const BraidWord& w, const SearchBudget& b) {
  return recognize(TargetMove::ElementaryFlype, w, b);
}
Verdict recognize_double_destabilization(const BraidWord& w, const SearchBudget& b) {
  return recognize(TargetMove::DoubleDestabilization, w, b);
}

// --- related_by_move --------------------------------------------------------

namespace {

// Words reachable from r by one move of the given kind, read syntactically.
std::vector<BraidWord> move_images(TargetMove kind, const BraidWord& r) {
  std::vector<BraidWord> out;
  switch (kind) {
    case TargetMove::ThinExchange:
      if (r.strands < 4) break;
      for (const auto& f : enumerate_exchange_forms(r)) {
        if (!f.thin) continue;
        out.push_back(apply_exchange_move(r, f, 1));
        out.push_back(apply_exchange_move(r, f, -1));
      }
      break;
    case TargetMove::ElementaryFlype:
      if (r.strands < 3) break;
      for (const auto& f : enumerate_elementary_flype_forms(r)) out.push_back(apply_elementary_flype(r, f));
      break;
    case TargetMove::DoubleDestabilization:
      if (r.strands < 4) break;
      if (auto f = detect_double_destabilization_form(r)) out.push_back(BraidWord{r.strands - 2, f->prefix.letters});
      break;
    case TargetMove::Destabilization:
      if (detect_destabilization_form(r)) out.push_back(destabilize_word(r));
      break;
  }
  return out;
}

std::vector<int> off_diagonal_profile(const BraidWord& w) {
  const auto m = linking_matrix_of_word(w);
  std::vector<int> v;
  for (int a = 0; a < m.size(); ++a) {
    for (int c = a + 1; c < m.size(); ++c) v.push_back(m.signed_count(a, c));
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Verdict related_by_move(const BraidWord& x, const BraidWord& y, TargetMove kind, const SearchBudget& b) {
  validate_word(x);
  validate_word(y);
  const auto t0 = Clock::now();
  if (kind == TargetMove::Destabilization) {
    throw Error(ErrorCode::SpecIncompatible, "related_by_move takes thin-exchange, flype or double-destab");
  }
  const bool dd = kind == TargetMove::DoubleDestabilization;
  if (y.strands != x.strands - (dd ? 2 : 0)) return not_admitted(t0, "strand counts incompatible");
  const int dx = exponent_sum(x), dy = exponent_sum(y);
  if (dd ? std::abs(dx - dy) != 4 : dx != dy) return not_admitted(t0, "exponent sums differ");
  if (closure_components(x).count != closure_components(y).count) return not_admitted(t0, "component counts differ");
  if (off_diagonal_profile(x) != off_diagonal_profile(y)) return not_admitted(t0, "linking numbers differ");

  std::optional<BraidWord> witness;
  auto matches = [&](const BraidWord& r) {
    for (const auto& img : move_images(kind, r)) {
      if (are_conjugate(img, y)) {
        witness = img;
        return true;
      }
    }
    return false;
  };
  const Goal goal = [&](const GridState& s) -> std::optional<Claim> {
    BraidWord r = cyclic_reduce(flatten(s.grid));
    const BraidWord q = commuting_reduce(r);
    if (word_admits(kind, q) && matches(q)) return make_claim(kind, s, r, q);
    if (!admitting_arrangement(kind, q)) return std::nullopt;
    for (auto& v : far_commutation_class(q)) {
      if (word_admits(kind, v) && matches(v)) return make_claim(kind, s, std::move(r), std::move(v));
    }
    return std::nullopt;
  };
  Verdict v = to_verdict(run_roots(kind, commuting_reduce(x), goal, b, {}), t0);
  v.related_word = witness;
  if (v.outcome != Outcome::Found) v.related_word.reset();
  return v;
}

// --- replay -----------------------------------------------------------------

GridState terminal_state(const MoveCertificate& c) {
  GridState s{c.initial_grid, c.config, c.initial_marking};
  for (const auto& mv : c.moves) s = apply_elementary_move(s, mv);
  return s;
}

ReplayResult replay_certificate(const MoveCertificate& c) {
  ReplayResult res;
  GridState s{c.initial_grid, c.config, c.initial_marking};
  int prev = sheared_complexity(s.grid, s.config);
  for (std::size_t k = 0; k < c.moves.size(); ++k) {
    if (!move_applicable(s, c.moves[k])) {
      res.error = ReplayError::InvalidMoveAtStep;
      res.step = static_cast<int>(k);
      res.detail = to_string(c.moves[k]);
      return res;
    }
    s = detail::apply_move_unchecked(s, c.moves[k]);
    const int now = sheared_complexity(s.grid, s.config);
    if (now > prev) {
      res.error = ReplayError::ComplexityIncreased;
      res.step = static_cast<int>(k);
      return res;
    }
    prev = now;
  }
  const BraidWord r = cyclic_reduce(flatten(s.grid));
  if (!(r == c.claim.terminal_word)) {
    res.error = ReplayError::PatternMismatch;
    res.detail = "terminal word differs from the claim";
    return res;
  }
  const BraidWord q = commuting_reduce(r);
  const auto rearranged = far_commutation_class(q);
  const bool related = c.claim.form_word == q ||
                       std::find(rearranged.begin(), rearranged.end(), least_rotation(c.claim.form_word)) !=
                           rearranged.end();
  if (!related) {
    res.error = ReplayError::PatternMismatch;
    res.detail = "form word is not a rearrangement of the terminal word";
    return res;
  }
  if (!word_admits(c.claim.kind, c.claim.form_word)) {
    res.error = ReplayError::PatternMismatch;
    res.detail = std::string("form word does not admit ") + to_string(c.claim.kind);
  }
  return res;
}

// --- plain oracle -----------------------------------------------------------

PlainSearchResult plain_destabilization_search(const ArcPresentation& g, std::size_t max_states) {
  const Goal goal = pattern_goal(TargetMove::Destabilization);
  RootRun run = search_root(GridState{g, {}, {}}, goal, max_states, static_cast<std::size_t>(-1), true);
  PlainSearchResult out;
  out.states = run.states;
  out.outcome = run.status == RootStatus::Found       ? Outcome::Found
                : run.status == RootStatus::Exhausted ? Outcome::NotAdmitted
                                                      : Outcome::Inconclusive;
  return out;
}

}  // namespace braidforge
