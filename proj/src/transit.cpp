#include "braidforge/transit.hpp"

#include <algorithm>
#include <tuple>

namespace braidforge {

namespace {

enum Link { Free = 0, Above = 1, Below = -1 };

struct Var {
  int band = 0;
  int start = -1;
  int end = -1;
  Link link = Free;  // relation to the previous var of the same band
};

// Which band takes the constrained (signed) link of each letter; the other
// band's new arc is unconstrained.
struct Choice {
  bool hi = true;
};

bool band_feasible(const std::vector<Link>& links) {
  bool up = false, down = false;
  for (Link l : links) {
    if (l == Free) return true;
    (l == Above ? up : down) = true;
  }
  return up && down;
}

// Row values inside one band for a cyclic chain of links.
std::vector<int> solve_chain(const std::vector<Link>& link) {
  const int m = static_cast<int>(link.size());
  int s = -1;
  for (int k = 0; k < m && s < 0; ++k) {
    if (link[static_cast<std::size_t>(k)] == Free) s = k;
  }
  for (int k = 0; k < m && s < 0; ++k) {
    if (link[static_cast<std::size_t>(k)] == Above && link[static_cast<std::size_t>((k + m - 1) % m)] == Below) s = k;
  }
  if (s < 0) throw Error(ErrorCode::PreconditionViolated, "band order is cyclic");
  std::vector<int> val(static_cast<std::size_t>(m), 0);
  int lo = 0, hi = 0;
  for (int step = 1; step < m; ++step) {
    const int k = (s + step) % m;
    const int v = link[static_cast<std::size_t>(k)] == Below ? --lo : ++hi;
    val[static_cast<std::size_t>(k)] = v;
  }
  return val;
}

}  // namespace

std::pair<ArcPresentation, TransitionTrace> braid_to_grid(const BraidWord& w) {
  validate_word(w);
  const int n = w.strands;
  const std::size_t len = w.letters.size();

  // choose the constrained band per letter
  std::vector<Choice> choice(len);
  for (std::size_t j = 0; j < len; ++j) choice[j].hi = w.letters[j] > 0;
  auto band_links = [&](int b) {
    std::vector<Link> links;
    for (std::size_t j = 0; j < len; ++j) {
      const int i = std::abs(w.letters[j]);
      const int lo = i - 1, hi = i;
      if (b != lo && b != hi) continue;
      const bool constrained = (b == hi) == choice[j].hi;
      links.push_back(constrained ? (w.letters[j] > 0 ? Above : Below) : Free);
    }
    return links;
  };
  auto touches = [&](int b) { return static_cast<int>(band_links(b).size()); };
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int b = 0; b < n; ++b) {
      if (touches(b) < 2 || band_feasible(band_links(b))) continue;
      // hand one constraint to the partner band if that keeps it feasible
      for (std::size_t j = 0; j < len; ++j) {
        const int i = std::abs(w.letters[j]);
        if (b != i - 1 && b != i) continue;
        const int other = b == i ? i - 1 : i;
        choice[j].hi = !choice[j].hi;
        if (touches(other) < 2 || band_feasible(band_links(other))) {
          changed = true;
          break;
        }
        choice[j].hi = !choice[j].hi;
      }
    }
    if (!changed) break;
  }

  std::vector<int> jogs(static_cast<std::size_t>(n), 0);
  for (int b = 0; b < n; ++b) {
    const int t = touches(b);
    if (t == 0) {
      jogs[static_cast<std::size_t>(b)] = 2;
    } else if (t == 1 || !band_feasible(band_links(b))) {
      jogs[static_cast<std::size_t>(b)] = 1;
    }
  }

  // sweep the columns, creating vars
  std::vector<Var> vars;
  std::vector<std::vector<int>> chain(static_cast<std::size_t>(n));
  std::vector<int> first_end(static_cast<std::size_t>(n), -1);
  auto current = [&](int b) {
    const auto& ch = chain[static_cast<std::size_t>(b)];
    return ch.empty() ? -1 : ch.back();
  };
  // -1 stands for the wrap-around arc, closed once the sweep is done
  auto end_var = [&](int b, int id, int col) {
    if (id < 0) {
      first_end[static_cast<std::size_t>(b)] = col;
    } else {
      vars[static_cast<std::size_t>(id)].end = col;
    }
  };
  auto end_current = [&](int b, int col) { end_var(b, current(b), col); };
  auto create = [&](int b, int col, Link l) {
    vars.push_back({b, col, -1, l});
    chain[static_cast<std::size_t>(b)].push_back(static_cast<int>(vars.size()) - 1);
  };

  TransitionTrace trace;
  trace.source = TransitionTrace::Source::Braid;
  int col = 0;
  for (std::size_t j = 0; j < len; ++j) {
    const int i = std::abs(w.letters[j]);
    const int lo = i - 1, hi = i;
    const Link signed_link = w.letters[j] > 0 ? Above : Below;
    const int c1 = col++, c2 = col++;
    trace.letter_to_arcs.push_back({c1, c2});
    if (choice[j].hi) {
      // lower strand climbs first, then the upper one drops
      const int old_hi = current(hi);
      end_current(lo, c1);
      create(hi, c1, signed_link);
      end_var(hi, old_hi, c2);
      create(lo, c2, Free);
    } else {
      const int old_lo = current(lo);
      end_current(hi, c1);
      create(lo, c1, signed_link);
      end_var(lo, old_lo, c2);
      create(hi, c2, Free);
    }
  }
  for (int b = 0; b < n; ++b) {
    for (int k = 0; k < jogs[static_cast<std::size_t>(b)]; ++k) {
      trace.jog_columns.push_back(col);
      end_current(b, col);
      create(b, col, Free);
      ++col;
    }
  }
  for (int b = 0; b < n; ++b) {
    vars[static_cast<std::size_t>(chain[static_cast<std::size_t>(b)].back())].end = first_end[static_cast<std::size_t>(b)];
  }

  // order rows: band first, then the solved in-band value
  std::vector<std::tuple<int, int, int>> order;  // band, value, var
  for (int b = 0; b < n; ++b) {
    const auto& ch = chain[static_cast<std::size_t>(b)];
    std::vector<Link> links;
    for (int v : ch) links.push_back(vars[static_cast<std::size_t>(v)].link);
    const auto val = solve_chain(links);
    for (std::size_t k = 0; k < ch.size(); ++k) order.emplace_back(b, val[k], ch[k]);
  }
  std::sort(order.begin(), order.end());
  std::vector<int> hs, he;
  for (const auto& [b, v, id] : order) {
    hs.push_back(vars[static_cast<std::size_t>(id)].start);
    he.push_back(vars[static_cast<std::size_t>(id)].end);
  }
  return {ArcPresentation(std::move(hs), std::move(he)), std::move(trace)};
}

std::pair<BraidWord, TransitionTrace> grid_to_braid(const ArcPresentation& g) {
  const auto violations = validate_presentation(g);
  if (!violations.empty()) throw Error(ErrorCode::InvalidDiagram, violations.front().detail);
  const int c = g.size();
  std::vector<int> active;
  for (int r = 0; r < c; ++r) {
    if (g.covers_gap(r, c - 1)) active.push_back(r);
  }
  BraidWord w{std::max(1, static_cast<int>(active.size())), {}};
  TransitionTrace trace;
  trace.source = TransitionTrace::Source::Grid;
  for (int col = 0; col < c; ++col) {
    const int leaving = g.row_ending_at(col);
    const int entering = g.row_starting_at(col);
    auto it = std::find(active.begin(), active.end(), leaving);
    if (it == active.end()) throw Error(ErrorCode::InvalidDiagram, "sweep lost a strand");
    const int from = static_cast<int>(it - active.begin());
    active.erase(it);
    auto pos = std::lower_bound(active.begin(), active.end(), entering);
    const int to = static_cast<int>(pos - active.begin());
    active.insert(pos, entering);
    std::vector<int> emitted;
    if (to > from) {
      for (int k = from + 1; k <= to; ++k) emitted.push_back(k);
    } else {
      for (int k = from; k > to; --k) emitted.push_back(-k);
    }
    w.letters.insert(w.letters.end(), emitted.begin(), emitted.end());
    trace.column_to_letters.push_back(std::move(emitted));
  }
  return {std::move(w), std::move(trace)};
}

BraidWord flatten(const ArcPresentation& g) { return grid_to_braid(g).first; }

}  // namespace braidforge
