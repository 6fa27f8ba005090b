#include <algorithm>
#include <array>
#include <optional>

#include "braidforge/grid.hpp"
#include "grid_internal.hpp"

namespace braidforge {

using detail::mod;

namespace {

bool horizontal_nested(const ArcPresentation& g, int a, int b) {
  if (g.start(a) == g.end(b) || g.end(a) == g.start(b)) return false;
  const int c = g.size();
  const int la = g.span_length(a);
  const int ds = mod(g.start(b) - g.start(a), c);
  const int de = mod(g.end(b) - g.start(a), c);
  return (ds < la && de < la && ds < de) || (ds > la && de > la);
}

bool vertical_nested(const ArcPresentation& g, int c, int d) {
  const int l1 = g.vertical_low(c), h1 = g.vertical_high(c);
  const int l2 = g.vertical_low(d), h2 = g.vertical_high(d);
  if (l1 == l2 || l1 == h2 || h1 == l2 || h1 == h2) return false;
  return h1 < l2 || h2 < l1 || (l1 < l2 && h2 < h1) || (l2 < l1 && h1 < h2);
}

// Per-state lookup tables shared by enumeration and application.
struct Scan {
  const GridState& s;
  int c;
  std::vector<int> col_tag, row_tag;
  std::vector<char> in_path, is_protected;

  explicit Scan(const GridState& st) : s(st), c(st.grid.size()) {
    const auto& g = s.grid;
    col_tag.resize(static_cast<std::size_t>(c));
    row_tag.resize(static_cast<std::size_t>(c));
    in_path.assign(static_cast<std::size_t>(c), 0);
    is_protected.assign(static_cast<std::size_t>(c), 0);
    for (int i = 0; i < c; ++i) {
      col_tag[static_cast<std::size_t>(i)] = column_interval(g, s.config, i);
      row_tag[static_cast<std::size_t>(i)] = row_interval(g, s.config, i);
    }
    if (s.marking.has_path()) {
      for (const auto& a : edge_path(g, s.marking)) {
        if (a.horizontal) in_path[static_cast<std::size_t>(a.index)] = 1;
      }
    }
    for (int r : s.marking.protected_rows) {
      if (r >= 0 && r < c) is_protected[static_cast<std::size_t>(r)] = 1;
    }
  }

  bool col_out(int col) const { return col_tag[static_cast<std::size_t>(col)] < 0; }
  bool row_out(int row) const { return row_tag[static_cast<std::size_t>(row)] < 0; }
  bool guarded(int row) const {
    return in_path[static_cast<std::size_t>(row)] || is_protected[static_cast<std::size_t>(row)];
  }
  bool prot(int row) const { return is_protected[static_cast<std::size_t>(row)]; }

  // Columns c and c+1 are neighbours outside the intervals, with no empty
  // interval sitting between them.
  bool adjacent_outside(int col) const {
    const int d = mod(col + 1, c);
    if (!col_out(col) || !col_out(d)) return false;
    const auto& sc = s.config;
    return !(sc.active() && sc.block_length() == 0 && d == sc.block_start);
  }

  int outside_count() const { return c - s.config.block_length(); }
};

// Mutable working copy.
struct Work {
  std::vector<int> hs, he;
  ShearingConfig sc;
  Marking m;

  explicit Work(const GridState& s) : hs(s.grid.starts()), he(s.grid.ends()), sc(s.config), m(s.marking) {}

  template <class F>
  void map_rows(F f) {
    auto fix = [&](int& r) {
      if (r >= 0) r = f(r);
    };
    fix(m.first_row);
    fix(m.last_row);
    for (int& r : m.protected_rows) fix(r);
  }

  void remove_row(int y, int absorbed_into) {
    hs.erase(hs.begin() + y);
    he.erase(he.begin() + y);
    map_rows([&](int r) {
      if (r == y) r = absorbed_into;
      return r > y ? r - 1 : r;
    });
  }

  void remove_col(int x) {
    for (auto* v : {&hs, &he}) {
      for (int& col : *v) {
        if (col > x) --col;
      }
    }
    if (sc.active() && sc.block_start > x) --sc.block_start;
  }

  int insert_col_after_gap(int gap) {
    const int ni = gap + 1;
    for (auto* v : {&hs, &he}) {
      for (int& col : *v) {
        if (col >= ni) ++col;
      }
    }
    return ni;
  }

  void insert_row(int j, int st, int en) {
    hs.insert(hs.begin() + j, st);
    he.insert(he.begin() + j, en);
    map_rows([&](int r) { return r >= j ? r + 1 : r; });
  }

  void swap_rows(int r) {
    std::swap(hs[static_cast<std::size_t>(r)], hs[static_cast<std::size_t>(r + 1)]);
    std::swap(he[static_cast<std::size_t>(r)], he[static_cast<std::size_t>(r + 1)]);
    map_rows([&](int x) { return x == r ? r + 1 : (x == r + 1 ? r : x); });
  }

  GridState finish() { return GridState{ArcPresentation(std::move(hs), std::move(he)), std::move(sc), std::move(m)}; }
};

// Cyclic insertion position of a new column in interval k at the given wall,
// counted from the block start.
int shear_offset(const ShearingConfig& sc, int k, int wall) {
  return sc.interval_offset(k) + (wall == 1 ? sc.intervals[static_cast<std::size_t>(k)].resident_columns : 0);
}

bool gate_open(const ShearingConfig& sc, int k, int wall) {
  const auto& w = sc.intervals[static_cast<std::size_t>(k)].walls;
  return wall == 0 ? w[0] == WallTag::Front : w[1] == WallTag::Back;
}

// Builds the result of a shear horizontal exchange, or nothing when the
// exchange of the outside piece with its partner is not nested.
std::optional<GridState> shear_h_exchange(const GridState& s, const ElementaryMove& mv) {
  const auto& g = s.grid;
  const int c = g.size();
  const int lower = mv.a;
  const int sheared = mv.b == 0 ? lower : lower + 1;
  const int partner = mv.b == 0 ? lower + 1 : lower;
  const int k = mv.interval;
  const int off = shear_offset(s.config, k, mv.variant);
  const int gap = mod(s.config.block_start + off - 1, c);
  if (!g.covers_gap(sheared, gap)) return std::nullopt;

  Work w(s);
  const bool first_in_block = off == 0;
  const int ni = w.insert_col_after_gap(gap);
  if (first_in_block) {
    w.sc.block_start = ni;
  } else if (w.sc.block_start >= ni) {
    ++w.sc.block_start;
  }
  ++w.sc.intervals[static_cast<std::size_t>(k)].resident_columns;

  const int st = w.hs[static_cast<std::size_t>(sheared)];
  const int en = w.he[static_cast<std::size_t>(sheared)];
  // the outside piece keeps the sheared row, the inside piece goes on the far
  // side from the partner
  int j_start, j_end, i_start, i_end;
  if (mv.variant == 0) {
    j_start = st, j_end = ni, i_start = ni, i_end = en;
  } else {
    i_start = st, i_end = ni, j_start = ni, j_end = en;
  }
  w.hs[static_cast<std::size_t>(sheared)] = j_start;
  w.he[static_cast<std::size_t>(sheared)] = j_end;
  int j_row, p_row;
  if (partner > sheared) {
    w.insert_row(sheared, i_start, i_end);
    j_row = sheared + 1;
    p_row = sheared + 2;
  } else {
    w.insert_row(sheared + 1, i_start, i_end);
    j_row = sheared;
    p_row = sheared - 1;
  }
  ArcPresentation mid(w.hs, w.he);
  if (!horizontal_nested(mid, j_row, p_row)) return std::nullopt;
  w.swap_rows(std::min(j_row, p_row));
  return w.finish();
}

void push_shear_h(const GridState& s, const Scan& sc, std::vector<ElementaryMove>& out) {
  const auto& g = s.grid;
  const auto& cfg = s.config;
  if (!cfg.active()) return;
  for (int r = 0; r + 1 < sc.c; ++r) {
    if (!sc.row_out(r) || !sc.row_out(r + 1)) continue;
    if (horizontal_nested(g, r, r + 1)) continue;  // a plain exchange does it
    for (int b = 0; b < 2; ++b) {
      const int sheared = b == 0 ? r : r + 1;
      if (sc.guarded(sheared)) continue;
      for (int k = 0; k < static_cast<int>(cfg.intervals.size()); ++k) {
        for (int wall = 0; wall < 2; ++wall) {
          if (!gate_open(cfg, k, wall)) continue;
          ElementaryMove mv{MoveKind::ShearHExchange, r, b, k, wall};
          if (shear_h_exchange(s, mv)) out.push_back(mv);
        }
      }
    }
  }
}

}  // namespace

std::vector<ElementaryMove> enumerate_elementary_moves(const GridState& s) {
  std::vector<ElementaryMove> out;
  const auto& g = s.grid;
  const Scan sc(s);
  const int c = sc.c;
  if (c < 2) return out;

  if (sc.row_out(c - 1)) out.push_back({MoveKind::HExchangeFlavor1, 0});
  if (sc.row_out(0)) out.push_back({MoveKind::HExchangeFlavor1, 1});

  for (int r = 0; r + 1 < c; ++r) {
    if (sc.row_out(r) && sc.row_out(r + 1) && horizontal_nested(g, r, r + 1)) {
      out.push_back({MoveKind::HExchangeFlavor2, r});
    }
  }

  for (int col = 0; col < c; ++col) {
    if (c == 2 && col == 1) break;
    if (sc.adjacent_outside(col) && vertical_nested(g, col, mod(col + 1, c))) {
      out.push_back({MoveKind::VExchange, col});
    }
  }

  for (int col = 0; col < c; ++col) {
    const int p = g.row_ending_at(col), q = g.row_starting_at(col);
    if (std::abs(p - q) != 1 || !sc.col_out(col)) continue;
    if (sc.prot(p) || sc.prot(q)) continue;
    if (g.span_length(p) + g.span_length(q) > c - 1) continue;
    out.push_back({MoveKind::HSimplify, col, 0, -1, 0});
    out.push_back({MoveKind::HSimplify, col, 0, -1, 1});
  }

  for (int col = 0; col < c; ++col) {
    const int d = mod(col + 1, c);
    const int b = g.row_starting_at(col);
    if (g.end(b) != d || !sc.adjacent_outside(col)) continue;
    if (g.row_ending_at(col) == g.row_starting_at(d)) continue;
    if (sc.prot(b)) continue;
    out.push_back({MoveKind::VSimplify, col, 0, -1, 0});
    out.push_back({MoveKind::VSimplify, col, 0, -1, 1});
  }

  push_shear_h(s, sc, out);

  const auto& cfg = s.config;
  if (cfg.active() && sc.outside_count() >= 2) {
    const int last = static_cast<int>(cfg.intervals.size()) - 1;
    auto pushable = [&](int col) {
      return sc.col_out(col) && !sc.guarded(g.row_ending_at(col)) && !sc.guarded(g.row_starting_at(col));
    };
    if (gate_open(cfg, 0, 0) && pushable(mod(cfg.block_start - 1, c))) {
      out.push_back({MoveKind::ShearVSimplify, 0, 0, 0, 0});
    }
    if (gate_open(cfg, last, 1) && pushable(mod(cfg.block_start + cfg.block_length(), c))) {
      out.push_back({MoveKind::ShearVSimplify, 0, 0, last, 1});
    }
  }
  return out;
}

bool move_applicable(const GridState& s, const ElementaryMove& mv) {
  const auto moves = enumerate_elementary_moves(s);
  return std::find(moves.begin(), moves.end(), mv) != moves.end();
}

namespace detail {

GridState apply_move_unchecked(const GridState& s, const ElementaryMove& mv) {
  const auto& g = s.grid;
  const int c = g.size();
  Work w(s);
  switch (mv.kind) {
    case MoveKind::HExchangeFlavor1: {
      if (mv.a == 0) {
        std::rotate(w.hs.rbegin(), w.hs.rbegin() + 1, w.hs.rend());
        std::rotate(w.he.rbegin(), w.he.rbegin() + 1, w.he.rend());
        w.map_rows([c](int r) { return r == c - 1 ? 0 : r + 1; });
      } else {
        std::rotate(w.hs.begin(), w.hs.begin() + 1, w.hs.end());
        std::rotate(w.he.begin(), w.he.begin() + 1, w.he.end());
        w.map_rows([c](int r) { return r == 0 ? c - 1 : r - 1; });
      }
      break;
    }
    case MoveKind::HExchangeFlavor2:
      w.swap_rows(mv.a);
      break;
    case MoveKind::VExchange: {
      const int x = mv.a, y = mod(mv.a + 1, c);
      for (auto* v : {&w.hs, &w.he}) {
        for (int& col : *v) {
          if (col == x) {
            col = y;
          } else if (col == y) {
            col = x;
          }
        }
      }
      break;
    }
    case MoveKind::HSimplify: {
      const int col = mv.a;
      const int p = g.row_ending_at(col), q = g.row_starting_at(col);
      const int keep = mv.variant == 0 ? p : q;
      const int drop = mv.variant == 0 ? q : p;
      w.hs[static_cast<std::size_t>(keep)] = g.start(p);
      w.he[static_cast<std::size_t>(keep)] = g.end(q);
      w.remove_row(drop, keep);
      w.remove_col(col);
      break;
    }
    case MoveKind::VSimplify: {
      const int x = mv.a, y = mod(mv.a + 1, c);
      const int b = g.row_starting_at(x);
      const int prev = g.row_ending_at(x), next = g.row_starting_at(y);
      int removed_col;
      if (mv.variant == 0) {
        w.hs[static_cast<std::size_t>(next)] = x;
        removed_col = y;
      } else {
        w.he[static_cast<std::size_t>(prev)] = y;
        removed_col = x;
      }
      // an edge path ending on the collapsed arc now ends one arc earlier
      if (w.m.last_row == b && w.m.first_row != b) w.m.last_row = prev;
      w.remove_row(b, next);
      w.remove_col(removed_col);
      break;
    }
    case MoveKind::ShearHExchange: {
      auto r = shear_h_exchange(s, mv);
      if (!r) throw Error(ErrorCode::PreconditionViolated, "shear exchange not nested");
      return *r;
    }
    case MoveKind::ShearVSimplify: {
      auto& iv = w.sc.intervals[static_cast<std::size_t>(mv.interval)];
      if (mv.variant == 0) w.sc.block_start = mod(w.sc.block_start - 1, c);
      ++iv.resident_columns;
      break;
    }
  }
  return w.finish();
}

}  // namespace detail

GridState apply_elementary_move(const GridState& s, const ElementaryMove& mv) {
  if (!move_applicable(s, mv)) {
    throw Error(ErrorCode::PreconditionViolated, "move " + to_string(mv) + " is not available");
  }
  return detail::apply_move_unchecked(s, mv);
}

// --- keys -------------------------------------------------------------------

namespace {

void put(std::string& k, int v) {
  const auto u = static_cast<std::uint16_t>(v);
  k.push_back(static_cast<char>(u & 0xff));
  k.push_back(static_cast<char>(u >> 8));
}

}  // namespace

std::string canonical_key(const GridState& s) {
  const auto& g = s.grid;
  const auto& sc = s.config;
  const int c = g.size();
  std::string k;
  std::vector<int> row_rank(static_cast<std::size_t>(c), -1);
  if (!sc.active()) {
    k.reserve(static_cast<std::size_t>(4 * c + 16));
    put(k, c);
    for (int r = 0; r < c; ++r) {
      put(k, g.start(r));
      put(k, g.end(r));
      row_rank[static_cast<std::size_t>(r)] = r;
    }
  } else {
    const int block = sc.block_length();
    std::vector<int> tok(static_cast<std::size_t>(c));
    for (int col = 0; col < c; ++col) {
      const int t = column_interval(g, sc, col);
      tok[static_cast<std::size_t>(col)] =
          t >= 0 ? 0x8000 + t : mod(col - sc.block_start - block, c);
    }
    put(k, c - block);
    put(k, static_cast<int>(sc.intervals.size()));
    int next = 0;
    for (int r = 0; r < c; ++r) {
      if (row_interval(g, sc, r) >= 0) continue;
      row_rank[static_cast<std::size_t>(r)] = next++;
      put(k, tok[static_cast<std::size_t>(g.start(r))]);
      put(k, tok[static_cast<std::size_t>(g.end(r))]);
    }
  }
  auto rank_of = [&](int r) { return r < 0 ? 0xffff : row_rank[static_cast<std::size_t>(r)]; };
  put(k, 0xfffe);
  put(k, rank_of(s.marking.first_row));
  put(k, rank_of(s.marking.last_row));
  for (int r : s.marking.protected_rows) put(k, rank_of(r));
  return k;
}

std::string full_key(const ArcPresentation& g) {
  const int c = g.size();
  std::vector<int> best, cur(static_cast<std::size_t>(2 * c));
  for (int rot = 0; rot < c; ++rot) {
    for (int r = 0; r < c; ++r) {
      cur[static_cast<std::size_t>(2 * r)] = mod(g.start(r) - rot, c);
      cur[static_cast<std::size_t>(2 * r + 1)] = mod(g.end(r) - rot, c);
    }
    if (best.empty() || cur < best) best = cur;
  }
  std::string k;
  put(k, c);
  for (int v : best) put(k, v);
  return k;
}

// --- placements -------------------------------------------------------------

std::vector<Placement> place_shearing_intervals(const ArcPresentation& g, int k, bool mirrored_tags) {
  std::vector<Placement> out;
  if (k <= 0) {
    out.push_back({-1, ShearingConfig{}});
    return out;
  }
  constexpr std::array<WallTag, 2> kFront{WallTag::Front, WallTag::Front};
  constexpr std::array<WallTag, 2> kBack{WallTag::Back, WallTag::Back};
  std::vector<std::array<WallTag, 2>> tags;
  if (k == 1) {
    tags = {{WallTag::Front, WallTag::Back}};
  } else if (k == 2) {
    tags = {kBack, kFront};
  } else {
    tags = mirrored_tags ? std::vector<std::array<WallTag, 2>>{kBack, kFront, kBack}
                         : std::vector<std::array<WallTag, 2>>{kFront, kBack, kFront};
  }
  const int c = g.size();
  for (int gap = 0; gap < c; ++gap) {
    ShearingConfig sc;
    sc.block_start = mod(gap + 1, c);
    for (const auto& t : tags) sc.intervals.push_back({t, 0});
    out.push_back({gap, sc});
  }
  return out;
}

}  // namespace braidforge
