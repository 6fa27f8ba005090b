#include "braidforge/grid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "grid_internal.hpp"

namespace braidforge {

using detail::mod;

// --- ArcPresentation ------------------------------------------------------

ArcPresentation::ArcPresentation(std::vector<int> hstart, std::vector<int> hend)
    : hstart_(std::move(hstart)), hend_(std::move(hend)) {
  if (hstart_.size() != hend_.size()) throw Error(ErrorCode::InvalidDiagram, "row arrays differ in length");
  rebuild();
}

void ArcPresentation::rebuild() {
  const std::size_t c = hstart_.size();
  start_row_.assign(c, -1);
  end_row_.assign(c, -1);
  for (std::size_t r = 0; r < c; ++r) {
    const int s = hstart_[r], e = hend_[r];
    if (s < 0 || e < 0 || static_cast<std::size_t>(s) >= c || static_cast<std::size_t>(e) >= c || s == e ||
        start_row_[static_cast<std::size_t>(s)] != -1 || end_row_[static_cast<std::size_t>(e)] != -1) {
      throw Error(ErrorCode::InvalidDiagram, "row spans do not form an arc presentation");
    }
    start_row_[static_cast<std::size_t>(s)] = static_cast<int>(r);
    end_row_[static_cast<std::size_t>(e)] = static_cast<int>(r);
  }
}

int ArcPresentation::vertical_low(int col) const { return std::min(row_starting_at(col), row_ending_at(col)); }
int ArcPresentation::vertical_high(int col) const { return std::max(row_starting_at(col), row_ending_at(col)); }

int ArcPresentation::span_length(int row) const { return mod(end(row) - start(row), size()); }

bool ArcPresentation::covers_column(int row, int col) const {
  const int d = mod(col - start(row), size());
  return d > 0 && d < span_length(row);
}

bool ArcPresentation::covers_gap(int row, int gap) const { return mod(gap - start(row), size()) < span_length(row); }

int ArcPresentation::strand_count() const {
  if (size() == 0) return 0;
  int total = 0;
  for (int r = 0; r < size(); ++r) total += span_length(r);
  return total / size();
}

ArcPresentation square_unknot() { return ArcPresentation({0, 1}, {1, 0}); }

// --- names ----------------------------------------------------------------

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::EmptyDiagram: return "EmptyDiagram";
    case ViolationKind::DuplicateRow: return "DuplicateRow";
    case ViolationKind::DuplicateColumn: return "DuplicateColumn";
    case ViolationKind::BrokenIncidence: return "BrokenIncidence";
    case ViolationKind::OrientationBreach: return "OrientationBreach";
    case ViolationKind::AlternationBreach: return "AlternationBreach";
    case ViolationKind::CountMismatch: return "CountMismatch";
    case ViolationKind::IntervalBreach: return "IntervalBreach";
  }
  return "?";
}

namespace {

constexpr const char* kMoveNames[] = {"HExchangeFlavor1", "HExchangeFlavor2", "VExchange",     "HSimplify",
                                      "VSimplify",        "ShearHExchange",   "ShearVSimplify"};

}  // namespace

const char* to_string(MoveKind k) { return kMoveNames[static_cast<int>(k)]; }

std::optional<MoveKind> move_kind_from_string(const std::string& s) {
  for (int i = 0; i < 7; ++i) {
    if (s == kMoveNames[i]) return static_cast<MoveKind>(i);
  }
  return std::nullopt;
}

std::string to_string(const ElementaryMove& m) {
  std::string out = to_string(m.kind);
  out += "(" + std::to_string(m.a);
  if (m.kind == MoveKind::ShearHExchange) out += "," + std::to_string(m.b);
  if (is_shear(m.kind)) out += ",I" + std::to_string(m.interval);
  if (m.kind == MoveKind::HSimplify || m.kind == MoveKind::VSimplify || is_shear(m.kind)) {
    out += ",v" + std::to_string(m.variant);
  }
  return out + ")";
}

bool is_exchange(MoveKind k) {
  return k == MoveKind::HExchangeFlavor1 || k == MoveKind::HExchangeFlavor2 || k == MoveKind::VExchange ||
         k == MoveKind::ShearHExchange;
}
bool is_simplification(MoveKind k) {
  return k == MoveKind::HSimplify || k == MoveKind::VSimplify || k == MoveKind::ShearVSimplify;
}
bool is_shear(MoveKind k) { return k == MoveKind::ShearHExchange || k == MoveKind::ShearVSimplify; }

// --- validation -----------------------------------------------------------

std::vector<Violation> validate_presentation(const RawDiagram& raw) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind k, std::string d) { out.push_back({k, std::move(d)}); };
  if (raw.verticals.empty() && raw.horizontals.empty()) {
    add(ViolationKind::EmptyDiagram, "no arcs");
    return out;
  }
  if (raw.verticals.size() != raw.horizontals.size()) {
    add(ViolationKind::CountMismatch, std::to_string(raw.verticals.size()) + " verticals vs " +
                                          std::to_string(raw.horizontals.size()) + " horizontals");
  }
  std::map<int, std::size_t> by_row, by_col;
  for (std::size_t i = 0; i < raw.horizontals.size(); ++i) {
    const auto& h = raw.horizontals[i];
    if (!by_row.emplace(h.row, i).second) add(ViolationKind::DuplicateRow, "row " + std::to_string(h.row));
    if (h.cols[0] == h.cols[1]) {
      add(ViolationKind::AlternationBreach, "row " + std::to_string(h.row) + " starts and ends on one column");
    }
  }
  for (std::size_t i = 0; i < raw.verticals.size(); ++i) {
    const auto& v = raw.verticals[i];
    if (!by_col.emplace(v.col, i).second) add(ViolationKind::DuplicateColumn, "col " + std::to_string(v.col));
    if (v.rows[0] == v.rows[1]) {
      add(ViolationKind::AlternationBreach, "col " + std::to_string(v.col) + " starts and ends on one row");
    }
  }
  // horizontal endpoints must sit on verticals
  for (const auto& h : raw.horizontals) {
    for (int c : h.cols) {
      auto it = by_col.find(c);
      const bool ok = it != by_col.end() &&
                      (raw.verticals[it->second].rows[0] == h.row || raw.verticals[it->second].rows[1] == h.row);
      if (!ok) {
        add(ViolationKind::BrokenIncidence,
            "row " + std::to_string(h.row) + " endpoint at col " + std::to_string(c) + " has no vertical");
      }
    }
  }
  for (const auto& v : raw.verticals) {
    int ends_here = -1, starts_here = -1;
    for (int r : v.rows) {
      auto it = by_row.find(r);
      const bool ok = it != by_row.end() &&
                      (raw.horizontals[it->second].cols[0] == v.col || raw.horizontals[it->second].cols[1] == v.col);
      if (!ok) {
        add(ViolationKind::BrokenIncidence,
            "col " + std::to_string(v.col) + " endpoint at row " + std::to_string(r) + " has no horizontal");
        continue;
      }
      const auto& h = raw.horizontals[it->second];
      if (h.cols[1] == v.col) ends_here = r;
      if (h.cols[0] == v.col) starts_here = r;
    }
    if (ends_here < 0 || starts_here < 0 || ends_here == starts_here) {
      if (v.rows[0] != v.rows[1]) {
        add(ViolationKind::OrientationBreach, "col " + std::to_string(v.col) + " does not pass from an incoming to an outgoing horizontal");
      }
    } else if ((starts_here > ends_here) != v.up) {
      add(ViolationKind::OrientationBreach, "col " + std::to_string(v.col) + " direction disagrees with its horizontals");
    }
  }
  for (std::size_t k = 0; k < raw.intervals.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (raw.intervals[j].gap_after_col != raw.intervals[k].gap_after_col) {
        add(ViolationKind::IntervalBreach, "intervals must share one gap");
      }
    }
  }
  return out;
}

std::vector<Violation> validate_presentation(const ArcPresentation& g) {
  std::vector<Violation> out;
  if (g.size() == 0) {
    out.push_back({ViolationKind::EmptyDiagram, "no arcs"});
    return out;
  }
  int total = 0;
  for (int r = 0; r < g.size(); ++r) total += g.span_length(r);
  if (total % g.size() != 0) out.push_back({ViolationKind::CountMismatch, "horizontal arcs per gap not constant"});
  for (int gap = 0; gap < g.size(); ++gap) {
    int count = 0;
    for (int r = 0; r < g.size(); ++r) count += g.covers_gap(r, gap) ? 1 : 0;
    if (count * g.size() != total) {
      out.push_back({ViolationKind::CountMismatch, "gap " + std::to_string(gap)});
      break;
    }
  }
  return out;
}

// --- shearing config --------------------------------------------------------

int ShearingConfig::block_length() const {
  int n = 0;
  for (const auto& i : intervals) n += i.resident_columns;
  return n;
}

int ShearingConfig::interval_offset(int k) const {
  int n = 0;
  for (int j = 0; j < k; ++j) n += intervals[static_cast<std::size_t>(j)].resident_columns;
  return n;
}

int column_interval(const ArcPresentation& g, const ShearingConfig& sc, int col) {
  if (!sc.active()) return -1;
  const int p = mod(col - sc.block_start, g.size());
  int off = 0;
  for (std::size_t k = 0; k < sc.intervals.size(); ++k) {
    off += sc.intervals[k].resident_columns;
    if (p < off) return static_cast<int>(k);
  }
  return -1;
}

int row_interval(const ArcPresentation& g, const ShearingConfig& sc, int row) {
  const int k1 = column_interval(g, sc, g.start(row));
  if (k1 < 0) return -1;
  const int k2 = column_interval(g, sc, g.end(row));
  if (k2 != k1) return -1;
  const int p1 = mod(g.start(row) - sc.block_start, g.size());
  const int p2 = mod(g.end(row) - sc.block_start, g.size());
  return p1 < p2 ? k1 : -1;
}

// --- raw conversion -------------------------------------------------------

RawDiagram to_raw(const ArcPresentation& g, const ShearingConfig& sc) {
  RawDiagram raw;
  const int c = g.size();
  for (int col = 0; col < c; ++col) {
    RawVertical v;
    v.col = col;
    v.rows = {g.row_ending_at(col), g.row_starting_at(col)};
    v.up = g.vertical_up(col);
    const int k = column_interval(g, sc, col);
    if (k >= 0) v.in_interval = k;
    raw.verticals.push_back(v);
  }
  for (int r = 0; r < c; ++r) {
    RawHorizontal h;
    h.row = r;
    h.cols = {g.start(r), g.end(r)};
    const int k = row_interval(g, sc, r);
    if (k >= 0) h.in_interval = k;
    raw.horizontals.push_back(h);
  }
  for (int k = 0; k < static_cast<int>(sc.intervals.size()); ++k) {
    RawInterval ri;
    ri.gap_after_col = mod(sc.block_start - 1, c);
    ri.walls = sc.intervals[static_cast<std::size_t>(k)].walls;
    raw.intervals.push_back(ri);
  }
  return raw;
}

std::pair<ArcPresentation, ShearingConfig> from_raw(const RawDiagram& raw) {
  auto violations = validate_presentation(raw);
  if (!violations.empty()) {
    std::string msg;
    for (const auto& v : violations) msg += std::string(to_string(v.kind)) + ": " + v.detail + "; ";
    throw Error(violations.front().kind == ViolationKind::EmptyDiagram ? ErrorCode::EmptyDiagram
                                                                         : ErrorCode::InvalidDiagram,
                msg);
  }
  std::vector<int> rows, cols;
  for (const auto& h : raw.horizontals) rows.push_back(h.row);
  for (const auto& v : raw.verticals) cols.push_back(v.col);
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  auto rank = [](const std::vector<int>& sorted, int x) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
  };
  const std::size_t c = rows.size();
  std::vector<int> hs(c), he(c);
  for (const auto& h : raw.horizontals) {
    const auto r = static_cast<std::size_t>(rank(rows, h.row));
    hs[r] = rank(cols, h.cols[0]);
    he[r] = rank(cols, h.cols[1]);
  }
  ArcPresentation g(std::move(hs), std::move(he));
  ShearingConfig sc;
  if (!raw.intervals.empty()) {
    // resident columns per interval, read off the verticals
    std::vector<int> counts(raw.intervals.size(), 0);
    int first_resident = -1;
    for (const auto& v : raw.verticals) {
      if (v.in_interval) {
        const int k = *v.in_interval;
        if (k < 0 || static_cast<std::size_t>(k) >= raw.intervals.size()) {
          throw Error(ErrorCode::InvalidDiagram, "vertical refers to a missing interval");
        }
        ++counts[static_cast<std::size_t>(k)];
      }
    }
    const int gap = upper_bound(cols.begin(), cols.end(), raw.intervals.front().gap_after_col) - cols.begin();
    first_resident = mod(gap, static_cast<int>(c));
    sc.block_start = first_resident;
    for (std::size_t k = 0; k < raw.intervals.size(); ++k) {
      sc.intervals.push_back({raw.intervals[k].walls, counts[k]});
    }
    // residents must be the contiguous block in interval order
    for (int col = 0; col < static_cast<int>(c); ++col) {
      const auto& v = *std::find_if(raw.verticals.begin(), raw.verticals.end(),
                                    [&](const RawVertical& x) { return rank(cols, x.col) == col; });
      const int expect = column_interval(g, sc, col);
      if ((v.in_interval ? *v.in_interval : -1) != expect) {
        throw Error(ErrorCode::InvalidDiagram, "interval-resident columns are not contiguous");
      }
    }
  }
  return {std::move(g), std::move(sc)};
}

// --- marking ----------------------------------------------------------------

std::vector<ArcRef> edge_path(const ArcPresentation& g, const Marking& m) {
  std::vector<ArcRef> out;
  if (!m.has_path()) return out;
  int r = m.first_row;
  for (int guard = 0; guard <= g.size(); ++guard) {
    out.push_back({true, r});
    if (r == m.last_row) return out;
    const int col = g.end(r);
    out.push_back({false, col});
    r = g.row_starting_at(col);
  }
  throw Error(ErrorCode::InvalidDiagram, "edge path end is not on the start's component");
}

bool row_in_path(const ArcPresentation& g, const Marking& m, int row) {
  if (!m.has_path()) return false;
  int r = m.first_row;
  for (int guard = 0; guard <= g.size(); ++guard) {
    if (r == row) return true;
    if (r == m.last_row) return false;
    r = g.row_starting_at(g.end(r));
  }
  return false;
}

// --- complexity -------------------------------------------------------------

int complexity(const ArcPresentation& g) {
  if (g.size() == 0) throw Error(ErrorCode::EmptyDiagram, "a component needs at least two vertical arcs");
  return g.size();
}

int sheared_complexity(const ArcPresentation& g, const ShearingConfig& sc) {
  return complexity(g) - sc.block_length();
}

// --- components and linking -------------------------------------------------

GridComponents grid_components(const ArcPresentation& g) {
  GridComponents out;
  const int c = g.size();
  out.row_component.assign(static_cast<std::size_t>(c), -1);
  // number components by the seam gap (between the last and the first column),
  // bottom to top, matching the strand order of the flattened braid
  std::vector<int> seam;
  for (int r = 0; r < c; ++r) {
    if (g.covers_gap(r, c - 1)) seam.push_back(r);
  }
  auto label = [&](int start) {
    const int id = out.count++;
    int r = start;
    while (out.row_component[static_cast<std::size_t>(r)] < 0) {
      out.row_component[static_cast<std::size_t>(r)] = id;
      r = g.row_starting_at(g.end(r));
    }
  };
  for (int r : seam) {
    if (out.row_component[static_cast<std::size_t>(r)] < 0) label(r);
  }
  for (int r = 0; r < c; ++r) {
    if (out.row_component[static_cast<std::size_t>(r)] < 0) label(r);
  }
  return out;
}

std::pair<int, LinkingMatrix> grid_components_and_linking(const ArcPresentation& g) {
  auto comps = grid_components(g);
  LinkingMatrix lk(comps.count);
  const int c = g.size();
  for (int col = 0; col < c; ++col) {
    const int lo = g.vertical_low(col), hi = g.vertical_high(col);
    const int vc = comps.row_component[static_cast<std::size_t>(g.row_starting_at(col))];
    const int sign = g.vertical_up(col) ? 1 : -1;
    for (int r = lo + 1; r < hi; ++r) {
      if (g.covers_column(r, col)) lk.add_crossing(vc, comps.row_component[static_cast<std::size_t>(r)], sign);
    }
  }
  return {comps.count, lk};
}

int component_winding(const ArcPresentation& g, const GridComponents& comps, int component) {
  int n = 0;
  for (int r = 0; r < g.size(); ++r) {
    if (comps.row_component[static_cast<std::size_t>(r)] == component && g.covers_gap(r, g.size() - 1)) ++n;
  }
  return n;
}

}  // namespace braidforge
