#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "braidforge/braid.hpp"

namespace braidforge {

// Rectangular diagram on the cylinder in rank-normalized form. Rows
// 0..size()-1 are horizontal positions from bottom to top, columns
// 0..size()-1 are angular positions in forward theta order (cyclic). Row r
// holds one horizontal arc running forward from column hstart[r] to column
// hend[r]; column c holds one vertical arc joining the horizontal that ends at
// c to the horizontal that starts at c.
class ArcPresentation {
 public:
  ArcPresentation() = default;
  ArcPresentation(std::vector<int> hstart, std::vector<int> hend);

  int size() const { return static_cast<int>(hstart_.size()); }
  int start(int row) const { return hstart_[static_cast<std::size_t>(row)]; }
  int end(int row) const { return hend_[static_cast<std::size_t>(row)]; }
  int row_starting_at(int col) const { return start_row_[static_cast<std::size_t>(col)]; }
  int row_ending_at(int col) const { return end_row_[static_cast<std::size_t>(col)]; }

  // Vertical arc at col runs from row_ending_at(col) to row_starting_at(col).
  bool vertical_up(int col) const { return row_starting_at(col) > row_ending_at(col); }
  int vertical_low(int col) const;
  int vertical_high(int col) const;

  // Number of gaps covered by the horizontal arc in row r.
  int span_length(int row) const;
  // Column strictly inside the angular support of row r.
  bool covers_column(int row, int col) const;
  // Horizontal arc of row r passes over the gap between col and col+1.
  bool covers_gap(int row, int gap) const;

  // Horizontal arcs per gap; the braid index of the flattened braid.
  int strand_count() const;

  const std::vector<int>& starts() const { return hstart_; }
  const std::vector<int>& ends() const { return hend_; }

  friend bool operator==(const ArcPresentation& a, const ArcPresentation& b) {
    return a.hstart_ == b.hstart_ && a.hend_ == b.hend_;
  }

 private:
  void rebuild();

  std::vector<int> hstart_, hend_;
  std::vector<int> start_row_, end_row_;
};

// The 2x2 diagram of the unknot.
ArcPresentation square_unknot();

// --- raw (external) form and validation -----------------------------------

enum class WallTag { Front, Back };

struct RawVertical {
  int col = 0;
  std::array<int, 2> rows{0, 0};
  bool up = true;
  std::optional<int> in_interval;
};

struct RawHorizontal {
  int row = 0;
  std::array<int, 2> cols{0, 0};  // start, end in forward theta
  std::optional<int> in_interval;
};

struct RawInterval {
  int gap_after_col = 0;
  std::array<WallTag, 2> walls{WallTag::Front, WallTag::Back};
};

struct RawDiagram {
  std::vector<RawVertical> verticals;
  std::vector<RawHorizontal> horizontals;
  std::vector<RawInterval> intervals;
};

enum class ViolationKind {
  EmptyDiagram,
  DuplicateRow,
  DuplicateColumn,
  BrokenIncidence,
  OrientationBreach,
  AlternationBreach,
  CountMismatch,
  IntervalBreach,
};

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

std::vector<Violation> validate_presentation(const RawDiagram& raw);
std::vector<Violation> validate_presentation(const ArcPresentation& g);

// --- shearing intervals ---------------------------------------------------

struct ShearInterval {
  std::array<WallTag, 2> walls{WallTag::Front, WallTag::Back};
  int resident_columns = 0;
};

// Shearing intervals sit back to back in a single gap: their resident columns
// form one contiguous block starting at column block_start (when every
// interval is empty the block marks the gap just before block_start).
struct ShearingConfig {
  std::vector<ShearInterval> intervals;
  int block_start = 0;

  bool active() const { return !intervals.empty(); }
  int block_length() const;
  // First column of interval k (or its insertion point when empty).
  int interval_offset(int k) const;

  friend bool operator==(const ShearingConfig& a, const ShearingConfig& b) {
    if (a.intervals.size() != b.intervals.size() || a.block_start != b.block_start) return false;
    for (std::size_t i = 0; i < a.intervals.size(); ++i) {
      if (a.intervals[i].walls != b.intervals[i].walls ||
          a.intervals[i].resident_columns != b.intervals[i].resident_columns) {
        return false;
      }
    }
    return true;
  }
};

// -1 when column col is outside every interval.
int column_interval(const ArcPresentation& g, const ShearingConfig& sc, int col);
// -1 when the horizontal arc lies (at least partly) outside the intervals.
int row_interval(const ArcPresentation& g, const ShearingConfig& sc, int row);

RawDiagram to_raw(const ArcPresentation& g, const ShearingConfig& sc = {});
// Rank-normalizes; throws InvalidDiagram on violations.
std::pair<ArcPresentation, ShearingConfig> from_raw(const RawDiagram& raw);

// --- marking --------------------------------------------------------------

struct ArcRef {
  bool horizontal = true;
  int index = 0;  // row for horizontal arcs, column for vertical arcs
  friend bool operator==(const ArcRef&, const ArcRef&) = default;
};

// Protected edge path E = h_1 v_1 ... h_l, stored by its end rows and followed
// along the orientation, plus extra protected horizontal arcs.
struct Marking {
  int first_row = -1;
  int last_row = -1;
  std::vector<int> protected_rows;

  bool has_path() const { return first_row >= 0; }
  friend bool operator==(const Marking&, const Marking&) = default;
};

std::vector<ArcRef> edge_path(const ArcPresentation& g, const Marking& m);
bool row_in_path(const ArcPresentation& g, const Marking& m, int row);

// --- elementary moves -----------------------------------------------------

enum class MoveKind {
  HExchangeFlavor1,
  HExchangeFlavor2,
  VExchange,
  HSimplify,
  VSimplify,
  ShearHExchange,
  ShearVSimplify,
};

const char* to_string(MoveKind k);
std::optional<MoveKind> move_kind_from_string(const std::string& s);

// Operand conventions:
//   HExchangeFlavor1  a = 0 top row to bottom, a = 1 bottom row to top
//   HExchangeFlavor2  a = lower of the two consecutive rows
//   VExchange         a = column c, swapped with c+1 (cyclic)
//   HSimplify         a = column of the shared vertical; variant 0 keeps the
//                     incoming row, 1 the outgoing row
//   VSimplify         a = column c of the pair (c, c+1); variant 0 keeps c
//   ShearHExchange    a = lower row, b = 0 shears the lower arc, 1 the upper;
//                     interval k; variant 0 left wall, 1 right wall
//   ShearVSimplify    interval k; variant 0 pushes the column before the
//                     block forward, 1 the column after it backward
struct ElementaryMove {
  MoveKind kind = MoveKind::HExchangeFlavor1;
  int a = 0;
  int b = 0;
  int interval = -1;
  int variant = 0;

  friend bool operator==(const ElementaryMove&, const ElementaryMove&) = default;
};

std::string to_string(const ElementaryMove& m);

bool is_exchange(MoveKind k);
bool is_simplification(MoveKind k);
bool is_shear(MoveKind k);

struct GridState {
  ArcPresentation grid;
  ShearingConfig config;
  Marking marking;

  friend bool operator==(const GridState&, const GridState&) = default;
};

int complexity(const ArcPresentation& g);
int sheared_complexity(const ArcPresentation& g, const ShearingConfig& sc);

// Deterministic order: by kind, then operands.
std::vector<ElementaryMove> enumerate_elementary_moves(const GridState& s);
bool move_applicable(const GridState& s, const ElementaryMove& mv);
// Throws PreconditionViolated when mv is not enumerated for s.
GridState apply_elementary_move(const GridState& s, const ElementaryMove& mv);

// Order-normalized restriction to the complement of the intervals, with
// interval interiors collapsed.
std::string canonical_key(const GridState& s);
// Full diagram key up to cyclic rotation of the columns.
std::string full_key(const ArcPresentation& g);

struct GridComponents {
  int count = 0;
  std::vector<int> row_component;  // component of the horizontal arc per row
};

GridComponents grid_components(const ArcPresentation& g);
std::pair<int, LinkingMatrix> grid_components_and_linking(const ArcPresentation& g);

// Number of times the component containing row winds around the axis.
int component_winding(const ArcPresentation& g, const GridComponents& comps, int component);

// Placement of k intervals in a single gap; one config per gap (gap g lies
// between column g and g+1). k = 0 yields a single empty config.
struct Placement {
  int gap = 0;
  ShearingConfig config;
};
std::vector<Placement> place_shearing_intervals(const ArcPresentation& g, int k, bool mirrored_tags = false);

}  // namespace braidforge
