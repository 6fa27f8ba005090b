#include "braidforge/render.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace braidforge {

namespace {

// Box-drawing cells indexed by the directions they connect: up, down, left, right.
const char* box(bool up, bool down, bool left, bool right) {
  const int k = (up ? 8 : 0) | (down ? 4 : 0) | (left ? 2 : 0) | (right ? 1 : 0);
  switch (k) {
    case 0: return " ";
    case 3: return "─";
    case 12: return "│";
    case 5: return "┌";
    case 6: return "┐";
    case 9: return "└";
    case 10: return "┘";
    default: return "┼";
  }
}

}  // namespace

std::string render_ascii(const ArcPresentation& g) {
  const int c = g.size();
  std::string out;
  for (int r = c - 1; r >= 0; --r) {
    const int a = std::min(g.start(r), g.end(r)), b = std::max(g.start(r), g.end(r));
    for (int col = 0; col < c; ++col) {
      const int lo = g.vertical_low(col), hi = g.vertical_high(col);
      const bool endpoint = r == lo || r == hi;
      if (endpoint) {
        const bool left = col == b, right = col == a;
        out += box(r == lo, r == hi, left, right);
      } else if (r > lo && r < hi) {
        out += box(true, true, false, false);  // vertical in front
      } else {
        out += (col > a && col < b) ? box(false, false, true, true) : box(false, false, false, false);
      }
    }
    out += '\n';
  }
  return out;
}

namespace {

constexpr int kStep = 40;
constexpr int kMargin = 20;
constexpr int kBreak = 6;

int xcol(int col) { return kMargin + (col + 1) * kStep; }
int yrow(int c, int row) { return kMargin + (c - row) * kStep; }

void line(std::ostringstream& o, int x1, int y1, int x2, int y2, const char* cls) {
  o << "  <line class=\"" << cls << "\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
    << "\"/>\n";
}

// Horizontal piece from x1 to x2 with breaks where verticals pass in front.
void horizontal_piece(std::ostringstream& o, int y, int x1, int x2, const std::vector<int>& breaks, const char* cls) {
  int x = x1;
  for (int bx : breaks) {
    if (bx <= x1 || bx >= x2) continue;
    line(o, x, y, bx - kBreak, y, cls);
    x = bx + kBreak;
  }
  line(o, x, y, x2, y, cls);
}

}  // namespace

std::string render_svg(const ArcPresentation& g, const ShearingConfig& sc) {
  const int c = g.size();
  const int width = 2 * kMargin + (c + 1) * kStep;
  const int height = 2 * kMargin + (c + 1) * kStep;
  const int right_edge = kMargin + (c + 1) * kStep;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
    << width << ' ' << height << "\">\n";
  o << "  <style>line{stroke:#000;stroke-width:2}line.dim{stroke:#999}line.seam{stroke:#c00;stroke-width:1;"
       "stroke-dasharray:4 3}rect.band{fill:#dde8f6}polygon{fill:#000}polygon.dim{fill:#999}</style>\n";

  // interval bands
  for (std::size_t k = 0; k < sc.intervals.size(); ++k) {
    const int first = sc.interval_offset(static_cast<int>(k));
    const int n = sc.intervals[k].resident_columns;
    const int x = n == 0 ? xcol(first) - kStep / 2 - 3 : xcol(first) - kStep / 2;
    const int w = n == 0 ? 6 : n * kStep;
    o << "  <rect class=\"band\" x=\"" << x << "\" y=\"" << kMargin / 2 << "\" width=\"" << w << "\" height=\""
      << height - kMargin << "\"/>\n";
  }
  line(o, kMargin, kMargin / 2, kMargin, height - kMargin / 2, "seam");

  for (int r = 0; r < c; ++r) {
    const char* cls = row_interval(g, sc, r) >= 0 ? "dim" : "arc";
    std::vector<int> breaks;
    for (int col = 0; col < c; ++col) {
      if (g.covers_column(r, col) && r > g.vertical_low(col) && r < g.vertical_high(col)) breaks.push_back(xcol(col));
    }
    const int y = yrow(c, r), xs = xcol(g.start(r)), xe = xcol(g.end(r));
    if (g.start(r) < g.end(r)) {
      horizontal_piece(o, y, xs, xe, breaks, cls);
    } else {
      horizontal_piece(o, y, xs, right_edge, breaks, cls);
      horizontal_piece(o, y, kMargin, xe, breaks, cls);
    }
  }
  for (int col = 0; col < c; ++col) {
    const char* cls = column_interval(g, sc, col) >= 0 ? "dim" : "arc";
    const int x = xcol(col);
    const int y1 = yrow(c, g.vertical_high(col)), y2 = yrow(c, g.vertical_low(col));
    line(o, x, y1, x, y2, cls);
    // orientation arrow at the midpoint
    const int ym = (y1 + y2) / 2, d = g.vertical_up(col) ? -5 : 5;
    o << "  <polygon class=\"" << cls << "\" points=\"" << x - 4 << ',' << ym - d << ' ' << x + 4 << ',' << ym - d << ' '
      << x << ',' << ym + d << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_diagram(const ArcPresentation& g, RenderFormat f, const ShearingConfig& sc) {
  return f == RenderFormat::Ascii ? render_ascii(g) : render_svg(g, sc);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
}

std::vector<std::string> render_frames(const MoveCertificate& c, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir);
  std::vector<std::string> paths;
  GridState s{c.initial_grid, c.config, c.initial_marking};
  for (std::size_t k = 0;; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03zu.svg", k);
    const std::string path = (std::filesystem::path(dir) / name).string();
    write_text_file(path, render_svg(s.grid, s.config));
    paths.push_back(path);
    if (k == c.moves.size()) break;
    s = apply_elementary_move(s, c.moves[k]);
  }
  return paths;
}

}  // namespace braidforge
