#pragma once

#include <string>
#include <vector>

#include "braidforge/grid.hpp"
#include "braidforge/recognize.hpp"

namespace braidforge {

enum class RenderFormat { Ascii, Svg };

// ASCII: one box-drawing cell per (row, column), top row first; horizontals
// are drawn planar between their end columns and verticals pass in front.
std::string render_ascii(const ArcPresentation& g);

// SVG on the cylinder: the seam sits at the left edge, horizontals run forward
// (wrapping through the seam), verticals cross in front and break the
// horizontals they pass. Interval bands are shaded and resident arcs dimmed.
std::string render_svg(const ArcPresentation& g, const ShearingConfig& sc = {});

std::string render_diagram(const ArcPresentation& g, RenderFormat f, const ShearingConfig& sc = {});

// Throws IoError when the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);

// One SVG per replay step (moves + 1 files) named frame_000.svg, ... in dir,
// which is created if missing. Returns the written paths.
std::vector<std::string> render_frames(const MoveCertificate& c, const std::string& dir);

}  // namespace braidforge
