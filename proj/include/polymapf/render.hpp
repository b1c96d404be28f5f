#pragma once

#include <string>

#include "polymapf/instance.hpp"
#include "polymapf/sectors.hpp"

namespace polymapf {

// Overlay symbol for a sector id: 0-9, a-z, A-Z. Ids beyond 61 reuse
// symbols (the ASCII overlay round-trips membership only below that).
char sector_symbol(int id);

// The polygon map with each vertex replaced by its sector's symbol
// ('#' where absent, topmost row first). For graphs with <= 62 sectors the
// overlay parses back to the exact sector membership.
std::string render_sector_overlay_ascii(const SectorGraph& sg);

// Graphviz rendering of the sector adjacency graph. Node labels carry the
// sector id, kind, and bend vector; clean sectors are drawn dashed.
std::string render_sector_graph_dot(const SectorGraph& sg);

// SVG of the polygon with each sector painted a distinct color and port
// anchors marked.
std::string render_sectors_svg(const SectorGraph& sg);

// SVG of a bare polygon map.
std::string render_map_svg(const DiscretizedPolygon& poly);

// ASCII view of an instance: alive vertices '.', removed vertices 'x',
// absent cells '#', starts 'S', targets 'T' ('B' when a cell is both);
// weave gadgets are listed as text lines after the map.
std::string render_instance_ascii(const Instance& inst);

// SVG of an instance: alive cells, removed cells crossed out, one color per
// robot (start disc, target ring), gadgets as dashed chords with their
// interior length.
std::string render_instance_svg(const Instance& inst);

}  // namespace polymapf
