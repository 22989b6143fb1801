#include <sstream>

#include <json.hpp>

#include "fanoreal/error.hpp"
#include "fanoreal/locus.hpp"

namespace fanoreal {

std::string export_cover_json(const Cover& cover) {
  nlohmann::ordered_json doc;
  doc["schema"] = "fanoreal.cover/1";
  doc["dims"] = cover.dims();
  doc["depth"] = cover.depth();
  doc["count"] = cover.size();
  auto boxes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const Box b = cover.box(i);
    auto row = nlohmann::ordered_json::array();
    for (const auto& iv : b.bounds) row.push_back({iv.lo, iv.hi});
    boxes.push_back(std::move(row));
  }
  doc["boxes"] = std::move(boxes);
  return doc.dump(1);
}

std::string export_cover_svg(const Cover& cover, int width_px) {
  const int dims = cover.dims();
  if (dims != 2 && dims != 3)
    throw Unsupported("graphical export needs a 2D or 3D cover, got " + std::to_string(dims) + " dimensions");
  const Grid& g = cover.grid();
  const double x0 = g.coord(0, 0, 0), x1 = g.coord(0, 0, 1);
  const double y0 = g.coord(1, 0, 0), y1 = g.coord(1, 0, 1);
  const double scale = width_px / (x1 - x0);
  const int height_px = static_cast<int>((y1 - y0) * scale + 0.5);
  std::ostringstream out;
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\"" << height_px
      << "\" viewBox=\"0 0 " << width_px << " " << height_px << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const Box b = cover.box(i);
    // 3D: project to the first two axes, upper half of the last axis only.
    if (dims == 3 && b.bounds[2].hi <= 0) continue;
    const double x = (b.bounds[0].lo - x0) * scale;
    const double y = (y1 - b.bounds[1].hi) * scale;
    out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << b.bounds[0].width() * scale << "\" height=\""
        << b.bounds[1].width() * scale << "\" fill=\"black\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace fanoreal
