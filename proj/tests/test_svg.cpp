#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "sphgeom/svg.hpp"

using namespace sphgeom;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Svg, DocumentStructure) {
  SvgFigure fig(400);
  fig.polyline({{0, 0}, {1, 1}, {2, 0}});
  fig.circle(PlanarCircle{{1, 0}, 0.5}, SvgStyle{"#ff0000", 2.0, "none"});
  fig.dot({1, 1}, 3.0);
  fig.label({0, 0}, "A<B & \"C\"");
  const std::string s = fig.str();
  EXPECT_EQ(s.rfind("<?xml", 0), 0u);
  EXPECT_NE(s.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\""), std::string::npos);
  EXPECT_EQ(s.substr(s.size() - 7), "</svg>\n");
  EXPECT_EQ(count(s, "<polyline"), 1u);
  EXPECT_EQ(count(s, "<circle"), 2u);
  EXPECT_NE(s.find("A&lt;B &amp; &quot;C&quot;"), std::string::npos);
  EXPECT_EQ(s, fig.str());
}

TEST(Svg, CoordinatesStayOnCanvas) {
  SvgFigure fig(300);
  fig.polyline({{-5, 2}, {7, -3}, {0, 11}});
  const std::string s = fig.str();
  const std::regex coord(R"(([-0-9.e+]+),([-0-9.e+]+))");
  const auto pts = s.substr(s.find("points=\""));
  int seen = 0;
  for (std::sregex_iterator it(pts.begin(), pts.end(), coord), end; it != end; ++it) {
    const double x = std::stod((*it)[1]), y = std::stod((*it)[2]);
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 300.0);
    EXPECT_GE(y, 0.0);
    EXPECT_LE(y, 300.0);
    ++seen;
  }
  EXPECT_EQ(seen, 3);
}

TEST(Svg, SaveWritesTheDocument) {
  SvgFigure fig;
  fig.polyline({{0, 0}, {1, 0}});
  const auto path = std::filesystem::temp_directory_path() / "sphgeom_test_svg.svg";
  fig.save(path.string());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), fig.str());
  std::filesystem::remove(path);
  EXPECT_THROW(fig.save("/nonexistent-dir/x.svg"), std::runtime_error);
}

TEST(Svg, ProjectPathSplitsAtWrapAndDomainGaps) {
  std::vector<SPoint> pts;
  for (int k = 0; k <= 100; ++k) pts.push_back(from_geo(GeoCoord::make(0.3, 2.5 + 0.02 * k)));
  const auto pieces = project_path(Projection::mercator(), pts);
  ASSERT_EQ(pieces.size(), 2u);
  EXPECT_EQ(pieces[0].size() + pieces[1].size(), 101u);

  // A great circle through the gnomonic tangent point leaves the hemisphere twice.
  std::vector<SPoint> gc;
  for (int k = 0; k <= 360; ++k) gc.push_back(from_geo(GeoCoord::make(0.0, kTwoPi * k / 360)));
  for (const auto& piece : project_path(Projection::gnomonic(SPoint(1, 0, 0)), gc)) {
    for (const Vec2& q : piece) EXPECT_LE(q.norm(), 10.0);
  }
}

TEST(Svg, MercatorGraticuleIsRectangular) {
  const auto lines = graticule(Projection::mercator(), kPi / 6);
  EXPECT_EQ(lines.size(), 12u + 5u);
  for (const auto& l : lines) {
    const bool vertical = std::abs(l.front().x() - l.back().x()) < 1e-12;
    const bool horizontal = std::abs(l.front().y() - l.back().y()) < 1e-12;
    EXPECT_TRUE(vertical || horizontal);
  }
  EXPECT_THROW(graticule(Projection::mercator(), 0.0), Error);
}

TEST(Svg, StereographicGraticuleDrawsParallelsAsCircles) {
  const auto lines = graticule(Projection::stereographic(SPoint(0, 0, -1)), kPi / 4);
  int circles = 0;
  for (const auto& l : lines) {
    const double r0 = l.front().norm();
    bool round = true;
    for (const Vec2& q : l) round = round && std::abs(q.norm() - r0) < 1e-12;
    circles += round && (l.front() - l.back()).norm() < 1e-9;
  }
  EXPECT_EQ(circles, 3);
}
