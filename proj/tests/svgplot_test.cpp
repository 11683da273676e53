#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "roughsim/svgplot.hpp"

namespace fs = std::filesystem;
using namespace rough;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path temp_file(const char* name) {
  auto dir = fs::temp_directory_path() / "roughsim_svg_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("svgplot") {

TEST_CASE("line plot renders series, error bars, and labels") {
  svg::Series s;
  s.label = "sample";
  s.x = {0, 1, 2, 3};
  s.y = {0.1, 0.4, 0.2, 0.9};
  s.yerr = {0.05, 0.05, 0.05, 0.05};
  svg::PlotOptions opt;
  opt.title = "demo";
  opt.xlabel = "x";
  opt.ylabel = "y";
  const auto path = temp_file("line.svg");
  svg::write_line_plot(path.string(), {s}, opt);
  const auto body = slurp(path);
  CHECK(body.rfind("<svg", 0) == 0);
  CHECK(body.find("polyline") != std::string::npos);
  CHECK(body.find("demo") != std::string::npos);
  CHECK(body.find("sample") != std::string::npos);
  CHECK(body.find("</svg>") != std::string::npos);
}

TEST_CASE("log-scale line plot skips non-positive values") {
  svg::Series s;
  s.label = "log";
  s.x = {1, 2, 3};
  s.y = {0.0, 1.0, 10.0};
  svg::PlotOptions opt;
  opt.log_y = true;
  const auto path = temp_file("log.svg");
  CHECK_NOTHROW(svg::write_line_plot(path.string(), {s}, opt));
}

TEST_CASE("line plot input validation") {
  svg::PlotOptions opt;
  CHECK_THROWS(svg::write_line_plot(temp_file("x.svg").string(), {}, opt));
  svg::Series ragged;
  ragged.x = {1, 2};
  ragged.y = {1};
  CHECK_THROWS(
      svg::write_line_plot(temp_file("x.svg").string(), {ragged}, opt));
}

TEST_CASE("heatmap renders a grid and color scale") {
  std::vector<double> xs{1, 2, 3}, ys{10, 20};
  std::vector<std::vector<double>> v{{1, 2, 3}, {4, 5, 6}};
  svg::PlotOptions opt;
  opt.title = "landscape";
  const auto path = temp_file("heat.svg");
  svg::write_heatmap(path.string(), xs, ys, v, opt);
  const auto body = slurp(path);
  CHECK(body.rfind("<svg", 0) == 0);
  CHECK(body.find("rect") != std::string::npos);

  CHECK_THROWS(svg::write_heatmap(path.string(), xs, ys, {{1, 2, 3}}, opt));
  CHECK_THROWS(svg::write_heatmap(path.string(), xs, ys, {{1, 2}, {3, 4}}, opt));
}

}  // TEST_SUITE
