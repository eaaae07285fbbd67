#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "nashseek/errors.hpp"
#include "nashseek/output.hpp"
#include "nashseek/sim.hpp"

using namespace nashseek;
namespace nt = nashseek::testing;

namespace {

Trajectory single_sample_trajectory() {
  Trajectory traj;
  StateLayout lay;
  lay.kind = StrategyKind::filter;
  lay.n_players = 2;
  lay.dim = 2;
  lay.action_dims = {1, 1};
  traj.layout = lay;
  traj.times = {0.0};
  Eigen::VectorXd s(6);
  s << 0.125, -2.5, 1.0 / 3.0, 0.0, 0.0, 0.0;
  traj.states = {s};
  Eigen::VectorXd u(2);
  u << -1.0, 2.0;
  traj.controls = {u};
  return traj;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("single-sample CSV is a header plus one row") {
  const std::string csv = render_csv(single_sample_trajectory());
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "t,x_1_1,x_2_1,v_1_1,v_2_1,u_1_1,u_2_1");
  CHECK(lines[1].substr(0, 2) == "0,");
}

TEST_CASE("CSV values round-trip to the same doubles") {
  const Trajectory traj = single_sample_trajectory();
  const auto lines = split_lines(render_csv(traj));
  std::stringstream row(lines[1]);
  std::string cell;
  std::vector<double> values;
  while (std::getline(row, cell, ',')) values.push_back(std::strtod(cell.c_str(), nullptr));
  REQUIRE(values.size() == 7);
  CHECK(values[1] == 0.125);
  CHECK(values[2] == -2.5);
  CHECK(values[3] == 1.0 / 3.0);  // 17 digits reproduce the binary value
  CHECK(values[5] == -1.0);
}

TEST_CASE("CSV of a simulated run starts at the configured x0") {
  const auto game = QuadraticGame::connectivity_five();
  const GainSet g = nt::manual_gains(StrategyKind::filter, 5, 10);
  Strategy strat(StrategyKind::filter, game, g);
  SimConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 0.1;
  const Trajectory traj =
      simulate(strat, strat.init_state(nt::builtin_start()), cfg);
  const auto lines = split_lines(render_csv(traj));
  std::stringstream row(lines[1]);
  std::string cell;
  std::getline(row, cell, ',');  // t
  for (int c = 0; c < 10; ++c) {
    std::getline(row, cell, ',');
    CHECK(std::strtod(cell.c_str(), nullptr) == nt::builtin_start()(c));
  }
  CHECK(render_csv(traj) == render_csv(traj));  // deterministic
}

TEST_CASE("CSV and SVG emission write files") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / "nashseek_output_test";
  fs::create_directories(dir);
  const Trajectory traj = single_sample_trajectory();
  const auto csv_path = (dir / "t.csv").string();
  emit_csv(traj, csv_path);
  CHECK(fs::file_size(csv_path) > 0);
  const auto svg_path = (dir / "t.svg").string();
  emit_svg_plot(traj, PlotKind::positions, svg_path);
  CHECK(fs::file_size(svg_path) > 0);
  fs::remove_all(dir);
}

TEST_CASE("SVG has one polyline per coordinate and a legend") {
  const auto game = QuadraticGame::connectivity_five();
  const GainSet g = nt::manual_gains(StrategyKind::filter, 5, 10);
  Strategy strat(StrategyKind::filter, game, g);
  SimConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  const Trajectory traj =
      simulate(strat, strat.init_state(nt::builtin_start()), cfg);
  const std::string svg = render_svg(traj, PlotKind::positions);

  std::size_t count = 0, pos = 0;
  while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  CHECK(count == 10);
  CHECK(svg.find(">x_1_1<") != std::string::npos);
  CHECK(svg.find(">x_5_2<") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);

  const std::string vel = render_svg(traj, PlotKind::velocities);
  CHECK(vel.find(">v_3_1<") != std::string::npos);
}

TEST_CASE("constant trajectories plot as horizontal lines") {
  Trajectory traj = single_sample_trajectory();
  traj.times = {0.0, 1.0, 2.0};
  traj.states = {traj.states[0], traj.states[0], traj.states[0]};
  traj.controls.clear();
  const std::string svg = render_svg(traj, PlotKind::positions);
  // Each polyline's points must share one y value.
  std::size_t pos = 0;
  while ((pos = svg.find("points=\"", pos)) != std::string::npos) {
    pos += 8;
    const std::size_t end = svg.find('"', pos);
    std::stringstream pts(svg.substr(pos, end - pos));
    std::string pair;
    std::string first_y;
    while (pts >> pair) {
      const std::string y = pair.substr(pair.find(',') + 1);
      if (first_y.empty())
        first_y = y;
      else
        CHECK(y == first_y);
    }
  }
}

TEST_CASE("empty trajectories produce no file") {
  namespace fs = std::filesystem;
  Trajectory traj = single_sample_trajectory();
  traj.times.clear();
  traj.states.clear();
  traj.controls.clear();
  const fs::path path =
      fs::temp_directory_path() / "nashseek_empty_plot.svg";
  fs::remove(path);
  CHECK_THROWS_AS(emit_svg_plot(traj, PlotKind::positions, path.string()),
                  ValidationError);
  CHECK_FALSE(fs::exists(path));
  CHECK_THROWS_AS(render_csv(traj), ValidationError);
}

TEST_CASE("raw trajectories cannot be serialized") {
  Trajectory raw;
  raw.times = {0.0};
  raw.states = {Eigen::VectorXd::Zero(1)};
  CHECK_THROWS_AS(render_csv(raw), WrongStrategyKind);
  CHECK_THROWS_AS(render_svg(raw, PlotKind::positions), WrongStrategyKind);
}
