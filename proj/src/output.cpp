#include "nashseek/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nashseek/errors.hpp"

namespace nashseek {

namespace {

std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Coordinate names x_i_j in player-major order, 1-based on both indices.
std::vector<std::string> coordinate_names(const StateLayout& lay,
                                          const char* prefix) {
  std::vector<std::string> names;
  names.reserve(lay.dim);
  for (int i = 0; i < lay.n_players; ++i)
    for (int j = 1; j <= lay.action_dims[i]; ++j)
      names.push_back(std::string(prefix) + "_" + std::to_string(i + 1) +
                      "_" + std::to_string(j));
  return names;
}

const StateLayout& require_layout(const Trajectory& traj) {
  if (!traj.layout)
    throw WrongStrategyKind("output needs a strategy trajectory");
  return *traj.layout;
}

struct Ticks {
  std::vector<double> values;
};

// Tick positions at a 1/2/5 x 10^k step covering [lo, hi].
Ticks nice_ticks(double lo, double hi, int target) {
  Ticks t;
  const double range = hi - lo;
  if (!(range > 0.0)) {
    t.values = {lo};
    return t;
  }
  const double raw = range / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    step = mult * mag;
    if (step >= raw) break;
  }
  const double first = std::ceil(lo / step) * step;
  for (double v = first; v <= hi + step * 1e-9; v += step)
    t.values.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  return t;
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf", "#393b79", "#ad494a"};
constexpr int kPaletteSize = 12;

}  // namespace

std::string render_csv(const Trajectory& traj) {
  const StateLayout& lay = require_layout(traj);
  if (traj.samples() == 0) throw ValidationError("trajectory is empty");

  std::ostringstream out;
  out << "t";
  for (const auto& n : coordinate_names(lay, "x")) out << "," << n;
  for (const auto& n : coordinate_names(lay, "v")) out << "," << n;
  const bool with_controls = !traj.controls.empty();
  if (with_controls)
    for (const auto& n : coordinate_names(lay, "u")) out << "," << n;
  out << "\n";

  for (std::size_t s = 0; s < traj.samples(); ++s) {
    out << full_precision(traj.times[s]);
    const Eigen::VectorXd& state = traj.states[s];
    for (int c = 0; c < lay.dim; ++c)
      out << "," << full_precision(state(lay.x_offset() + c));
    for (int c = 0; c < lay.dim; ++c)
      out << "," << full_precision(state(lay.v_offset() + c));
    if (with_controls)
      for (int c = 0; c < lay.dim; ++c)
        out << "," << full_precision(traj.controls[s](c));
    out << "\n";
  }
  return out.str();
}

void emit_csv(const Trajectory& traj, const std::string& path) {
  const std::string body = render_csv(traj);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string render_svg(const Trajectory& traj, PlotKind kind) {
  const StateLayout& lay = require_layout(traj);
  if (traj.samples() == 0) throw ValidationError("trajectory is empty");

  const int offset =
      kind == PlotKind::positions ? lay.x_offset() : lay.v_offset();
  const char* prefix = kind == PlotKind::positions ? "x" : "v";
  const auto names = coordinate_names(lay, prefix);

  const double width = 900, height = 520;
  const double left = 70, top = 30, right = 190, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;

  const double t_lo = traj.times.front();
  double t_hi = traj.times.back();
  if (t_hi <= t_lo) t_hi = t_lo + 1.0;

  double y_lo = traj.states[0](offset), y_hi = y_lo;
  for (const auto& s : traj.states)
    for (int c = 0; c < lay.dim; ++c) {
      y_lo = std::min(y_lo, s(offset + c));
      y_hi = std::max(y_hi, s(offset + c));
    }
  if (y_hi - y_lo < 1e-12) {
    y_lo -= 1.0;
    y_hi += 1.0;
  } else {
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
  }

  const auto sx = [&](double t) {
    return left + (t - t_lo) / (t_hi - t_lo) * pw;
  };
  const auto sy = [&](double y) {
    return top + (y_hi - y) / (y_hi - y_lo) * ph;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";

  // Axes with ticks.
  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(top + ph)
      << "\" x2=\"" << fixed2(left + pw) << "\" y2=\"" << fixed2(top + ph)
      << "\"/>\n";
  out << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(top)
      << "\" x2=\"" << fixed2(left) << "\" y2=\"" << fixed2(top + ph)
      << "\"/>\n";
  out << "</g>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (double tv : nice_ticks(t_lo, t_hi, 8).values) {
    const double px = sx(tv);
    out << "<line x1=\"" << fixed2(px) << "\" y1=\"" << fixed2(top + ph)
        << "\" x2=\"" << fixed2(px) << "\" y2=\"" << fixed2(top + ph + 5)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed2(px) << "\" y=\"" << fixed2(top + ph + 18)
        << "\" text-anchor=\"middle\">" << tick_label(tv) << "</text>\n";
  }
  for (double yv : nice_ticks(y_lo, y_hi, 6).values) {
    const double py = sy(yv);
    out << "<line x1=\"" << fixed2(left - 5) << "\" y1=\"" << fixed2(py)
        << "\" x2=\"" << fixed2(left) << "\" y2=\"" << fixed2(py)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed2(left - 8) << "\" y=\"" << fixed2(py + 4)
        << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
  }
  out << "<text x=\"" << fixed2(left + pw / 2) << "\" y=\""
      << fixed2(height - 12) << "\" text-anchor=\"middle\">t</text>\n";
  out << "<text x=\"18\" y=\"" << fixed2(top + ph / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fixed2(top + ph / 2) << ")\">" << prefix << "</text>\n";
  out << "</g>\n";

  // One polyline per coordinate.
  for (int c = 0; c < lay.dim; ++c) {
    out << "<polyline fill=\"none\" stroke=\"" << kPalette[c % kPaletteSize]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t s = 0; s < traj.samples(); ++s) {
      if (s) out << " ";
      out << fixed2(sx(traj.times[s])) << ","
          << fixed2(sy(traj.states[s](offset + c)));
    }
    out << "\"/>\n";
  }

  // Legend.
  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int c = 0; c < lay.dim; ++c) {
    const double ly = top + 14 + 16.0 * c;
    const double lx = left + pw + 18;
    out << "<line x1=\"" << fixed2(lx) << "\" y1=\"" << fixed2(ly - 4)
        << "\" x2=\"" << fixed2(lx + 22) << "\" y2=\"" << fixed2(ly - 4)
        << "\" stroke=\"" << kPalette[c % kPaletteSize]
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fixed2(lx + 28) << "\" y=\"" << fixed2(ly)
        << "\">" << names[c] << "</text>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

void emit_svg_plot(const Trajectory& traj, PlotKind kind,
                   const std::string& path) {
  const std::string body = render_svg(traj, kind);  // may throw; no file then
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace nashseek
