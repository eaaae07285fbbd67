#ifndef NASHSEEK_OUTPUT_HPP
#define NASHSEEK_OUTPUT_HPP

#include <string>

#include "nashseek/sim.hpp"

namespace nashseek {

enum class PlotKind { positions, velocities };

/// CSV with header t,x_1_1,...,v_1_1,...,u_1_1,...; one row per recorded
/// sample. Values are written with 17 significant digits so they parse back
/// to the same binary doubles.
std::string render_csv(const Trajectory& traj);
void emit_csv(const Trajectory& traj, const std::string& path);

/// Self-contained SVG line plot of the position or velocity coordinates:
/// one polyline per coordinate, axis ticks and a legend. Pure text
/// generation; deterministic for a given trajectory.
std::string render_svg(const Trajectory& traj, PlotKind kind);
void emit_svg_plot(const Trajectory& traj, PlotKind kind,
                   const std::string& path);

}  // namespace nashseek

#endif  // NASHSEEK_OUTPUT_HPP
