#include "meanfield/trajectory.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace meanfield {

std::string event_name(Event e) {
  switch (e) {
    case Event::Grid: return "grid";
    case Event::Spike1: return "spike1";
    case Event::Reset2: return "reset2";
    case Event::Rejected: return "rejected";
  }
  return "?";
}

bool Trajectory::has_log_weight() const {
  for (const auto& r : records)
    if (r.log_weight) return true;
  return false;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const bool lw = traj.has_log_weight();
  os << "t,x,y,event,mark";
  if (lw) os << ",log_weight";
  os << "\n";
  for (const auto& r : traj.records) {
    os << format_double(r.t) << ',' << format_double(r.x) << ',' << format_double(r.y)
       << ',' << event_name(r.event) << ',';
    if (r.mark) os << format_double(*r.mark);
    if (lw) {
      os << ',';
      if (r.log_weight) os << format_double(*r.log_weight);
    }
    os << "\n";
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_trajectory_csv(out, traj);
}

}  // namespace meanfield
