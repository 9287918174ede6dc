#ifndef MEANFIELD_TRAJECTORY_HPP_
#define MEANFIELD_TRAJECTORY_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace meanfield {

enum class Event { Grid, Spike1, Reset2, Rejected };

std::string event_name(Event e);

struct TrajectoryRecord {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  Event event = Event::Grid;
  std::optional<double> mark;        // drawn jump mark, spike1 only
  std::optional<double> log_weight;  // cumulative, auxiliary paths only
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;

  const TrajectoryRecord& back() const { return records.back(); }
  bool has_log_weight() const;
};

// Shortest round-trip decimal formatting, shared by all CSV writers.
std::string format_double(double v);

// Header `t,x,y,event,mark` plus a `log_weight` column when any record
// carries one.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace meanfield

#endif  // MEANFIELD_TRAJECTORY_HPP_
