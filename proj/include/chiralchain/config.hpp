#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chiralchain/model.hpp"

namespace chiralchain::cli {

/// Configuration or parameter-domain problem; the CLI exits with code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class JobKind { PhaseDiagram, Correlations, Entropy, Quench, Scaling };

std::string to_string(JobKind kind);
JobKind job_kind_from(const std::string& name);

struct SweepAxis {
  std::string name;  // gamma | d | h | alpha
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  double value(int i) const { return steps < 2 ? min : min + (max - min) * i / (steps - 1); }
};

/// One validated job description. Every knob of every job kind lives here;
/// parse_config fills defaults, rejects unknown keys with line diagnostics,
/// and serialize_config emits the canonical document (parse-serialize is
/// idempotent).
struct JobConfig {
  JobKind kind = JobKind::Correlations;
  ModelParams model;
  std::optional<ModelParams> post;  // quench target; inherits unset keys from model

  std::vector<SweepAxis> axes;
  std::vector<int> nlist;  // scaling job sizes

  std::vector<std::string> observables;         // phase-diagram: gap chiral fm
  std::vector<std::string> quench_observables;  // relaxation steady entropy

  // fit windows and grids
  int rmin = 4;
  int rmax = 0;  // 0 -> n/8 at run time
  int rprofile = 0;  // profile extent, 0 -> n/8
  int lmin = 8;
  int lmax = 0;  // 0 -> n/4
  int block = 80;
  double tmin = 1.0;
  double tmax = 1000.0;
  int tsteps = 400;
  double ent_tmax = 60.0;
  int ent_tsteps = 120;
  double hmin = 0.5;
  double hmax = 1.5;
  int hsteps = 101;
  double h_infinity = 1.0;

  int workers = 0;  // 0 = library default
  std::string out_dir = "out";
  std::string csv;  // empty -> <job>.csv
  bool plot = false;
};

JobConfig parse_config(const std::string& text);

/// Applies a `section.key=value` (or top-level `key=value`) override on the
/// textual level, as the --set flag does.
std::string apply_override(const std::string& text, const std::string& assignment);

std::string serialize_config(const JobConfig& config);

}  // namespace chiralchain::cli
