#include "chiralchain/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace chiralchain::cli {

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// section -> allowed keys
const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"", {"job", "workers"}},
      {"model", {"gamma", "d", "h", "alpha", "n", "kac"}},
      {"post", {"gamma", "d", "h", "alpha"}},
      {"sweep", {"axis1", "axis2", "nlist"}},
      {"observables", {"set", "quench"}},
      {"fit",
       {"rmin", "rmax", "rprofile", "lmin", "lmax", "block", "tmin", "tmax", "tsteps",
        "ent_tmax", "ent_tsteps", "hmin", "hmax", "hsteps", "h_infinity"}},
      {"output", {"dir", "csv", "plot"}},
  };
  return s;
}

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError("line " + std::to_string(line) + ": malformed section header '" + s +
                          "'");
      section = trim(s.substr(1, s.size() - 2));
      if (!schema().count(section))
        throw ConfigError("line " + std::to_string(line) + ": unknown section [" + section +
                          "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value', got '" + s +
                        "'");
    Entry e;
    e.section = section;
    e.key = trim(s.substr(0, eq));
    e.value = trim(s.substr(eq + 1));
    e.line = line;
    const auto& allowed = schema().at(section);
    if (!allowed.count(e.key))
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + e.key +
                        "' in section [" + e.section + "]");
    entries.push_back(std::move(e));
  }
  return entries;
}

double parse_double(const Entry& e) {
  try {
    std::size_t used = 0;
    const double v = std::stod(e.value, &used);
    if (used != e.value.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + e.key +
                      "' needs a finite number, got '" + e.value + "'");
  }
}

int parse_int(const Entry& e) {
  const double v = parse_double(e);
  if (v != std::floor(v))
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + e.key +
                      "' needs an integer, got '" + e.value + "'");
  return static_cast<int>(v);
}

bool parse_flag(const Entry& e) {
  if (e.value == "on" || e.value == "true") return true;
  if (e.value == "off" || e.value == "false") return false;
  throw ConfigError("line " + std::to_string(e.line) + ": key '" + e.key +
                    "' needs on/off, got '" + e.value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::istringstream in(value);
  std::string word;
  while (in >> word) parts.push_back(word);
  return parts;
}

SweepAxis parse_axis(const Entry& e) {
  const auto parts = split_list(e.value);
  if (parts.size() != 4)
    throw ConfigError("line " + std::to_string(e.line) +
                      ": sweep axis needs 'name min max steps'");
  static const std::set<std::string> names = {"gamma", "d", "h", "alpha"};
  if (!names.count(parts[0]))
    throw ConfigError("line " + std::to_string(e.line) + ": unknown sweep parameter '" +
                      parts[0] + "'");
  SweepAxis axis;
  axis.name = parts[0];
  try {
    axis.min = std::stod(parts[1]);
    axis.max = std::stod(parts[2]);
    axis.steps = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(e.line) + ": malformed sweep axis numbers");
  }
  if (axis.steps < 1)
    throw ConfigError("line " + std::to_string(e.line) + ": sweep steps must be >= 1");
  return axis;
}

void check_set(const Entry& e, const std::vector<std::string>& values,
               const std::set<std::string>& allowed) {
  for (const auto& v : values)
    if (!allowed.count(v))
      throw ConfigError("line " + std::to_string(e.line) + ": unknown observable '" + v + "'");
}

}  // namespace

std::string to_string(JobKind kind) {
  switch (kind) {
    case JobKind::PhaseDiagram: return "phase-diagram";
    case JobKind::Correlations: return "correlations";
    case JobKind::Entropy: return "entropy";
    case JobKind::Quench: return "quench";
    case JobKind::Scaling: return "scaling";
  }
  return "?";
}

JobKind job_kind_from(const std::string& name) {
  if (name == "phase-diagram") return JobKind::PhaseDiagram;
  if (name == "correlations") return JobKind::Correlations;
  if (name == "entropy") return JobKind::Entropy;
  if (name == "quench") return JobKind::Quench;
  if (name == "scaling") return JobKind::Scaling;
  throw ConfigError("unknown job kind '" + name + "'");
}

JobConfig parse_config(const std::string& text) {
  JobConfig cfg;
  bool saw_job = false;
  bool saw_post = false;
  ModelParams post_overrides;  // defaults replaced below
  bool post_gamma = false, post_d = false, post_h = false, post_alpha = false;

  for (const Entry& e : tokenize(text)) {
    if (e.section.empty()) {
      if (e.key == "job") {
        cfg.kind = job_kind_from(e.value);
        saw_job = true;
      } else {
        cfg.workers = parse_int(e);
      }
    } else if (e.section == "model") {
      if (e.key == "gamma") cfg.model.gamma = parse_double(e);
      else if (e.key == "d") cfg.model.d = parse_double(e);
      else if (e.key == "h") cfg.model.h = parse_double(e);
      else if (e.key == "alpha") cfg.model.alpha = parse_double(e);
      else if (e.key == "n") cfg.model.n = parse_int(e);
      else cfg.model.kac_normalize = parse_flag(e);
    } else if (e.section == "post") {
      saw_post = true;
      if (e.key == "gamma") { post_overrides.gamma = parse_double(e); post_gamma = true; }
      else if (e.key == "d") { post_overrides.d = parse_double(e); post_d = true; }
      else if (e.key == "h") { post_overrides.h = parse_double(e); post_h = true; }
      else { post_overrides.alpha = parse_double(e); post_alpha = true; }
    } else if (e.section == "sweep") {
      if (e.key == "axis1" || e.key == "axis2") {
        const SweepAxis axis = parse_axis(e);
        if (e.key == "axis1") cfg.axes.insert(cfg.axes.begin(), axis);
        else cfg.axes.push_back(axis);
      } else {
        cfg.nlist.clear();
        for (const auto& word : split_list(e.value)) {
          Entry fake = e;
          fake.value = word;
          cfg.nlist.push_back(parse_int(fake));
        }
      }
    } else if (e.section == "observables") {
      const auto values = split_list(e.value);
      if (e.key == "set") {
        check_set(e, values, {"gap", "chiral", "fm"});
        cfg.observables = values;
      } else {
        check_set(e, values, {"relaxation", "steady", "entropy"});
        cfg.quench_observables = values;
      }
    } else if (e.section == "fit") {
      if (e.key == "rmin") cfg.rmin = parse_int(e);
      else if (e.key == "rmax") cfg.rmax = parse_int(e);
      else if (e.key == "rprofile") cfg.rprofile = parse_int(e);
      else if (e.key == "lmin") cfg.lmin = parse_int(e);
      else if (e.key == "lmax") cfg.lmax = parse_int(e);
      else if (e.key == "block") cfg.block = parse_int(e);
      else if (e.key == "tmin") cfg.tmin = parse_double(e);
      else if (e.key == "tmax") cfg.tmax = parse_double(e);
      else if (e.key == "tsteps") cfg.tsteps = parse_int(e);
      else if (e.key == "ent_tmax") cfg.ent_tmax = parse_double(e);
      else if (e.key == "ent_tsteps") cfg.ent_tsteps = parse_int(e);
      else if (e.key == "hmin") cfg.hmin = parse_double(e);
      else if (e.key == "hmax") cfg.hmax = parse_double(e);
      else if (e.key == "hsteps") cfg.hsteps = parse_int(e);
      else cfg.h_infinity = parse_double(e);
    } else {  // output
      if (e.key == "dir") cfg.out_dir = e.value;
      else if (e.key == "csv") cfg.csv = e.value;
      else cfg.plot = parse_flag(e);
    }
  }

  if (!saw_job) throw ConfigError("missing required top-level key 'job'");
  try {
    cfg.model.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  if (cfg.model.n < 4) throw ConfigError("jobs need n >= 4");

  if (saw_post) {
    ModelParams post = cfg.model;
    if (post_gamma) post.gamma = post_overrides.gamma;
    if (post_d) post.d = post_overrides.d;
    if (post_h) post.h = post_overrides.h;
    if (post_alpha) post.alpha = post_overrides.alpha;
    cfg.post = post;
  }
  if (cfg.kind == JobKind::Quench && !cfg.post)
    throw ConfigError("quench jobs need a [post] section");
  if (cfg.kind == JobKind::PhaseDiagram && cfg.axes.empty())
    throw ConfigError("phase-diagram jobs need at least one sweep axis");
  if (cfg.kind == JobKind::Scaling && cfg.nlist.empty())
    throw ConfigError("scaling jobs need a [sweep] nlist");
  for (int n : cfg.nlist)
    if (n < 8 || n % 2 != 0) throw ConfigError("nlist entries must be even and >= 8");
  if (cfg.observables.empty()) cfg.observables = {"gap", "chiral"};
  if (cfg.quench_observables.empty())
    cfg.quench_observables = {"relaxation", "steady", "entropy"};
  if (cfg.rmin < 1 || cfg.lmin < 2 || cfg.block < 1 || cfg.tsteps < 2 || cfg.hsteps < 5 ||
      cfg.ent_tsteps < 10)
    throw ConfigError("fit window out of range");
  if (cfg.workers < 0) throw ConfigError("workers must be >= 0");
  return cfg;
}

std::string apply_override(const std::string& text, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--set needs section.key=value, got '" + assignment + "'");
  std::string path = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  std::string section, key;
  if (const auto dot = path.find('.'); dot != std::string::npos) {
    section = path.substr(0, dot);
    key = path.substr(dot + 1);
  } else {
    key = path;
  }
  const auto it = schema().find(section);
  if (it == schema().end() || !it->second.count(key))
    throw ConfigError("--set: unknown key '" + path + "'");

  // rewrite in place when present, append otherwise
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) lines.push_back(raw);

  std::string current;
  int section_end = -1;
  bool replaced = false;
  for (std::size_t i = 0; i < lines.size() && !replaced; ++i) {
    std::string s = lines[i];
    if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[' && s.back() == ']') {
      current = trim(s.substr(1, s.size() - 2));
      continue;
    }
    if (current == section) {
      section_end = static_cast<int>(i);
      const auto keyend = s.find('=');
      if (keyend != std::string::npos && trim(s.substr(0, keyend)) == key) {
        lines[i] = key + " = " + value;
        replaced = true;
      }
    }
  }
  if (!replaced) {
    if (section.empty()) {
      lines.insert(lines.begin(), key + " = " + value);
    } else if (section_end >= 0) {
      lines.insert(lines.begin() + section_end + 1, key + " = " + value);
    } else {
      lines.push_back("[" + section + "]");
      lines.push_back(key + " = " + value);
    }
  }
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_config(const JobConfig& cfg) {
  std::ostringstream out;
  out << "job = " << to_string(cfg.kind) << "\n";
  out << "workers = " << cfg.workers << "\n\n";
  out << "[model]\n";
  out << "gamma = " << fmt(cfg.model.gamma) << "\n";
  out << "d = " << fmt(cfg.model.d) << "\n";
  out << "h = " << fmt(cfg.model.h) << "\n";
  out << "alpha = " << fmt(cfg.model.alpha) << "\n";
  out << "n = " << cfg.model.n << "\n";
  out << "kac = " << (cfg.model.kac_normalize ? "on" : "off") << "\n";
  if (cfg.post) {
    out << "\n[post]\n";
    out << "gamma = " << fmt(cfg.post->gamma) << "\n";
    out << "d = " << fmt(cfg.post->d) << "\n";
    out << "h = " << fmt(cfg.post->h) << "\n";
    out << "alpha = " << fmt(cfg.post->alpha) << "\n";
  }
  out << "\n[sweep]\n";
  for (std::size_t i = 0; i < cfg.axes.size(); ++i)
    out << "axis" << (i + 1) << " = " << cfg.axes[i].name << " " << fmt(cfg.axes[i].min) << " "
        << fmt(cfg.axes[i].max) << " " << cfg.axes[i].steps << "\n";
  if (!cfg.nlist.empty()) {
    out << "nlist =";
    for (int n : cfg.nlist) out << " " << n;
    out << "\n";
  }
  out << "\n[observables]\nset =";
  for (const auto& o : cfg.observables) out << " " << o;
  out << "\nquench =";
  for (const auto& o : cfg.quench_observables) out << " " << o;
  out << "\n\n[fit]\n";
  out << "rmin = " << cfg.rmin << "\n";
  out << "rmax = " << cfg.rmax << "\n";
  out << "rprofile = " << cfg.rprofile << "\n";
  out << "lmin = " << cfg.lmin << "\n";
  out << "lmax = " << cfg.lmax << "\n";
  out << "block = " << cfg.block << "\n";
  out << "tmin = " << fmt(cfg.tmin) << "\n";
  out << "tmax = " << fmt(cfg.tmax) << "\n";
  out << "tsteps = " << cfg.tsteps << "\n";
  out << "ent_tmax = " << fmt(cfg.ent_tmax) << "\n";
  out << "ent_tsteps = " << cfg.ent_tsteps << "\n";
  out << "hmin = " << fmt(cfg.hmin) << "\n";
  out << "hmax = " << fmt(cfg.hmax) << "\n";
  out << "hsteps = " << cfg.hsteps << "\n";
  out << "h_infinity = " << fmt(cfg.h_infinity) << "\n";
  out << "\n[output]\n";
  out << "dir = " << cfg.out_dir << "\n";
  if (!cfg.csv.empty()) out << "csv = " << cfg.csv << "\n";
  out << "plot = " << (cfg.plot ? "on" : "off") << "\n";
  return out.str();
}

}  // namespace chiralchain::cli
