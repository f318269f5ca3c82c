#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "chiralchain/config.hpp"
#include "chiralchain/jobs.hpp"
#include "doctest.h"

using namespace chiralchain;
using namespace chiralchain::cli;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("minimal document gets defaults") {
  const JobConfig cfg = parse_config("job = correlations\n");
  CHECK(cfg.kind == JobKind::Correlations);
  CHECK(cfg.model.n == 512);
  CHECK(cfg.model.kac_normalize);
  CHECK(cfg.rmin == 4);
  CHECK(cfg.out_dir == "out");
}

TEST_CASE("unknown keys are rejected by name with a line number") {
  try {
    parse_config("job = correlations\n[model]\ngama = 0.5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    const std::string what = err.what();
    CHECK(what.find("gama") != std::string::npos);
    CHECK(what.find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("job = correlations\n[modle]\ngamma = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[model]\ngamma = 0.5\n"), ConfigError);  // missing job
  CHECK_THROWS_AS(parse_config("job = quench\n"), ConfigError);         // missing [post]
  CHECK_THROWS_AS(parse_config("job = correlations\n[model]\nn = 511\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("job = correlations\n[model]\nalpha = nope\n"), ConfigError);
}

TEST_CASE("serialize-parse round trip is idempotent over generated configs") {
  std::mt19937 rng(113);
  std::uniform_real_distribution<double> u(-2.0, 3.0);
  std::uniform_int_distribution<int> kind_pick(0, 4), steps(1, 40), coin(0, 1);
  const char* kinds[] = {"phase-diagram", "correlations", "entropy", "quench", "scaling"};
  const char* names[] = {"gamma", "d", "h", "alpha"};
  for (int trial = 0; trial < 50; ++trial) {
    std::ostringstream doc;
    const int kind = kind_pick(rng);
    doc << "job = " << kinds[kind] << "\n";
    doc << "[model]\ngamma = " << u(rng) << "\nh = " << u(rng) << "\nalpha = "
        << std::abs(u(rng)) << "\nn = " << 64 + 2 * steps(rng) << "\n";
    if (kind == 3) doc << "[post]\nalpha = " << std::abs(u(rng)) + 0.1 << "\n";
    if (kind == 0 || kind == 2)
      doc << "[sweep]\naxis1 = " << names[coin(rng) * 3] << " 0.25 3.0 " << steps(rng) << "\n";
    if (kind == 4) doc << "[sweep]\nnlist = 16 32 64\n";
    if (coin(rng)) doc << "[fit]\nrmin = " << 2 + coin(rng) << "\n";

    const JobConfig once = parse_config(doc.str());
    const std::string canon = serialize_config(once);
    const JobConfig twice = parse_config(canon);
    CHECK(serialize_config(twice) == canon);
  }
}

TEST_CASE("overrides rewrite existing keys and create missing ones") {
  std::string text = "job = correlations\n[model]\ngamma = 0.5\n";
  text = apply_override(text, "model.gamma=0.75");
  text = apply_override(text, "model.d=1.25");
  text = apply_override(text, "fit.rmax=32");
  const JobConfig cfg = parse_config(text);
  CHECK(cfg.model.gamma == doctest::Approx(0.75));
  CHECK(cfg.model.d == doctest::Approx(1.25));
  CHECK(cfg.rmax == 32);
  CHECK_THROWS_AS(apply_override(text, "model.gama=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(text, "nonsense"), ConfigError);
}

TEST_CASE("jobs write deterministic csv independent of worker count") {
  const auto dir = std::filesystem::temp_directory_path() / "chiralchain_test_determinism";
  std::filesystem::remove_all(dir);
  std::string text =
      "job = phase-diagram\n"
      "[model]\ngamma = 0.5\nh = -0.5\nn = 64\nalpha = 2.0\n"
      "[sweep]\naxis1 = alpha 0.5 2.5 4\naxis2 = d 0.0 2.0 3\n"
      "[observables]\nset = gap chiral\n";

  text = apply_override(text, "output.dir=" + (dir / "w1").string());
  JobConfig cfg = parse_config(apply_override(text, "workers=1"));
  const auto first = run_job(cfg);

  cfg = parse_config(
      apply_override(apply_override(text, "workers=2"), "output.dir=" + (dir / "w2").string()));
  const auto second = run_job(cfg);

  REQUIRE(first.size() == 1);
  REQUIRE(second.size() == 1);
  std::string a = slurp(first[0]);
  std::string b = slurp(second[0]);
  // worker count and output dir are echoed in the header; outside those
  // comment lines the bytes must match
  const auto strip = [](std::string s) {
    std::ostringstream out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line))
      if (line.rfind("# workers", 0) != 0 && line.rfind("# dir", 0) != 0) out << line << "\n";
    return out.str();
  };
  CHECK(strip(a) == strip(b));
  CHECK(a.find("alpha,d,gap,chiral_order") != std::string::npos);

  // identical reruns are byte-identical
  const auto again = run_job(cfg);
  CHECK(slurp(again[0]) == b);
  std::filesystem::remove_all(dir);
}

TEST_CASE("correlations job emits profile and fits") {
  const auto dir = std::filesystem::temp_directory_path() / "chiralchain_test_corr";
  std::filesystem::remove_all(dir);
  std::string text =
      "job = correlations\n"
      "[model]\ngamma = 0.5\nd = 1.5\nh = 0.5\nalpha = 1.3\nn = 128\n"
      "[fit]\nrmin = 4\nrmax = 16\n"
      "[output]\ndir = " +
      (dir).string() + "\nplot = on\n";
  const auto written = run_job(parse_config(text));
  REQUIRE(written.size() >= 2);
  const std::string csv = slurp(written[0]);
  CHECK(csv.find("R,cxx,cyy,czz,cxy,cyx,mutual_information") != std::string::npos);
  const std::string fits = slurp(written[1]);
  CHECK(fits.find("cxx_decay") != std::string::npos);
  CHECK(fits.find("mi_decay") != std::string::npos);
  bool has_svg = false;
  for (const auto& p : written) has_svg |= p.extension() == ".svg";
  CHECK(has_svg);
  std::filesystem::remove_all(dir);
}

TEST_CASE("quench job emits the three series") {
  const auto dir = std::filesystem::temp_directory_path() / "chiralchain_test_quench";
  std::filesystem::remove_all(dir);
  std::string text =
      "job = quench\n"
      "[model]\ngamma = 1.0\nd = 1.3\nh = -0.5\nalpha = 1.1\nn = 128\n"
      "[post]\nalpha = 2.1\n"
      "[fit]\ntmin = 1.0\ntmax = 100.0\ntsteps = 80\nblock = 12\nent_tmax = 20\n"
      "ent_tsteps = 20\nrmax = 16\n"
      "[output]\ndir = " +
      dir.string() + "\n";
  const auto written = run_job(parse_config(text));
  std::vector<std::string> names;
  for (const auto& p : written) names.push_back(p.filename().string());
  CHECK(std::count(names.begin(), names.end(), "relaxation.csv") == 1);
  CHECK(std::count(names.begin(), names.end(), "steady.csv") == 1);
  CHECK(std::count(names.begin(), names.end(), "entropy_growth.csv") == 1);
  CHECK(std::count(names.begin(), names.end(), "fits.csv") == 1);
  const std::string entropy = slurp(dir / "entropy_growth.csv");
  CHECK(entropy.find("# saturation_time = ") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("scaling job locates the kink near the critical field") {
  const auto dir = std::filesystem::temp_directory_path() / "chiralchain_test_scaling";
  std::filesystem::remove_all(dir);
  std::string text =
      "job = scaling\n"
      "[model]\ngamma = 1.0\nd = 0.0\nalpha = 500\nn = 64\n"
      "[sweep]\nnlist = 64 128\n"
      "[fit]\nhmin = 0.5\nhmax = 1.5\nhsteps = 41\nh_infinity = 1.0\n"
      "[output]\ndir = " +
      dir.string() + "\n";
  const auto written = run_job(parse_config(text));
  const std::string csv = slurp(written[0]);
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
    ++rows;
    const auto first_comma = line.find(',');
    const auto second_comma = line.find(',', first_comma + 1);
    const double hc = std::stod(line.substr(first_comma + 1, second_comma - first_comma - 1));
    CHECK(hc == doctest::Approx(1.0).epsilon(0.06));
  }
  CHECK(rows == 2);
  std::filesystem::remove_all(dir);
}
