#include "chiralchain/spincorr.hpp"

#include <cmath>

#include "chiralchain/numerics.hpp"

namespace chiralchain::spincorr {

namespace {

constexpr double kImagResidueTol = 1e-6;

// Operator strings behind the correlators, written with every A to the left
// of every B so all matrix entries are <AA>, <AB> or <BB> contractions.
// Site offsets are relative to the left spin:
//   sigma^x_0 sigma^x_R = B_0 (A_1 B_1)...(A_{R-1} B_{R-1}) A_R reordered ->
//     A-sites 1..R,   B-sites 0..R-1, prefactor (-1)^{R(R+1)/2}
//   sigma^y_0 sigma^y_R -> A-sites 0..R-1, B-sites 1..R,  same prefactor
//   sigma^x_0 sigma^y_R -> A-sites 1..R-1, B-sites 0..R,  prefactor i(-1)^{R(R-1)/2}
//   sigma^y_0 sigma^x_R -> A-sites 0..R,   B-sites 1..R-1, same prefactor
struct Ordering {
  std::vector<int> a_sites;
  std::vector<int> b_sites;
  cdouble prefactor;
};

Ordering make_ordering(Axis a, Axis b, int r) {
  auto range = [](int lo, int hi) {  // inclusive
    std::vector<int> out;
    for (int s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  };
  const double sign_cc = ((static_cast<long long>(r) * (r + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  const double sign_s = ((static_cast<long long>(r) * (r - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  if (a == Axis::X && b == Axis::X) return {range(1, r), range(0, r - 1), sign_cc};
  if (a == Axis::Y && b == Axis::Y) return {range(0, r - 1), range(1, r), sign_cc};
  if (a == Axis::X && b == Axis::Y) return {range(1, r - 1), range(0, r), cdouble(0, sign_s)};
  return {range(0, r), range(1, r - 1), cdouble(0, sign_s)};
}

double real_checked(cdouble value, const char* what) {
  if (std::abs(value.imag()) > kImagResidueTol)
    throw ConsistencyError(std::string(what) + ": imaginary residue " +
                           std::to_string(value.imag()) + " exceeds 1e-6");
  return value.real();
}

double entropy_bits(const Eigen::VectorXd& probs, const char* what) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    double p = probs(i);
    if (p < -1e-6)
      throw ConsistencyError(std::string(what) + ": negative weight " + std::to_string(p));
    if (p <= 0.0) continue;  // roundoff negativity clipped to zero
    s -= p * std::log2(p);
  }
  return s;
}

}  // namespace

double pfaffian_correlator(const gaussian::ContractionTables& tables, Axis a, Axis b, int r) {
  if (r < 1) throw std::invalid_argument("spin_correlator: R must be >= 1");
  const Ordering ord = make_ordering(a, b, r);
  const int na = static_cast<int>(ord.a_sites.size());
  const int dim = na + static_cast<int>(ord.b_sites.size());
  numerics::AntisymmetricMatrix m(dim);
  for (int p = 0; p < dim; ++p) {
    for (int q = p + 1; q < dim; ++q) {
      cdouble value;
      if (q < na)
        value = tables.aa_r(ord.a_sites[q] - ord.a_sites[p]);
      else if (p < na)
        value = tables.ab_r(ord.b_sites[q - na] - ord.a_sites[p]);
      else
        value = tables.bb_r(ord.b_sites[q - na] - ord.b_sites[p - na]);
      m.set_upper(p, q, value);
    }
  }
  return real_checked(ord.prefactor * numerics::pfaffian(m), "spin_correlator");
}

double czz_from_tables(const gaussian::ContractionTables& tables, int r) {
  if (r < 1) throw std::invalid_argument("czz_correlator: R must be >= 1");
  // sigma^z_0 sigma^z_R = (A_0 B_0)(A_R B_R)
  numerics::AntisymmetricMatrix m(4);
  m.set_upper(0, 1, tables.ab_r(0));
  m.set_upper(0, 2, tables.aa_r(r));
  m.set_upper(0, 3, tables.ab_r(r));
  m.set_upper(1, 2, -tables.ab_r(-r));  // <B_0 A_R> = -<A_R B_0>
  m.set_upper(1, 3, tables.bb_r(r));
  m.set_upper(2, 3, tables.ab_r(0));
  return real_checked(numerics::pfaffian(m), "czz_correlator");
}

namespace {

gaussian::ContractionTables tables_for(const gaussian::GaussianState& state, int rmax) {
  if (rmax < 1 || rmax > state.params.n / 2)
    throw std::invalid_argument("spincorr: R must lie in [1, n/2]");
  return gaussian::contraction_tables(state, -rmax - 1, rmax + 1, Exec::Serial);
}

}  // namespace

double spin_correlator(const gaussian::GaussianState& state, Axis a, Axis b, int r) {
  return pfaffian_correlator(tables_for(state, r), a, b, r);
}

double czz_correlator(const gaussian::GaussianState& state, int r) {
  return czz_from_tables(tables_for(state, r), r);
}

double chiral_order(const gaussian::GaussianState& state) {
  const gaussian::ContractionTables t = tables_for(state, 1);
  return 0.25 * (pfaffian_correlator(t, Axis::X, Axis::Y, 1) -
                 pfaffian_correlator(t, Axis::Y, Axis::X, 1));
}

double fm_order(const gaussian::GaussianState& state) {
  return spin_correlator(state, Axis::X, Axis::X, state.params.n / 2);
}

SpinObservables spin_observables(const gaussian::GaussianState& state, int rmax, Exec exec) {
  if (rmax < 1 || rmax > state.params.n / 2)
    throw std::invalid_argument("spin_observables: rmax must lie in [1, n/2]");
  const gaussian::ContractionTables tables =
      gaussian::contraction_tables(state, -rmax - 1, rmax + 1, exec);
  SpinObservables obs;
  obs.mz = real_checked(tables.ab_r(0), "magnetization");
  obs.rmax = rmax;
  obs.cxx.resize(rmax);
  obs.cyy.resize(rmax);
  obs.czz.resize(rmax);
  obs.cxy.resize(rmax);
  obs.cyx.resize(rmax);
  parallel_for(exec, rmax, [&](std::int64_t idx) {
    const int r = static_cast<int>(idx) + 1;
    obs.cxx[idx] = pfaffian_correlator(tables, Axis::X, Axis::X, r);
    obs.cyy[idx] = pfaffian_correlator(tables, Axis::Y, Axis::Y, r);
    obs.cxy[idx] = pfaffian_correlator(tables, Axis::X, Axis::Y, r);
    obs.cyx[idx] = pfaffian_correlator(tables, Axis::Y, Axis::X, r);
    obs.czz[idx] = czz_from_tables(tables, r);
  });
  return obs;
}

Eigen::Matrix4cd two_site_density_from(const SpinObservables& obs, int r) {
  if (r < 1 || r > obs.rmax) throw std::invalid_argument("two_site_density: R out of range");
  Eigen::Matrix2cd sx, sy, sz, id;
  sx << 0, 1, 1, 0;
  sy << 0, cdouble(0, -1), cdouble(0, 1), 0;
  sz << 1, 0, 0, -1;
  id.setIdentity();
  auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
  };
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity();
  rho += obs.mz * (kron(sz, id) + kron(id, sz));
  rho += obs.cxx_r(r) * kron(sx, sx);
  rho += obs.cyy_r(r) * kron(sy, sy);
  rho += obs.czz_r(r) * kron(sz, sz);
  rho += obs.cxy_r(r) * kron(sx, sy);
  rho += obs.cyx_r(r) * kron(sy, sx);
  rho *= 0.25;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-6)
    throw ConsistencyError("two_site_density: negativity " +
                           std::to_string(es.eigenvalues().minCoeff()) + " beyond -1e-6");
  return rho;
}

Eigen::Matrix4cd two_site_density(const gaussian::GaussianState& state, int r) {
  return two_site_density_from(spin_observables(state, r, Exec::Serial), r);
}

double mutual_information_from(const SpinObservables& obs, int r) {
  const Eigen::Matrix4cd rho = two_site_density_from(obs, r);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  const double s_pair = entropy_bits(es.eigenvalues(), "mutual_information");
  Eigen::Vector2d single((1.0 + obs.mz) / 2.0, (1.0 - obs.mz) / 2.0);
  const double s_site = entropy_bits(single, "mutual_information");
  return 2.0 * s_site - s_pair;
}

double mutual_information(const gaussian::GaussianState& state, int r) {
  return mutual_information_from(spin_observables(state, r, Exec::Serial), r);
}

std::vector<double> mutual_information_profile(const SpinObservables& obs, Exec exec) {
  std::vector<double> out(obs.rmax);
  parallel_for(exec, obs.rmax, [&](std::int64_t idx) {
    out[idx] = mutual_information_from(obs, static_cast<int>(idx) + 1);
  });
  return out;
}

}  // namespace chiralchain::spincorr
