#include "chiralchain/oracle.hpp"

#include <bit>
#include <cmath>

#include "chiralchain/core.hpp"

namespace chiralchain::oracle {

namespace {

// sign of sigma^z at site j
inline double zval(std::size_t s, int j) { return ((s >> j) & 1u) ? -1.0 : 1.0; }

// Applies sigma^{a}_i Z_string sigma^{b}_j to a basis state; returns the
// flipped state and accumulates the phase. a, b in {x = 0, y = 1}.
struct PauliPair {
  int site_a, site_b;
  int kind_a, kind_b;        // 0 = x, 1 = y
  std::vector<int> string_;  // sites carrying sigma^z between the ends
};

void apply_pair_term(const PauliPair& term, cdouble weight, std::size_t dim,
                     Eigen::MatrixXcd& h) {
  for (std::size_t s = 0; s < dim; ++s) {
    cdouble phase = 1.0;
    for (int l : term.string_) phase *= zval(s, l);
    if (term.kind_a == 1) phase *= cdouble(0.0, 1.0) * zval(s, term.site_a);
    if (term.kind_b == 1) phase *= cdouble(0.0, 1.0) * zval(s, term.site_b);
    const std::size_t flipped =
        s ^ (std::size_t(1) << term.site_a) ^ (std::size_t(1) << term.site_b);
    h(flipped, s) += weight * phase;
  }
}

Eigen::MatrixXcd pauli(int kind) {
  Eigen::MatrixXcd m(2, 2);
  if (kind == 0)
    m << 0, 1, 1, 0;
  else if (kind == 1)
    m << 0, cdouble(0, -1), cdouble(0, 1), 0;
  else
    m << 1, 0, 0, -1;
  return m;
}

// <state| sigma^{a}_i Z sigma^{b}_j |state> with the in-between z-string.
double pair_correlator(const Eigen::VectorXcd& state, int n, int i, int kind_a, int j,
                       int kind_b, bool with_string) {
  PauliPair term;
  term.site_a = i;
  term.site_b = j;
  term.kind_a = kind_a;
  term.kind_b = kind_b;
  if (with_string)
    for (int l = i + 1; l < i + 1 + (((j - i) % n + n) % n) - 1; ++l)
      term.string_.push_back(l % n);
  cdouble value = 0.0;
  const std::size_t dim = state.size();
  for (std::size_t s = 0; s < dim; ++s) {
    cdouble phase = 1.0;
    for (int l : term.string_) phase *= zval(s, l);
    if (kind_a == 1) phase *= cdouble(0.0, 1.0) * zval(s, i);
    if (kind_b == 1) phase *= cdouble(0.0, 1.0) * zval(s, j);
    const std::size_t flipped = s ^ (std::size_t(1) << i) ^ (std::size_t(1) << j);
    value += std::conj(state(flipped)) * phase * state(s);
  }
  return value.real();
}

double entropy_bits(const Eigen::VectorXd& probs) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    const double p = probs(i);
    if (p > 0.0) out -= p * std::log2(p);
  }
  return out;
}

Eigen::MatrixXcd reduced_density(const Eigen::VectorXcd& state, int n,
                                 const std::vector<int>& keep) {
  const int nk = static_cast<int>(keep.size());
  const std::size_t dim_keep = std::size_t(1) << nk;
  const std::size_t dim_rest = std::size_t(1) << (n - nk);
  std::vector<int> rest;
  for (int j = 0; j < n; ++j)
    if (std::find(keep.begin(), keep.end(), j) == keep.end()) rest.push_back(j);

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_keep, dim_keep);
  std::vector<std::size_t> index(dim_keep);
  for (std::size_t b = 0; b < dim_rest; ++b) {
    std::size_t base = 0;
    for (int jb = 0; jb < n - nk; ++jb)
      if ((b >> jb) & 1u) base |= std::size_t(1) << rest[jb];
    for (std::size_t a = 0; a < dim_keep; ++a) {
      std::size_t s = base;
      // keep[0] is the most significant factor so that rho indexes as
      // kron(site_keep[0], site_keep[1], ...)
      for (int ja = 0; ja < nk; ++ja)
        if ((a >> (nk - 1 - ja)) & 1u) s |= std::size_t(1) << keep[ja];
      index[a] = s;
    }
    for (std::size_t a = 0; a < dim_keep; ++a)
      for (std::size_t c = 0; c < dim_keep; ++c)
        rho(a, c) += state(index[a]) * std::conj(state(index[c]));
  }
  return rho;
}

}  // namespace

double ed_parity(const Eigen::VectorXcd& state, int n) {
  double parity = 0.0;
  for (std::size_t s = 0; s < static_cast<std::size_t>(state.size()); ++s) {
    const double sign = (std::popcount(s) % 2 == 0) ? 1.0 : -1.0;
    parity += sign * std::norm(state(s));
  }
  (void)n;
  return parity;
}

DenseSpinSystem ed_build(const ModelParams& params) {
  params.validate();
  if (params.n > 12)
    throw std::invalid_argument("ed_build: dense diagonalization is limited to n <= 12");
  const int n = params.n;
  const std::size_t dim = std::size_t(1) << n;

  DenseSpinSystem sys;
  sys.params = params;
  sys.hamiltonian = Eigen::MatrixXcd::Zero(dim, dim);

  const double norm = params.kac_normalize ? core::kac_norm(params.alpha, n) : 1.0;
  for (int j = 0; j < n; ++j) {
    for (int r = 1; r <= n / 2; ++r) {
      const double jr = std::pow(static_cast<double>(r), -params.alpha) / norm;
      PauliPair base;
      base.site_a = j;
      base.site_b = (j + r) % n;
      for (int l = j + 1; l <= j + r - 1; ++l) base.string_.push_back(l % n);

      PauliPair term = base;
      term.kind_a = 0;
      term.kind_b = 0;
      apply_pair_term(term, -jr * (1.0 + params.gamma) / 4.0, dim, sys.hamiltonian);
      term.kind_a = 1;
      term.kind_b = 1;
      apply_pair_term(term, -jr * (1.0 - params.gamma) / 4.0, dim, sys.hamiltonian);
      term.kind_a = 0;
      term.kind_b = 1;
      apply_pair_term(term, -jr * params.d / 4.0, dim, sys.hamiltonian);
      term.kind_a = 1;
      term.kind_b = 0;
      apply_pair_term(term, jr * params.d / 4.0, dim, sys.hamiltonian);
    }
  }
  for (std::size_t s = 0; s < dim; ++s) {
    double field = 0.0;
    for (int j = 0; j < n; ++j) field += zval(s, j);
    sys.hamiltonian(s, s) += -params.h / 2.0 * field;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sys.hamiltonian);
  sys.eigenvalues = es.eigenvalues();
  sys.eigenvectors = es.eigenvectors();
  sys.ground = sys.eigenvectors.col(0);
  sys.ground_energy = sys.eigenvalues(0);

  // lowest even-parity state plus the in-sector degeneracy guard
  int first_even = -1, second_even = -1;
  for (Eigen::Index c = 0; c < sys.eigenvalues.size(); ++c) {
    const double parity = ed_parity(sys.eigenvectors.col(c), n);
    if (std::abs(parity) < 0.9) {
      // parity-mixed eigenvector: exact degeneracy across sectors
      if (first_even < 0) sys.degenerate = true;
      continue;
    }
    if (parity > 0.0) {
      if (first_even < 0) {
        first_even = static_cast<int>(c);
      } else if (second_even < 0) {
        second_even = static_cast<int>(c);
        break;
      }
    }
  }
  if (first_even < 0) {
    sys.degenerate = true;
    sys.even_ground = sys.ground;
    sys.even_ground_energy = sys.ground_energy;
  } else {
    sys.even_ground = sys.eigenvectors.col(first_even);
    sys.even_ground_energy = sys.eigenvalues(first_even);
    if (second_even >= 0 &&
        sys.eigenvalues(second_even) - sys.eigenvalues(first_even) < 1e-10)
      sys.degenerate = true;
  }
  return sys;
}

double ed_block_entropy(const Eigen::VectorXcd& state, int n, int l) {
  if (l < 1 || l >= n) throw std::invalid_argument("ed_block_entropy: l out of range");
  std::vector<int> keep(l);
  for (int j = 0; j < l; ++j) keep[j] = j;
  const Eigen::MatrixXcd rho = reduced_density(state, n, keep);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  return entropy_bits(es.eigenvalues());
}

EdObservables ed_observables(const DenseSpinSystem& system, const Eigen::VectorXcd& state,
                             int r, int l) {
  const int n = system.params.n;
  if (r < 1 || r > n / 2) throw std::invalid_argument("ed_observables: R out of range");
  if (l < 1 || l > n / 2) throw std::invalid_argument("ed_observables: l out of range");

  EdObservables obs;
  const std::size_t dim = state.size();
  for (std::size_t s = 0; s < dim; ++s) {
    double field = 0.0;
    for (int j = 0; j < n; ++j) field += zval(s, j);
    obs.mz += field / n * std::norm(state(s));
  }

  double cxy1 = 0.0, cyx1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const int j = (i + r) % n;
    obs.cxx += pair_correlator(state, n, i, 0, j, 0, false) / n;
    obs.cyy += pair_correlator(state, n, i, 1, j, 1, false) / n;
    obs.cxy += pair_correlator(state, n, i, 0, j, 1, false) / n;
    obs.cyx += pair_correlator(state, n, i, 1, j, 0, false) / n;
    const int j1 = (i + 1) % n;
    cxy1 += pair_correlator(state, n, i, 0, j1, 1, false) / n;
    cyx1 += pair_correlator(state, n, i, 1, j1, 0, false) / n;
    double zz = 0.0;
    for (std::size_t s = 0; s < dim; ++s) zz += zval(s, i) * zval(s, j) * std::norm(state(s));
    obs.czz += zz / n;
  }
  obs.chiral = 0.25 * (cxy1 - cyx1);

  // pair density matrix averaged over the ring (translation invariance)
  obs.rho_pair.setZero();
  double s_site = 0.0, s_pair = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXcd rho2 = reduced_density(state, n, {i, (i + r) % n});
    obs.rho_pair += rho2 / n;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(rho2, Eigen::EigenvaluesOnly);
    s_pair += entropy_bits(es2.eigenvalues()) / n;
    const Eigen::MatrixXcd rho1 = reduced_density(state, n, {i});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es1(rho1, Eigen::EigenvaluesOnly);
    s_site += 2.0 * entropy_bits(es1.eigenvalues()) / n;
  }
  obs.mutual_information = s_site - s_pair;
  obs.block_entropy = ed_block_entropy(state, n, l);
  return obs;
}

EdObservables ed_observables(const DenseSpinSystem& system, int r, int l) {
  return ed_observables(system, system.ground, r, l);
}

cdouble ed_dynamic_correlation(const DenseSpinSystem& post, const Eigen::VectorXcd& state,
                               int m, int n, double t) {
  const int sites = post.params.n;
  if (m < 1 || m > sites || n < 1 || n > sites)
    throw std::invalid_argument("ed_dynamic_correlation: site out of range");
  const std::size_t dim = state.size();

  // |psi(t)> through the eigenbasis
  Eigen::VectorXcd coef = post.eigenvectors.adjoint() * state;
  for (Eigen::Index c = 0; c < coef.size(); ++c)
    coef(c) *= std::polar(1.0, -post.eigenvalues(c) * t);
  const Eigen::VectorXcd psi = post.eigenvectors * coef;

  // c_m^dag c_n = (A_m + B_m)(A_n - B_n)/4 with A_j = sigma^x_j S_j,
  // B_j = -i sigma^y_j S_j, S_j the Jordan-Wigner string over sites < j.
  const int i0 = m - 1, i1 = n - 1;
  auto apply_ab = [&](const Eigen::VectorXcd& v, int site, bool is_a) {
    Eigen::VectorXcd out(dim);
    for (std::size_t s = 0; s < dim; ++s) {
      double string_phase = 1.0;
      for (int j = 0; j < site; ++j) string_phase *= zval(s, j);
      const std::size_t flipped = s ^ (std::size_t(1) << site);
      const double local = is_a ? 1.0 : zval(s, site);
      out(flipped) = string_phase * local * v(s);
    }
    return out;
  };
  if (i0 == i1) {
    cdouble occ = 0.0;
    for (std::size_t s = 0; s < dim; ++s)
      occ += ((s >> i0) & 1u ? 1.0 : 0.0) * std::norm(psi(s));
    return occ;
  }
  const Eigen::VectorXcd a_n = apply_ab(psi, i1, true);
  const Eigen::VectorXcd b_n = apply_ab(psi, i1, false);
  const Eigen::VectorXcd rhs = 0.5 * (a_n - b_n);  // c_n |psi>
  const Eigen::VectorXcd a_m = apply_ab(rhs, i0, true);
  const Eigen::VectorXcd b_m = apply_ab(rhs, i0, false);
  const Eigen::VectorXcd full = 0.5 * (a_m + b_m);  // c_m^dag c_n |psi>
  return psi.dot(full);
}

}  // namespace chiralchain::oracle
