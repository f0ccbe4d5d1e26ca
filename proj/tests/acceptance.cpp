// Acceptance gate: one PASS/FAIL line per criterion. Optional arguments select criteria by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "altxy/ed.hpp"
#include "altxy/factorization.hpp"
#include "altxy/finite_chain.hpp"
#include "altxy/measures.hpp"
#include "altxy/momentum_hamiltonian.hpp"
#include "altxy/quench.hpp"
#include "altxy/scaling.hpp"
#include "helpers.hpp"

using namespace altxy;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> info;

  // records a check; the criterion passes only if every check does
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

std::string fmt(double x, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> g(0.1, 1.0), l(-2.0, 2.0);
  std::bernoulli_distribution sign;
  const double gamma = sign(rng) ? g(rng) : -g(rng);
  const double l1 = l(rng);
  return {1.0, gamma, l1, l(rng)};
}

double two_pass_std(const std::vector<double>& v) {
  double mean = 0, sq = 0;
  for (double w : v) mean += w;
  mean /= v.size();
  for (double w : v) sq += (w - mean) * (w - mean);
  return std::sqrt(sq / v.size());
}

bool within_band(double value, double target, double rel) { return std::abs(value / target - 1) <= rel; }

void cross_formalism(Outcome& o) {
  std::mt19937_64 rng(1001);
  const double betas[] = {0.5, 2.0, 10.0};
  double worst_ces = 0, worst_tes = 0;
  for (int N : {4, 8, 12}) {
    double worst_n = 0;
    for (int d = 0; d < 20; ++d) {
      const SystemParams p = random_params(rng);
      const SpinHamiltonian h(p, N);
      std::optional<DenseSpectrum> dense;
      std::optional<SymmetricSpectrum> sym;
      if (N <= 8)
        dense = dense_spectrum(h);
      else
        sym = symmetric_spectrum(h);
      for (double beta : betas) {
        const auto T = Temperature::inverse(beta);
        const TwoSiteState ed = dense ? thermal_two_site(*dense, T, 0, 1) : thermal_two_site(*sym, T);
        const TwoSiteState mom = assemble_rho(exact_chain_observables(p, T, N));
        worst_n = std::max(worst_n, max_abs_diff(mom.rho, ed.rho));
      }
    }
    o.info.push_back("CES N=" + std::to_string(N) + " max|drho| " + fmt(worst_n));
    worst_ces = std::max(worst_ces, worst_n);
  }
  for (int d = 0; d < 20; ++d) {
    const SystemParams p = random_params(rng);
    const DenseSpectrum pre = dense_spectrum(SpinHamiltonian(p, 8));
    const DenseSpectrum post = dense_spectrum(SpinHamiltonian(p, 8, Boundary::Periodic, FieldValues{0, 0}));
    for (double beta : betas)
      for (double t : {0.7, 1.7, 3.1}) {
        const auto T = Temperature::inverse(beta);
        const TwoSiteState ed = evolved_two_site(pre, post, T, t, 0, 1);
        const TwoSiteState mom =
            assemble_rho(exact_chain_observables(p, T, 8, Evolution{FieldValues{0, 0}, t}), StateSource::TES);
        worst_tes = std::max(worst_tes, max_abs_diff(mom.rho, ed.rho));
      }
  }
  o.detail << "CES max|drho| " << fmt(worst_ces) << ", TES max|drho| " << fmt(worst_tes) << " (tol 1e-8) ";
  o.check(worst_ces < 1e-8, "CES");
  o.check(worst_tes < 1e-8, "TES");
}

void ground_energy(Outcome& o) {
  const double e_ising = ground_energy_per_site_value({1.0, 1.0, 0.0, 0.0});
  const double e_fl = ground_energy_per_site_value({1.0, 0.8, 0.6, 0.0});
  o.detail << "E0(1,0,0) " << fmt(e_ising + 0.5) << " off, E0(FL) " << fmt(e_fl + 0.5) << " off";
  o.check(std::abs(e_ising + 0.5) < 1e-9, "E0 at gamma=1");
  o.check(std::abs(e_fl + 0.5) < 1e-9, "E0 at FL point");
  // (gamma, lambda1, lambda2), away from both phase boundaries
  const double pts[10][3] = {{0.8, 0.3, 0.2},  {0.8, 1.6, 0.1},  {0.8, 0.1, 1.7}, {0.5, -0.5, 0.4},
                             {0.5, 2.0, -1.0}, {1.0, 0.4, 0.0},  {0.3, -1.5, 0.3}, {0.8, 0.6, 0.0},
                             {0.8, -0.2, -1.2}, {0.6, 1.2, 2.4}};
  double worst = 0;
  for (const auto& x : pts) {
    const SystemParams p{1.0, x[0], x[1], x[2]};
    worst = std::max(worst, std::abs(ground_energy_per_site_value(p) - exact_chain_ground_energy(p, 4096) / 4096));
  }
  o.detail << ", quadrature vs N=4096 chain " << fmt(worst) << " (tol 1e-6)";
  o.check(worst < 1e-6, "quadrature vs finite chain");
}

void factorization_line(Outcome& o) {
  double ln_mix = 0, ln_neel = 0, qd_neel = 0, qd_mix = 0, std_cf = 0, std_num = 0, eps_gap = 0;
  int count = 0;
  for (double gamma : {0.5, 0.8}) {
    std::vector<double> l2;
    for (int i = 0; i < 25; ++i) l2.push_back(-2.0 + 4.0 * i / 24);
    for (const auto& p : factorization_locus(gamma, l2)) {
      ++count;
      const TwoSiteState mix = assemble_rho(ces_observables(p, Temperature::zero_temperature(), SystemSize::infinite()));
      ln_mix = std::max(ln_mix, log_negativity(mix));
      qd_mix = std::max(qd_mix, quantum_discord(mix).discord);
      const NeelProductState neel = neel_product_state(p);
      ln_neel = std::max(ln_neel, log_negativity(neel.pair));
      qd_neel = std::max(qd_neel, quantum_discord(neel.pair).discord);
      std::vector<double> cf, num;
      for (int i = 0; i < 1000; ++i) {
        const double phi = kPi / 2 * (i + 0.5) / 1000;
        cf.push_back(closed_form_energies(p, phi).omega4_plus);
        num.push_back(-spectrum(p, phi)[0]);
      }
      std_cf = std::max(std_cf, two_pass_std(cf));
      std_num = std::max(std_num, two_pass_std(num));
      const SeparableAnsatz s = separable_energy(p);
      eps_gap = std::max(eps_gap, std::abs(s.epsilon - s.epsilon0));
    }
  }
  o.detail << count << " points: LN " << fmt(std::max(ln_mix, ln_neel)) << ", QD(Neel) " << fmt(qd_neel)
           << ", std w4+ " << fmt(std::max(std_cf, std_num)) << ", |eps-eps0| " << fmt(eps_gap);
  o.check(count == 50, "point count");
  o.check(ln_mix < 1e-8 && ln_neel < 1e-8, "LN");
  o.check(qd_neel < 1e-6, "QD");
  o.check(std_cf < 1e-10 && std_num < 1e-10, "flat band");
  o.check(eps_gap < 1e-9, "eps = eps0");
  o.info.push_back("QD of the parity-symmetric zero-T mixture (not asserted): max " + fmt(qd_mix));
}

void gap_loci(Outcome& o) {
  const GapProfile a = gap_profile({1.0, 0.8, 1.0, 0.0});
  const GapProfile b = gap_profile({1.0, 0.8, 0.0, 0.8});
  o.detail << "phi*(1,0) " << fmt(a.phi_star) << " gap " << fmt(a.min_gap) << "; phi*(0,0.8)-pi/2 "
           << fmt(b.phi_star - kPi / 2) << " gap " << fmt(b.min_gap);
  o.check(std::abs(a.phi_star) < 1e-3 && a.min_gap < 1e-8, "AFM-PM locus");
  o.check(std::abs(b.phi_star - kPi / 2) < 1e-3 && b.min_gap < 1e-8, "AFM-DM locus");
}

void phase_boundary(Outcome& o) {
  const double lc_inf = std::sqrt(3.25);
  std::vector<double> slope, offset;
  for (int N : {256, 1024, 4096}) {
    const Curve f = momentum_curve(Measure::LN, Axis::Lambda1, 1.5, 0.8, SystemSize::exact(N));
    const Pseudocritical pc = locate_pseudocritical(f, 1.6, 2.0);
    slope.push_back(pc.slope);
    offset.push_back(pc.lambda_c - lc_inf);
    o.detail << "N=" << N << " |dL/dl1| " << fmt(pc.slope, 4) << " lc-sqrt(3.25) " << fmt(offset.back()) << "; ";
  }
  o.check(slope[0] < slope[1] && slope[1] < slope[2], "slope growth");
  const bool toward = std::abs(offset[0]) > std::abs(offset[1]) && std::abs(offset[1]) > std::abs(offset[2]) &&
                      offset[0] * offset[1] > 0 && offset[1] * offset[2] > 0;
  o.check(toward, "monotone drift");
}

void scaling_exponents(Outcome& o) {
  const std::vector<int> sizes{64, 128, 256, 512, 1024, 2048};
  struct Target {
    Measure m;
    double lo, hi, nu;
  };
  for (const Target& t : {Target{Measure::LN, 0.8, 1.2, 1.645}, Target{Measure::QD, 0.9, 1.1, 1.292}}) {
    std::vector<double> Ns, lc;
    for (int N : sizes) {
      const Curve f = momentum_curve(t.m, Axis::Lambda1, 0.0, 0.8, SystemSize::exact(N));
      Ns.push_back(N);
      lc.push_back(locate_pseudocritical(f, t.lo, t.hi).lambda_c);
    }
    const ScalingFit fit = fit_power_law(Ns, lc, 1.0);
    o.detail << "nu1(" << to_string(t.m) << ") " << fmt(fit.nu, 4) << "+-" << fmt(fit.nu_error, 2) << " vs " << t.nu
             << "; ";
    o.check(within_band(fit.nu, t.nu, 0.15), "nu1 " + to_string(t.m) + " outside 15% band");
  }
  std::vector<double> Ns, jumps;
  for (int N : sizes) {
    const Curve f = momentum_curve(Measure::LN, Axis::Lambda2, 0.0, 0.8, SystemSize::pair_sum(N));
    Ns.push_back(N);
    jumps.push_back(jump_magnitude(f, 0.8));
  }
  const JumpFit jf = fit_jump_decay(Ns, jumps);
  o.detail << "jump nu2 " << fmt(jf.nu, 4) << "+-" << fmt(jf.nu_error, 2) << " vs 0.992";
  o.check(within_band(jf.nu, 0.992, 0.15), "jump exponent outside 15% band");
}

void ergodicity(Outcome& o) {
  const QuenchSpec case1{{1.0, 0.8, 0.0, 0.15}};
  const QuenchSpec case2{{1.0, 0.8, 1.0, 2.0}};
  const ErgodicityReport i_ln = ergodicity_score(case1, Measure::LN);
  const ErgodicityReport i_qd = ergodicity_score(case1, Measure::QD);
  const ErgodicityReport ii_ln = ergodicity_score(case2, Measure::LN);
  const ErgodicityReport ii_qd = ergodicity_score(case2, Measure::QD);
  o.detail << "I: eta LN " << fmt(i_ln.eta) << " QD " << fmt(i_qd.eta) << "; II: eta LN " << fmt(ii_ln.eta) << " QD "
           << fmt(ii_qd.eta) << ", LN avg " << fmt(ii_ln.q_time_avg);
  o.check(i_ln.eta < 1e-3 && i_qd.eta < 1e-3, "case I");
  o.check(ii_ln.eta < 1e-3 && ii_qd.eta > 1e-3, "case II");
  o.check(ii_ln.q_time_avg < 1e-3, "case II LN average");
}

void nonmonotonicity(Outcome& o) {
  const NonmonotonicityResult ln = nonmonotonicity_detect({1.0, 0.8, -0.9, 0.25}, Measure::LN);
  const NonmonotonicityResult qd = nonmonotonicity_detect({1.0, 0.8, -0.4, 0.7}, Measure::QD);
  o.detail << "NG LN(-0.9,0.25) " << ln.ng << " [T " << fmt(ln.T_a) << "->" << fmt(ln.T_b) << "], NG QD(-0.4,0.7) "
           << qd.ng << " [T " << fmt(qd.T_a) << "->" << fmt(qd.T_b) << "]";
  o.check(ln.ng, "LN generator");
  o.check(qd.ng, "QD generator");
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> l1(-2.0, 2.0), l2(-3.0, 3.0);
  int sampled = 0, flagged = 0;
  while (sampled < 100) {
    const SystemParams p{1.0, 0.8, l1(rng), l2(rng)};
    if (p.lambda2 * p.lambda2 <= p.lambda1 * p.lambda1 + p.gamma * p.gamma) continue;
    ++sampled;
    const NonmonotonicityResult r = nonmonotonicity_detect(p, Measure::LN);
    if (r.ng) {
      ++flagged;
      o.info.push_back("DM point flagged: (" + fmt(p.lambda1, 6) + ", " + fmt(p.lambda2, 6) + ") witness T " + fmt(r.T_a) + " -> " +
                       fmt(r.T_b));
    }
  }
  o.detail << ", DM points flagged " << flagged << "/" << sampled;
  o.check(flagged == 0, "DM phase");
}

TwoSiteState state(ComplexMatrix rho) { return TwoSiteState::validated(std::move(rho), StateSource::CES); }

void measure_units(Outcome& o) {
  const double r = 1 / std::sqrt(2.0);
  const TwoSiteState bell = state(testing::pure({r, 0, 0, r}));
  const double bell_ln = log_negativity(bell), bell_qd = quantum_discord(bell).discord;
  const TwoSiteState prod = state(testing::pure({r, r, 0, 0}));
  std::mt19937_64 rng(909);
  const TwoSiteState mixed_prod = state(kron(testing::random_density(rng, 2), testing::random_density(rng, 2)));
  double prod_worst = 0;
  for (const auto* s : {&prod, &mixed_prod})
    prod_worst = std::max({prod_worst, log_negativity(*s), quantum_discord(*s).discord});
  ComplexMatrix w = (2.0 / 3.0) * testing::pure({0, r, -r, 0});
  w += (1.0 / 12.0) * ComplexMatrix::identity(4);
  const double werner = log_negativity(state(w));
  o.detail << "Bell LN-1 " << fmt(bell_ln - 1) << " QD-1 " << fmt(bell_qd - 1) << ", products " << fmt(prod_worst)
           << ", Werner " << fmt(werner - std::log2(1.5));
  o.check(std::abs(bell_ln - 1) < 1e-10 && std::abs(bell_qd - 1) < 1e-8, "Bell");
  o.check(prod_worst < 1e-8, "products");
  o.check(std::abs(werner - std::log2(1.5)) < 1e-10, "Werner");
  std::uniform_real_distribution<double> phase(0, 2 * kPi);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    ComplexMatrix x = testing::random_x_state(rng);
    const cplx a = std::polar(1.0, phase(rng)), b = std::polar(1.0, phase(rng));
    x(0, 3) *= a;
    x(3, 0) = std::conj(x(0, 3));
    x(1, 2) *= b;
    x(2, 1) = std::conj(x(1, 2));
    const TwoSiteState s = state(x);
    // discord differs from the conditional entropy by a measurement-independent constant
    const double opt = quantum_discord(s).conditional_entropy;
    const double grid = brute_force_conditional_entropy(s, 1000);
    worst = std::max(worst, std::abs(opt - grid));
  }
  o.detail << ", optimizer vs 10^6 grid on 20 X-states " << fmt(worst) << " bits";
  o.check(worst < 1e-4, "optimizer vs brute force");
}

void property_suite(Outcome& o) {
  const std::string cmd = std::string("\"") + ALTXY_PROPERTY_TESTS + "\" --minimal > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  o.detail << "property_tests exit " << rc;
  o.check(rc == 0, "property suite");
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<Criterion> all{
      {1, "cross-formalism oracle", 180, cross_formalism},
      {2, "ground energy", 10, ground_energy},
      {3, "factorization line", 30, factorization_line},
      {4, "gap-closure loci", 5, gap_loci},
      {5, "phase-boundary detection", 120, phase_boundary},
      {6, "scaling exponents", 900, scaling_exponents},
      {7, "ergodicity cases", 600, ergodicity},
      {8, "non-monotonicity cartography", 1200, nonmonotonicity},
      {9, "measure unit tests", 60, measure_units},
      {10, "property suites standalone", 300, property_suite},
  };
  std::set<int> chosen;
  for (int i = 1; i < argc; ++i) chosen.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const Criterion& c : all) {
    if (!chosen.empty() && !chosen.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs <= c.budget_s;
    const bool pass = o.pass && in_budget;
    failures += !pass;
    std::printf("%s %d %s | %s | %.1f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.str().c_str(), secs, c.budget_s, in_budget ? "" : ", exceeded");
    for (const auto& line : o.info) std::printf("    info: %s\n", line.c_str());
  }
  return failures == 0 ? 0 : 1;
}
