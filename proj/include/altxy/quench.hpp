#pragma once

#include <string>
#include <vector>

#include "altxy/measures.hpp"

namespace altxy {

enum class Measure { LN, QD };
std::string to_string(Measure m);
double measure_value(const TwoSiteState& s, Measure m, const DiscordOptions& opt = {});

// Equilibrium state of `pre` at temperature `init`, evolved under the same couplings with the
// fields switched to `post` (zero by default).
struct QuenchSpec {
  SystemParams pre;
  FieldValues post{};
  Temperature init = Temperature::inverse(100.0);
  SystemSize size = SystemSize::infinite();

  SystemParams post_params() const;
};

ObservableSet evolve_observables(const QuenchSpec& spec, double t);

// Observables at many times for one quench. Each momentum node is diagonalized once; the state
// and observables are stored in the post-quench eigenbasis so that each time costs one phase
// factor per matrix element.
class DephasingKernel {
 public:
  // nodes: Gauss-Legendre nodes per panel for the infinite chain (ignored for PairSum)
  DephasingKernel(const QuenchSpec& spec, int nodes);
  ObservableSet at(double t) const;
  std::size_t terms() const { return omega_.size(); }

 private:
  std::array<double, 6> constant_{};
  std::vector<double> omega_;
  std::vector<std::array<cplx, 6>> coef_;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<ObservableSet> observables;
};

TimeSeries time_series(const QuenchSpec& spec, Measure m, const std::vector<double>& times, bool parallel = true);

enum class LargeTimeBehaviour { Saturated, BoundedOscillation, PersistentOscillation };
std::string to_string(LargeTimeBehaviour b);

struct LongTimeOptions {
  double t_begin = 100 * 3.141592653589793;
  double t_end = 120 * 3.141592653589793;
  int samples = 4000;
  double delta = 1e-3;  // fluctuation threshold
  bool parallel = true;
};

struct LongTimeResult {
  double average = 0.0;
  double fluctuation = 0.0;  // half the peak-to-peak spread over the window
  LargeTimeBehaviour behaviour = LargeTimeBehaviour::Saturated;
};

LongTimeResult long_time_average(const QuenchSpec& spec, Measure m, const LongTimeOptions& opt = {});

struct EquilibriumMax {
  double value = 0.0;
  double T = 0.0;  // 0 for the zero-temperature tag
};

// Max of the equilibrium measure at `params` over 200 log-spaced T' in [T/10, 10 T], refined by
// golden section to 1e-6 relative in T'. A zero-temperature T uses the ground state.
EquilibriumMax equilibrium_max_over_T(Measure m, const SystemParams& params, Temperature T,
                                      SystemSize size = SystemSize::infinite(), int points = 200);

struct ErgodicityReport {
  double q_time_avg = 0.0;
  double q_eq_max = 0.0;
  double T_eq_max = 0.0;
  double eta = 0.0;
  LongTimeResult long_time;
  bool ergodic = true;       // eta < 1e-3
  bool inconclusive = false; // 0 < eta < 1e-3
};

ErgodicityReport ergodicity_score(const QuenchSpec& spec, Measure m, const LongTimeOptions& opt = {});

struct NonmonotonicityOptions {
  int points = 400;
  double T_max = 2.0;
  double threshold = 1e-4;
  SystemSize size = SystemSize::infinite();
};

struct NonmonotonicityResult {
  bool ng = false;
  double T_a = 0.0, T_b = 0.0;  // witness with the largest rise Q(T_b) - Q(T_a) > threshold, T_a < T_b
  std::vector<double> T, values;
};

NonmonotonicityResult nonmonotonicity_detect(const SystemParams& params, Measure m,
                                             const NonmonotonicityOptions& opt = {});
// A thermal measure that decays to zero at high T is non-monotonic iff it rises somewhere.
// Detection on a given series (T ascending).
NonmonotonicityResult nonmonotonicity_of(std::vector<double> T, std::vector<double> values, double threshold);

}  // namespace altxy
