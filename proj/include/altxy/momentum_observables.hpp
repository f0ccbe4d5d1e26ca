#pragma once

#include <functional>
#include <optional>
#include <string>

#include "altxy/pair_operators.hpp"

namespace altxy {

// Nearest-neighbour even-odd pair: transverse magnetizations and spin correlators.
struct ObservableSet {
  double m_e = 0, m_o = 0;
  double c_xx = 0, c_yy = 0, c_zz = 0;
  double c_xy = 0, c_yx = 0;
  bool equilibrium = true;  // equilibrium sets carry c_xy = c_yx = 0

  // throws std::domain_error when an entry leaves [-1-1e-9, 1+1e-9]
  void validate() const;
  double max_abs_diff(const ObservableSet& o) const;
};

// Inverse temperature 1/(k_B T) with k_B = 1, or the zero-temperature tag.
struct Temperature {
  bool zero = false;
  double beta = 0.0;

  static Temperature inverse(double beta);
  static Temperature zero_temperature() { return {true, 0.0}; }
  static Temperature from_T(double T) { return inverse(1.0 / T); }
  std::string describe() const;
};

// How the momentum sum is carried out.
//   Exact:    a periodic chain of N sites, both fermion-parity sectors kept; equals spin ED.
//   PairSum: (2/N) sum over phi_p = 2 pi p / N, p = 1..N/4, one independent pair state per p,
//             no parity projection.
//   Infinite: (1/pi) integral over [0, pi/2].
enum class SizeKind { Exact, PairSum, Infinite };

struct SystemSize {
  SizeKind kind = SizeKind::Infinite;
  int N = 0;

  static SystemSize infinite() { return {SizeKind::Infinite, 0}; }
  static SystemSize exact(int n) { return {SizeKind::Exact, n}; }
  static SystemSize pair_sum(int n) { return {SizeKind::PairSum, n}; }
  void validate() const;
  std::string describe() const;
};

// Switch to post-quench fields at t = 0 and evolve for time t (units 1/J).
struct Evolution {
  FieldValues post;
  double t = 0.0;
};

// exp(-beta H_p)/Z_p blockwise, or the normalized projector on the lowest level of H_p.
BlockMatrix ces_block_state(const SystemParams& params, Temperature temp, double phi);
BlockMatrix ces_block_state(const SystemParams& params, FieldValues fields, Temperature temp, double phi);
// U rho U^dagger with U = exp(-i H_p(post) t).
BlockMatrix evolve_block_state(const BlockMatrix& rho, const SystemParams& params, const Evolution& evo, double phi);

using PairOperatorFamily = std::function<BlockMatrix(double phi)>;

struct ExpectationOptions {
  QuadratureOptions quadrature;
  std::optional<Evolution> evolution;
};

// Pair-sum or thermodynamic-limit expectation of a pair-operator family.
double thermal_expectation(const PairOperatorFamily& op, const SystemParams& params, Temperature temp, SystemSize size,
                           const ExpectationOptions& opt = {});

enum class Observable { Me, Mo, Cxx, Cyy, Czz, Cxy, Cyx };
// Any size kind; Exact goes through the parity-resolved chain.
double thermal_expectation(Observable which, const SystemParams& params, Temperature temp, SystemSize size,
                           const ExpectationOptions& opt = {});

ObservableSet ces_observables(const SystemParams& params, Temperature temp, SystemSize size,
                              const ExpectationOptions& opt = {});

// Many temperatures at once: each node is diagonalized once and reused. PairSum and Infinite
// only; the infinite integral is refined until every temperature has converged.
std::vector<ObservableSet> ces_observables_scan(const SystemParams& params, const std::vector<Temperature>& temps,
                                                SystemSize size, const QuadratureOptions& quadrature = {});

// Quadrature node count used for the thermodynamic limit at time t: grows with t so the
// dephasing integrand is resolved (at least 4096 once t reaches 100 pi).
int evolution_node_count(double t);

// Pair-state expectations (m_e, m_o, c_xx, c_yy, c_xy, c_yx) for one momentum, given the state.
std::array<double, 6> pair_expectations(const BlockMatrix& rho, double phi);

// Closure for the zz correlator: m_e m_o - c_xx c_yy + c_xy c_yx.
double czz_closure(const ObservableSet& o);

}  // namespace altxy
