#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "altxy/two_site_state.hpp"

namespace altxy {

enum class Boundary { Periodic, Open };

// Spin chain on N sites, basis states bit-packed with site 0 in the most significant bit and
// bit value 0 = spin up. Even sites carry field h1 + h2, odd sites h1 - h2. Real symmetric.
class SpinHamiltonian {
 public:
  static constexpr int kMaxSites = 22;
  static constexpr int kMaxDenseSites = 12;

  SpinHamiltonian(const SystemParams& params, int N, Boundary boundary = Boundary::Periodic,
                  std::optional<FieldValues> fields = std::nullopt);

  int sites() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  Boundary boundary() const { return boundary_; }
  // rough operator-norm scale, sum of absolute couplings
  double scale() const;

  void apply(const double* in, double* out, bool parallel = true) const;
  // Dense matrix of the block with global parity (-1)^(number of down spins) = +1 (parity 0)
  // or -1 (parity 1), column-major; states lists the basis states in order.
  std::vector<double> dense_block(int parity, std::vector<std::uint32_t>& states) const;

 private:
  int n_;
  Boundary boundary_;
  double flip_parallel_, flip_antiparallel_;
  std::vector<double> field_;  // per site
  std::vector<std::pair<int, int>> bonds_;
};

struct LanczosOptions {
  int max_iterations = 2000;
  int cycle = 80;  // Krylov vectors kept before restarting from the Ritz vector
  double tolerance = 1e-10;  // relative to SpinHamiltonian::scale()
  double degeneracy_gap = 1e-8;
  bool probe_degeneracy = true;
  bool parallel = true;
};

struct LanczosResult {
  double energy = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
  int iterations = 0;
  bool degenerate = false;
  double second_energy = 0.0;  // lowest energy orthogonal to the ground vector (when probed)
};

// Throws NumericalError when max_iterations is exhausted.
LanczosResult lanczos_ground_state(const SpinHamiltonian& h, const LanczosOptions& opt = {});

// Full spectrum by parity blocks, N <= 12.
struct DenseSpectrum {
  struct Block {
    std::vector<std::uint32_t> states;
    std::vector<double> values;   // ascending
    std::vector<double> vectors;  // column-major, states.size() squared
  };
  int N = 0;
  std::array<Block, 2> blocks;
  double min_energy() const;
};

DenseSpectrum dense_spectrum(const SpinHamiltonian& h);
// Periodic chain resolved by parity and by momentum k = 2 pi q / (N/2) under translation by two
// sites. Blocks are about N/2 times smaller than the parity blocks.
struct SymmetricSpectrum {
  struct Block {
    int parity = 0, q = 0;
    std::vector<std::uint32_t> reps;  // smallest member of each orbit
    std::vector<double> values;       // ascending
    ComplexMatrix vectors;            // amplitudes on the momentum states of reps, column k for values[k]
  };
  int N = 0;
  std::vector<Block> blocks;
  double min_energy() const;
};

// Periodic chains, N <= 14.
SymmetricSpectrum symmetric_spectrum(const SpinHamiltonian& h);
// Reduced state of the bond (0, 1), which equals that of every bond (2m, 2m + 1).
TwoSiteState thermal_two_site(const SymmetricSpectrum& s, Temperature temp);

// Full 2^N density matrix (shifted exponential, or uniform over the ground level for T = 0).
ComplexMatrix dense_thermal_state(const DenseSpectrum& s, Temperature temp);

// Reduced state of sites (i, j), site i first.
TwoSiteState reduce_two_site(const ComplexMatrix& rho, int N, int i, int j);
TwoSiteState reduce_two_site(const std::vector<double>& psi, int N, int i, int j);
// Same as reducing dense_thermal_state, without forming it.
TwoSiteState thermal_two_site(const DenseSpectrum& s, Temperature temp, int i, int j);
// Thermal state of `pre` evolved for time t under `post`, reduced to (i, j).
TwoSiteState evolved_two_site(const DenseSpectrum& pre, const DenseSpectrum& post, Temperature temp, double t, int i,
                              int j);
// Reduced states of all nearest-neighbour bonds (i, i+1): N - 1 for open chains, N for periodic.
std::vector<TwoSiteState> bond_states(const DenseSpectrum& s, Temperature temp, Boundary boundary);

}  // namespace altxy
