#pragma once

#include <array>

#include "altxy/block_matrix.hpp"
#include "altxy/momentum_hamiltonian.hpp"

namespace altxy {

enum class Sublattice { Even, Odd };
enum class CorrelatorKind { XX, YY, XY, YX };

// Products of the unit Majorana operators A = c^dag + c, B = c^dag - c built from the
// momentum components of one even site (e) and the odd site to its right (o).
enum class Majorana : int { AeBe = 0, AoBo, AeAo, BeBo, AeBo, BeAo, Quartic, Count };
inline constexpr int kMajoranaCount = static_cast<int>(Majorana::Count);

// Pair subspace (modes a_p, a_-p, b_p, b_-p): 16x16 matrix whose columns are the block basis
// states written in the Fock basis. Block 4 is ordered (vacuum, a_p b_-p, a_-p b_p, a_p a_-p,
// b_p b_-p, a_p a_-p b_p b_-p), the order in which the printed 6x6 block is laid out.
const ComplexMatrix& pair_basis();
BlockMatrix pair_parity();

// Hamiltonian of the pair subspace built from its second-quantized form; used to check
// build_blocks.
BlockMatrix pair_hamiltonian_from_fock(const SystemParams& params, FieldValues fields, double phi);

// Block-diagonal parts; off-diagonal blocks never contribute because every state used here is
// block diagonal.
BlockMatrix pair_majorana(Majorana which, double phi);
BlockMatrix magnetization_operator(Sublattice s, double phi);  // eigenvalues in {-2, 0, 2}
BlockMatrix correlator_operator(CorrelatorKind kind, double phi);

// Self-conjugate momenta (phi = 0 or pi/2) of a finite periodic chain carry one a and one b
// mode. Blocks: even parity {vacuum, a^dag b^dag}, odd parity {a^dag, b^dag}.
inline const std::vector<std::size_t> kSingletonBlockSizes{2, 2};
BlockMatrix singleton_hamiltonian(const SystemParams& params, FieldValues fields, double phi);
BlockMatrix singleton_majorana(Majorana which, double phi);
BlockMatrix singleton_parity();

}  // namespace altxy
