#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fredkin/closure.hpp"
#include "fredkin/path.hpp"
#include "fredkin/sparse.hpp"

namespace fredkin {

// Coupling strengths of the two tunable terms: lambda1 scales the valley
// recoloring projector inside each W term, lambda2 the balancing penalty.
struct PhaseParams {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  // The Hamiltonian is a sum of projectors with a common zero-energy space
  // only when at least one of the couplings vanishes.
  bool frustration_free() const { return lambda1 == 0.0 || lambda2 == 0.0; }
};

// Operator construction is capped at this chain length (6^8 basis states);
// beyond it the assembled matrices no longer fit comfortably in memory.
inline constexpr int kMaxOperatorSites = 8;

// A local state on a fixed site tuple: sum of weighted letter patterns.
// Sites are 1-based and strictly increasing; every pattern names one letter
// per site.
struct ProjectorSpec {
  std::vector<int> sites;
  std::vector<std::pair<double, std::vector<Step>>> amplitudes;
};

// Rank-1 projector |psi><psi| on the named sites, tensored with identity
// elsewhere and embedded in the 6^n-dimensional chain space.  The amplitude
// list is normalized internally; a zero-norm spec throws.
SparseOperator projector_onto(int n, const ProjectorSpec& spec);

// Bulk move penalties: the three-site swap terms on sites j..j+2 for
// j <= n-2 plus the two-site recoloring terms on sites j, j+1 for j <= n-1,
// with params.lambda1 scaling the valley recoloring projector.
SparseOperator build_bulk_connected(int n, const PhaseParams& params);

// End penalties.  kThreeSiteCorners: the three down letters at site 1, the
// three up letters at site n, and one corner pattern projector at each end.
// kEndpointPins: the same single-site terms plus pins that force the first
// letter to x23 and the last to x32; no corner projectors.
SparseOperator build_boundary(int n, BoundaryVariant variant);

// Balancing penalty: projectors onto the neighbor factors x13 x32 and
// x23 x31 summed over all junctions (without the lambda2 coefficient).
SparseOperator build_balancing(int n);

// Diagonal junction-mismatch penalty: the eigenvalue of a basis path is its
// number of disconnections.
SparseOperator build_disconnected(int n);

// The assembled chain Hamiltonian:
//   bulk moves + boundary + lambda2 * balancing + disconnection penalty.
// Requires n >= 3 (the corner and swap terms span three sites).  Emits a
// stderr warning when both couplings are positive (no common zero-energy
// space in that regime).
SparseOperator build_hf(int n, const PhaseParams& params,
                        BoundaryVariant variant = BoundaryVariant::kThreeSiteCorners);

// The 24(n-1) diagonal projectors onto single mismatched junction patterns,
// ordered by junction then by the two letter codes.
std::vector<SparseOperator> conserved_operators(int n);

// The n-1 diagonal junction indicators: entry j sums the 24 mismatch
// projectors at junction j+1, giving the indicator that the junction is
// disconnected.  These commute with the chain Hamiltonian exactly.
std::vector<SparseOperator> junction_disconnection_indicators(int n);

// A list of basis indices spanning a disconnection sector (sorted).
struct SectorBasis {
  int n = 0;
  std::vector<std::uint64_t> indices;
};

// All words whose disconnection set equals the given 1-based junction list.
SectorBasis pattern_sector(int n, const std::vector<int>& disconnection_sites);
SectorBasis connected_sector(int n);

// P^T A P for the inclusion P of the sector span; entries of A leaving the
// sector are dropped (the chain Hamiltonian never produces any).
SparseOperator restrict_to(const SparseOperator& op, const SectorBasis& sector);

// Expand a sector vector to the full space / project a full vector onto it.
Eigen::VectorXd prolong_from_sector(const SectorBasis& sector, const Eigen::VectorXd& x);
Eigen::VectorXd restrict_to_sector(const SectorBasis& sector, const Eigen::VectorXd& x);

}  // namespace fredkin
