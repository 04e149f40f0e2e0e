#pragma once

#include <cstdint>
#include <vector>

#include "fredkin/path.hpp"

namespace fredkin {

// Local rewriting moves between words.  Each move is an exchange of two
// window patterns; both patterns of a pair are internally connected, share the
// same outer arrow indices and the same net height change, so every move
// preserves first/last indices, end height, window minimum height and the
// connectivity status of every junction of the word.
//
//   ud: three-site exchanges (x12,x23,x32) <-> (x12,x21,x12)
//                        and (x23,x32,x21) <-> (x21,x12,x21)
//   w1: two-site mountain recoloring (x12,x21) <-> (x13,x31)
//   w2: two-site valley recoloring (x31,x13) <-> (x32,x23)
struct MoveSet {
  bool ud = true;
  bool w1 = true;
  bool w2 = true;

  // All moves: the off-diagonal content of the full Hamiltonian when both
  // couplings are switched on.
  static MoveSet all() { return MoveSet{true, true, true}; }
  // Valley recoloring disabled: the move content at lambda1 = 0.
  static MoveSet mountains_only() { return MoveSet{true, true, false}; }
};

// All words reachable from seed by the given moves, sorted by basis code.
// Throws CapacityError if the class grows beyond max_results.
std::vector<Path> equivalence_closure(const Path& seed, const MoveSet& moves,
                                      std::uint64_t max_results = 1u << 22);

// Boundary term flavor of the full Hamiltonian.
//  kThreeSiteCorners: single-site walls (down-start / up-end penalties) plus
//    one three-site projector at each end of the chain.
//  kEndpointPins: the three-site projectors are replaced by additional
//    single-site penalties that pin the first letter to x23 and the last
//    letter to x32.
enum class BoundaryVariant { kThreeSiteCorners, kEndpointPins };

// Parameters of the exact ground-space classification.
struct GroundClassOptions {
  bool w2_active = true;          // valley recoloring present (lambda1 > 0)
  bool balancing_penalty = false; // pair penalties on x13x32 / x23x31 (lambda2 > 0)
  BoundaryVariant variant = BoundaryVariant::kThreeSiteCorners;
  std::uint64_t max_results = 1u << 22;
};

// All connected length-n words (there are 6 * 2^(n-1) of them), sorted.
std::vector<Path> connected_words(int n);

// Exact zero-energy classification: partitions the connected words into move
// orbits and keeps the orbits none of whose members is hit by any diagonal
// penalty (boundary walls, balancing pairs).  Each surviving orbit carries
// exactly one ground state - the uniform superposition of its members - and
// the ground-state degeneracy of the full Hamiltonian equals the number of
// surviving orbits whenever at least one of the two couplings vanishes.
// Orbits are returned sorted by their smallest member; members sorted too.
std::vector<std::vector<Path>> ground_state_classes(
    int n, const GroundClassOptions& opts);

// True when some diagonal penalty term of the Hamiltonian described by opts
// hits the given word (disconnection penalties excluded: the classification
// runs over connected words only).
bool is_penalized(const Path& word, const GroundClassOptions& opts);

}  // namespace fredkin
