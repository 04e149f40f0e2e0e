#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fredkin/counts.hpp"

namespace fredkin {

// One Schmidt term of a ground state cut in two: the walk reaches height h
// with arrow index a at the cut, with squared coefficient p.
struct SchmidtEntry {
  int h = 0;
  int a = 1;
  double p = 0.0;
};

// The full squared-coefficient distribution of the class-(c -> d) ground
// state of a length-2n chain cut into blocks of n + r and n - r sites.  The
// probabilities come from exact integer counts; normalization is verified in
// rational arithmetic before the conversion to double.
struct SchmidtDistribution {
  int two_n = 0;
  int r = 0;
  Phase phase = Phase::kFull;
  int c = 1;
  int d = 1;
  std::vector<SchmidtEntry> entries;  // ascending by (h, a), zeros omitted
};

SchmidtDistribution schmidt_distribution(int two_n, int r, Phase phase, int c,
                                         int d);

struct EntropyReport {
  double S = 0.0;          // nats
  const char* method = ""; // "schmidt_counts" | "rdm_numeric" | "asymptotic"
  int length = 0;          // total chain length
  int cut = 0;             // left block size
  Phase phase = Phase::kFull;
  int c = 0;               // class labels when a counting route was used
  int d = 0;
};

// Shannon entropy of the squared Schmidt coefficients, in nats.
EntropyReport entropy_from_distribution(const SchmidtDistribution& dist);

// Entanglement entropy of the left `cut` sites of a normalized state on n
// sites, via the singular values of the amplitude matrix reshaped at the
// cut; squared singular values below 1e-14 are treated as zero.
EntropyReport entropy_from_state(const Eigen::VectorXd& state, int n, int cut);

// Large-n form of the critical-phase entropy for the (n + r | n - r) cut of
// a length-2n chain: (1/2) ln((n+r)(n-r)/n) + (1/2) ln(pi/4) + gamma - 1/2.
EntropyReport entropy_asymptotic_phase1(int n, int r);

// The counting-route entropy of the critical phase evaluated with log-domain
// counts, usable far beyond exact-integer table sizes.
EntropyReport entropy_phase1_logcounts(int n, int r);

// Large-n entropy plateau shared by the area-law phases:
// (1/sqrt 5) ln((sqrt 5 - 1)/2) + (1/2) ln 5.
double area_law_entropy_limit();

}  // namespace fredkin
