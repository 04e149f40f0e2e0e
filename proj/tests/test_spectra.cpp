#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fredkin/closure.hpp"
#include "fredkin/errors.hpp"
#include "fredkin/hamiltonian.hpp"
#include "fredkin/sparse.hpp"
#include "fredkin/spectra.hpp"
#include "fredkin/walks.hpp"

using namespace fredkin;

namespace {

Path P(const std::string& text) { return Path::parse(text); }

SparseOperator random_symmetric(std::uint64_t dim, int per_row, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, dim - 1);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<Triplet> t;
  for (std::uint64_t r = 0; r < dim; ++r)
    for (int k = 0; k < per_row; ++k) {
      const std::uint64_t c = pick(rng);
      const double v = coef(rng);
      t.push_back({r, c, v});
      t.push_back({c, r, v});
    }
  return SparseOperator::from_triplets(dim, std::move(t));
}

GroundClassOptions class_options(bool w2, bool balancing,
                                 BoundaryVariant variant) {
  GroundClassOptions opts;
  opts.w2_active = w2;
  opts.balancing_penalty = balancing;
  opts.variant = variant;
  return opts;
}

Eigen::VectorXcd random_state(std::uint64_t dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = std::complex<double>(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

}  // namespace

TEST_CASE("eigensolvers: known spectra and dense/iterative agreement") {
  SUBCASE("scaled identity") {
    std::vector<Triplet> t;
    for (std::uint64_t i = 0; i < 20; ++i) t.push_back({i, i, 3.0});
    const SparseOperator id3 = SparseOperator::from_triplets(20, std::move(t));
    const SpectrumSlice s = low_spectrum(id3, 5);
    for (int i = 0; i < 5; ++i) CHECK(s.values[i] == doctest::Approx(3.0));
  }
  SUBCASE("rank-one projector spectrum") {
    const SparseOperator p = projector_onto(
        2, {{1, 2},
            {{1.0, {Step::from_code(0), Step::from_code(3)}},
             {-1.0, {Step::from_code(1), Step::from_code(4)}}}});
    const SpectrumSlice full = solve_dense(p);
    REQUIRE(full.values.size() == 36);
    for (int i = 0; i < 35; ++i) CHECK(std::fabs(full.values[i]) < 1e-12);
    CHECK(full.values[35] == doctest::Approx(1.0));
  }
  SUBCASE("restarted iteration matches the dense lower edge") {
    const SparseOperator a = random_symmetric(400, 3, 99);
    const SpectrumSlice dense = low_spectrum(a, 9);
    SolverOptions iter;
    iter.dense_cutoff = 0;
    iter.chain_length = 60;
    const SpectrumSlice lanczos = low_spectrum(a, 9, iter);
    CHECK(!lanczos.dense);
    CHECK(lanczos.iterations > 0);
    for (int i = 0; i < 9; ++i) {
      CHECK(lanczos.values[i] == doctest::Approx(dense.values[i]).epsilon(1e-9));
      CHECK(lanczos.residuals[i] < 1e-9);
    }
    // Same eigenspaces: each Lanczos vector lies in the span of the dense
    // ones (projection has unit norm even across near-degeneracies).
    Eigen::MatrixXd overlap =
        dense.vectors.transpose() * lanczos.vectors;
    for (int i = 0; i < 9; ++i)
      CHECK(overlap.col(i).norm() == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("argument validation") {
    const SparseOperator a = random_symmetric(10, 2, 5);
    CHECK_THROWS_AS(low_spectrum(a, 0), std::invalid_argument);
    CHECK_THROWS_AS(low_spectrum(a, 11), std::invalid_argument);
  }
}

TEST_CASE("ground_space: degeneracy per phase and the gap guard") {
  const int n = 4;
  SUBCASE("counted kernels match the closure classes") {
    struct Regime {
      PhaseParams params;
      GroundClassOptions classes;
      BoundaryVariant variant;
      int expected;
    };
    const Regime regimes[] = {
        {{1.0, 0.0},
         class_options(true, false, BoundaryVariant::kThreeSiteCorners),
         BoundaryVariant::kThreeSiteCorners,
         4},
        {{0.0, 0.0},
         class_options(false, false, BoundaryVariant::kThreeSiteCorners),
         BoundaryVariant::kThreeSiteCorners,
         8},
        {{0.0, 1.0},
         class_options(false, true, BoundaryVariant::kThreeSiteCorners),
         BoundaryVariant::kThreeSiteCorners,
         2},
        {{1.0, 0.0},
         class_options(true, false, BoundaryVariant::kEndpointPins),
         BoundaryVariant::kEndpointPins,
         1},
    };
    for (const Regime& r : regimes) {
      const SparseOperator h = build_hf(n, r.params, r.variant);
      const GroundSpace gs = ground_space(h);
      CAPTURE(r.params.lambda1);
      CAPTURE(r.params.lambda2);
      CHECK(gs.degeneracy() == r.expected);
      CHECK(std::fabs(gs.energy) < 1e-10);
      CHECK(gs.gap > 1e-8);
      const auto classes = ground_state_classes(n, r.classes);
      REQUIRE(static_cast<int>(classes.size()) == r.expected);
      for (const auto& cls : classes) {
        const Eigen::VectorXd candidate = build_path_state(cls);
        CHECK((gs.vectors.transpose() * candidate).norm() ==
              doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
  SUBCASE("no kernel at odd length in the recoloring-active phase") {
    const GroundSpace gs = ground_space(build_hf(3, {1.0, 0.0}));
    CHECK(gs.degeneracy() == 0);
    CHECK(gs.energy > 1e-3);
  }
  SUBCASE("iterative path reproduces the dense kernel") {
    SolverOptions iter;
    iter.dense_cutoff = 0;
    iter.chain_length = 100;
    const GroundSpace gs = ground_space(build_hf(n, {1.0, 0.0}), iter);
    CHECK(gs.degeneracy() == 4);
    CHECK(std::fabs(gs.energy) < 1e-10);
  }
  SUBCASE("ambiguous cluster edge is refused") {
    std::vector<Triplet> t{{0, 0, 0.0}, {1, 1, 5e-9}, {2, 2, 1.0}};
    const SparseOperator h = SparseOperator::from_triplets(3, std::move(t));
    CHECK_THROWS_AS(ground_space(h), SpectralAmbiguityError);
  }
}

TEST_CASE("build_path_state: uniform superpositions over word sets") {
  const auto walks = enumerate_walks(4, {1, 1, 0});
  REQUIRE(walks.size() == 6);
  const Eigen::VectorXd v = build_path_state(walks);
  CHECK(v.norm() == doctest::Approx(1.0));
  for (const Path& w : walks)
    CHECK(v[static_cast<Eigen::Index>(w.encode())] ==
          doctest::Approx(1.0 / std::sqrt(6.0)));

  const Eigen::VectorXd single = build_path_state({P("1,2 2,1")});
  CHECK(single[static_cast<Eigen::Index>(P("1,2 2,1").encode())] == 1.0);
  CHECK(single.norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(build_path_state({}), std::invalid_argument);
  CHECK_THROWS_AS(build_path_state({P("1,2 2,1"), P("1,2 2,1 1,2")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_path_state({P("1,2 2,1"), P("1,2 2,1")}),
                  std::invalid_argument);
}

TEST_CASE("build_excitation: disconnection eigenstates") {
  SUBCASE("one disconnection on five links") {
    const Eigen::VectorXd psi =
        build_excitation(5, {{2, 1, 1, 0, 0}, {3, 2, 1, 1, 0}});
    // Two members on the left block, three on the right.
    const double amp = 1.0 / std::sqrt(6.0);
    for (const char* left : {"1,2 2,1", "1,3 3,1"})
      for (const char* right : {"2,3 3,2 2,1", "2,1 1,2 2,1", "2,1 1,3 3,1"}) {
        const std::uint64_t idx =
            P(std::string(left) + " " + right).encode();
        CHECK(psi[static_cast<Eigen::Index>(idx)] == doctest::Approx(amp));
      }
    CHECK(psi.norm() == doctest::Approx(1.0));
    for (const PhaseParams params : {PhaseParams{1.0, 0.0}, PhaseParams{0.0, 0.0}}) {
      const SparseOperator h = build_hf(5, params);
      CHECK((h.apply(psi) - psi).norm() < 1e-13);
    }
  }
  SUBCASE("two disconnections on six links") {
    const Eigen::VectorXd psi = build_excitation(
        6, {{2, 1, 1, 0, 0}, {2, 3, 3, 0, 0}, {2, 1, 1, 0, 0}});
    const double amp = 1.0 / std::sqrt(8.0);
    CHECK(psi[static_cast<Eigen::Index>(P("1,2 2,1 3,1 1,3 1,2 2,1").encode())] ==
          doctest::Approx(amp));
    CHECK(psi[static_cast<Eigen::Index>(P("1,3 3,1 3,2 2,3 1,3 3,1").encode())] ==
          doctest::Approx(amp));
    const SparseOperator h = build_hf(6, {1.0, 0.0});
    CHECK((h.apply(psi) - 2.0 * psi).norm() < 1e-13);
  }
  SUBCASE("totally disconnected ladder") {
    const Eigen::VectorXd psi = build_excitation(
        5,
        {{1, 1, 2, 0, 1}, {1, 1, 2, 1, 2}, {1, 1, 2, 2, 3}, {1, 1, 2, 3, 4}, {1, 3, 1, 1, 0}});
    const std::uint64_t idx = P("1,2 1,2 1,2 1,2 3,1").encode();
    CHECK(psi[static_cast<Eigen::Index>(idx)] == 1.0);
    const SparseOperator h = build_hf(5, {1.0, 0.0});
    CHECK((h.apply(psi) - 4.0 * psi).norm() < 1e-13);
  }
  SUBCASE("highly excited states") {
    for (int r : {1, 3}) {
      const Eigen::VectorXd psi = highly_excited_state(5, r);
      const SparseOperator h = build_hf(5, {1.0, 0.0});
      CHECK((h.apply(psi) - static_cast<double>(r) * psi).norm() < 1e-13);
    }
    const Eigen::VectorXd ground = highly_excited_state(4, 0);
    CHECK((ground - build_path_state(enumerate_walks(4, {1, 1, 0}))).norm() <
          1e-14);
    CHECK_THROWS_AS(highly_excited_state(5, 2), std::invalid_argument);
    CHECK_THROWS_AS(highly_excited_state(5, 5), std::invalid_argument);
  }
  SUBCASE("randomized segmentations stay exact eigenstates") {
    std::mt19937 rng(424242);
    const int n = 6;
    const SparseOperator h = build_hf(n, {1.0, 0.0});
    int built = 0;
    while (built < 8) {
      // Random composition of n into 2..4 parts.
      std::uniform_int_distribution<int> part_count(2, 4);
      const int parts = part_count(rng);
      std::vector<int> lengths(parts, 1);
      for (int extra = n - parts; extra > 0; --extra)
        ++lengths[std::uniform_int_distribution<int>(0, parts - 1)(rng)];
      std::vector<ExcitationSegment> segments;
      bool viable = true;
      std::uniform_int_distribution<int> index(1, 3);
      std::uniform_int_distribution<int> lift(0, 2);
      for (int i = 0; i < parts && viable; ++i) {
        ExcitationSegment s;
        s.length = lengths[static_cast<std::size_t>(i)];
        s.a = index(rng);
        s.b = index(rng);
        if (i > 0 && s.a == segments.back().b) s.a = 1 + s.a % 3;
        s.start_height = i == 0 ? 0 : lift(rng);
        s.end_height =
            i == parts - 1
                ? 0
                : std::max(0, s.start_height +
                                  (s.length % 2 == 0 ? 0 : 1) *
                                      (lift(rng) == 0 ? -1 : 1));
        // Keep the net change representable by the segment length.
        if ((s.length + s.end_height - s.start_height) % 2 != 0 ||
            std::abs(s.end_height - s.start_height) > s.length)
          viable = false;
        segments.push_back(s);
      }
      if (!viable) continue;
      Eigen::VectorXd psi;
      try {
        psi = build_excitation(n, segments);
      } catch (const std::invalid_argument&) {
        continue;  // empty class for this draw
      }
      const double k = static_cast<double>(parts - 1);
      CHECK((h.apply(psi) - k * psi).norm() < 1e-12);
      ++built;
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(build_excitation(5, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_excitation(5, {{2, 1, 1, 0, 0}, {3, 1, 1, 1, 0}}),
                    std::invalid_argument);  // junction indices match
    CHECK_THROWS_AS(build_excitation(6, {{2, 1, 1, 0, 0}, {3, 2, 1, 1, 0}}),
                    std::invalid_argument);  // lengths sum to 5, not 6
    CHECK_THROWS_AS(build_excitation(5, {{2, 1, 1, 1, 1}, {3, 2, 1, 1, 0}}),
                    std::invalid_argument);  // first segment off the floor
    CHECK_THROWS_AS(build_excitation(5, {{2, 1, 1, 0, 0}, {3, 2, 1, 1, 1}}),
                    std::invalid_argument);  // last segment off the floor
    CHECK_THROWS_AS(build_excitation(3, {{2, 1, 1, 0, 0}, {1, 3, 3, 0, 0}}),
                    std::invalid_argument);  // empty class: no single 3->3 letter
  }
}

TEST_CASE("time evolution: unitarity, stationarity, solver agreement") {
  SUBCASE("dense propagator on the length-3 chain") {
    const SparseOperator h = build_hf(3, {1.0, 0.0});
    const Propagator prop(h);
    const Eigen::VectorXcd psi = random_state(h.dim(), 17);
    CHECK(prop.evolve(psi, 0.0) == psi);
    const Eigen::VectorXcd out = prop.evolve(psi, 2.3);
    CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // Composition: evolving twice by t/2 equals evolving once by t.
    const Eigen::VectorXcd half = prop.evolve(prop.evolve(psi, 1.15), 1.15);
    CHECK((half - out).norm() < 1e-10);
  }
  SUBCASE("krylov stepping matches the dense result") {
    const SparseOperator h = build_hf(3, {1.0, 0.0});
    const Propagator dense(h);
    PropagatorOptions force;
    force.dense_cutoff = 0;
    const Propagator krylov(h, force);
    const Eigen::VectorXcd psi = random_state(h.dim(), 23);
    for (double t : {0.5, 1.9, -1.1}) {
      const Eigen::VectorXcd a = dense.evolve(psi, t);
      const Eigen::VectorXcd b = krylov.evolve(psi, t);
      CHECK((a - b).norm() < 1e-8);
    }
  }
  SUBCASE("eigenstates pick up a pure phase") {
    const SparseOperator h = build_hf(5, {1.0, 0.0});
    const Propagator prop(h);  // dim 7776: the Krylov path
    const Eigen::VectorXd psi =
        build_excitation(5, {{2, 1, 1, 0, 0}, {3, 2, 1, 1, 0}});
    const Eigen::VectorXcd evolved = prop.evolve(psi.cast<std::complex<double>>(), 0.7);
    const std::complex<double> overlap =
        psi.cast<std::complex<double>>().dot(evolved);
    CHECK(std::abs(overlap - std::exp(std::complex<double>(0.0, -0.7))) < 1e-9);
    CHECK(evolved.norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("norm drift stays below target over long evolutions") {
    const SparseOperator h = build_hf(5, {1.0, 0.0});
    const Propagator prop(h);
    const Eigen::VectorXcd psi = random_state(h.dim(), 31);
    const Eigen::VectorXcd out = prop.evolve(psi, 10.0);
    CHECK(std::fabs(out.norm() - 1.0) < 1e-9);
  }
  SUBCASE("junction indicators are constants of motion") {
    const SparseOperator h = build_hf(4, {1.0, 0.0});
    const Propagator prop(h);
    const Eigen::VectorXcd psi = random_state(h.dim(), 41);
    const auto indicators = junction_disconnection_indicators(4);
    std::vector<double> before;
    for (const auto& op : indicators)
      before.push_back(psi.dot(op.apply(psi)).real());
    const Eigen::VectorXcd later = prop.evolve(psi, 2.0);
    for (std::size_t j = 0; j < indicators.size(); ++j)
      CHECK(later.dot(indicators[j].apply(later)).real() ==
            doctest::Approx(before[j]).epsilon(1e-9));
  }
}
