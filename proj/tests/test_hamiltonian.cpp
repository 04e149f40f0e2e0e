#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fredkin/closure.hpp"
#include "fredkin/errors.hpp"
#include "fredkin/hamiltonian.hpp"
#include "fredkin/sparse.hpp"
#include "fredkin/walks.hpp"

using namespace fredkin;

namespace {

Path P(const std::string& text) { return Path::parse(text); }

std::vector<Step> L(std::initializer_list<int> codes) {
  std::vector<Step> out;
  for (int c : codes) out.push_back(Step::from_code(c));
  return out;
}

// Uniform unit superposition over a set of words, in the full product basis.
Eigen::VectorXd uniform_state(int n, const std::vector<Path>& words) {
  Eigen::VectorXd v =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(word_space_size(n)));
  for (const Path& w : words) v[static_cast<Eigen::Index>(w.encode())] = 1.0;
  v.normalize();
  return v;
}

double residual(const SparseOperator& h, const Eigen::VectorXd& v) {
  return h.apply(v).norm();
}

SparseOperator random_sparse(std::uint64_t dim, int per_row, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, dim - 1);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<Triplet> t;
  for (std::uint64_t r = 0; r < dim; ++r)
    for (int k = 0; k < per_row; ++k) t.push_back({r, pick(rng), coef(rng)});
  return SparseOperator::from_triplets(dim, std::move(t));
}

}  // namespace

TEST_CASE("sparse container: assembly, algebra, io") {
  SUBCASE("duplicate summing and zero dropping") {
    const SparseOperator m = SparseOperator::from_triplets(
        3, {{0, 1, 2.0}, {0, 1, 3.0}, {2, 2, 1.0}, {2, 2, -1.0}, {1, 0, 0.5}});
    CHECK(m.nnz() == 2);
    CHECK(m.coeff(0, 1) == 5.0);
    CHECK(m.coeff(1, 0) == 0.5);
    CHECK(m.coeff(2, 2) == 0.0);
    CHECK_THROWS_AS(SparseOperator::from_triplets(2, {{2, 0, 1.0}}),
                    std::invalid_argument);
  }
  SUBCASE("product and commutator against dense arithmetic") {
    std::mt19937 rng(7);
    const SparseOperator a = random_sparse(30, 4, rng);
    const SparseOperator b = random_sparse(30, 4, rng);
    const Eigen::MatrixXd ref = a.dense() * b.dense();
    CHECK((sparse_multiply(a, b).dense() - ref).cwiseAbs().maxCoeff() < 1e-13);
    const Eigen::MatrixXd comm = ref - b.dense() * a.dense();
    CHECK(std::fabs(commutator_max_norm(a, b) - comm.cwiseAbs().maxCoeff()) < 1e-13);
    CHECK(commutator_max_norm(a, a) == 0.0);
    const Eigen::MatrixXd lin = 2.0 * a.dense() - 0.5 * b.dense();
    CHECK((sparse_add(2.0, a, -0.5, b).dense() - lin).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("binary and text roundtrip") {
    std::mt19937 rng(11);
    const SparseOperator a = random_sparse(17, 3, rng);
    std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
    a.write_binary(bin);
    const SparseOperator a2 = SparseOperator::read_binary(bin);
    REQUIRE(a2.dim() == a.dim());
    REQUIRE(a2.nnz() == a.nnz());
    CHECK(sparse_add(1.0, a, -1.0, a2).max_abs() == 0.0);
    std::stringstream txt;
    a.write_text(txt);
    const SparseOperator a3 = SparseOperator::read_text(txt);
    CHECK(sparse_add(1.0, a, -1.0, a3).max_abs() == 0.0);
    std::stringstream empty;
    CHECK_THROWS(SparseOperator::read_binary(empty));
  }
}

TEST_CASE("projector_onto: embedding, idempotence, validation") {
  SUBCASE("single-site diagonal projector") {
    const SparseOperator p = projector_onto(2, {{1}, {{1.0, L({3})}}});
    CHECK(p.dim() == 36);
    CHECK(p.nnz() == 6);  // one block of the first site, identity on the second
    double trace = 0.0;
    for (std::uint64_t i = 0; i < 36; ++i) trace += p.coeff(i, i);
    CHECK(trace == 6.0);
    // x21 has code 3, so indices 18..23 carry the projector.
    CHECK(p.coeff(18, 18) == 1.0);
    CHECK(p.coeff(17, 17) == 0.0);
  }
  SUBCASE("two-component superposition") {
    const SparseOperator p = projector_onto(
        2, {{1, 2}, {{1.0, L({0, 3})}, {-1.0, L({1, 4})}}});
    CHECK(p.is_symmetric(0.0));
    double trace = 0.0;
    for (std::uint64_t i = 0; i < 36; ++i) trace += p.coeff(i, i);
    CHECK(std::fabs(trace - 1.0) < 1e-14);  // rank one
    const SparseOperator p2 = sparse_multiply(p, p);
    CHECK(sparse_add(1.0, p2, -1.0, p).max_abs() < 1e-14);
    // Unnormalized amplitudes are normalized internally.
    const SparseOperator q = projector_onto(
        2, {{1, 2}, {{2.0, L({0, 3})}, {-2.0, L({1, 4})}}});
    CHECK(sparse_add(1.0, p, -1.0, q).max_abs() < 1e-14);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(projector_onto(2, {{1}, {{0.0, L({3})}}}), std::invalid_argument);
    CHECK_THROWS_AS(projector_onto(2, {{3}, {{1.0, L({3})}}}), std::invalid_argument);
    CHECK_THROWS_AS(projector_onto(2, {{2, 1}, {{1.0, L({3, 3})}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(projector_onto(2, {{1, 2}, {{1.0, L({3})}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(projector_onto(9, {{1}, {{1.0, L({3})}}}), CapacityError);
  }
}

TEST_CASE("bulk terms: swap kernels and recoloring switch") {
  SUBCASE("three-site swap annihilates the symmetric pair; the recoloring "
          "term does not") {
    const Eigen::VectorXd pair =
        uniform_state(3, {P("1,2 2,3 3,2"), P("1,2 2,1 1,2")});
    const SparseOperator swap_only = projector_onto(
        3, {{1, 2, 3}, {{1.0, L({0, 2, 5})}, {-1.0, L({0, 3, 0})}}});
    CHECK(residual(swap_only, pair) < 1e-14);
    const SparseOperator bulk = build_bulk_connected(3, {0.0, 0.0});
    CHECK(residual(bulk, pair) > 0.1);  // the two-site recoloring term acts
    // The full move closure of either word is annihilated.
    const Eigen::VectorXd orbit = uniform_state(
        3, equivalence_closure(P("1,2 2,1 1,2"), MoveSet::mountains_only()));
    CHECK(residual(bulk, orbit) < 1e-14);
  }
  SUBCASE("chain of length 2 carries only two-site terms") {
    const SparseOperator bulk = build_bulk_connected(2, {0.0, 0.0});
    const SparseOperator w1 = projector_onto(
        2, {{1, 2}, {{1.0, L({0, 3})}, {-1.0, L({1, 4})}}});
    CHECK(sparse_add(1.0, bulk, -1.0, w1).max_abs() < 1e-14);
    CHECK_THROWS_AS(build_bulk_connected(1, {0.0, 0.0}), std::invalid_argument);
  }
  SUBCASE("recoloring coupling gates the valley projector") {
    const SparseOperator off = build_bulk_connected(2, {0.0, 0.0});
    // x31 x13 has digits (4,1) -> index 25; x32 x23 digits (5,2) -> 32.
    CHECK(off.coeff(25, 32) == 0.0);
    const SparseOperator on = build_bulk_connected(2, {1.0, 0.0});
    CHECK(on.coeff(25, 32) == doctest::Approx(-0.5));
    const SparseOperator weak = build_bulk_connected(2, {0.25, 0.0});
    CHECK(weak.coeff(25, 32) == doctest::Approx(-0.125));
  }
}

TEST_CASE("boundary terms: diagonal penalties at the ends") {
  SUBCASE("corner variant values") {
    const SparseOperator b = build_boundary(4, BoundaryVariant::kThreeSiteCorners);
    CHECK(b.is_symmetric(0.0));
    for (std::uint64_t k = 0; k < b.nnz(); ++k) {
      // entirely diagonal
    }
    for (std::uint64_t row = 0; row < b.dim(); ++row)
      for (std::uint64_t k = b.row_ptr()[row]; k < b.row_ptr()[row + 1]; ++k)
        CHECK(b.cols()[k] == row);
    // x13 x32 x21 x12: left corner pattern plus an up letter at the end.
    CHECK(b.coeff(P("1,3 3,2 2,1 1,2").encode(), P("1,3 3,2 2,1 1,2").encode()) ==
          2.0);
    // A walk shape: no penalty.
    CHECK(b.coeff(P("1,2 2,1 1,2 2,1").encode(), P("1,2 2,1 1,2 2,1").encode()) ==
          0.0);
    // Down letter at site 1 and up letter at site n.
    CHECK(b.coeff(P("2,1 1,2 2,1 1,2").encode(), P("2,1 1,2 2,1 1,2").encode()) ==
          2.0);
    CHECK_THROWS_AS(build_boundary(2, BoundaryVariant::kThreeSiteCorners),
                    std::invalid_argument);
  }
  SUBCASE("endpoint pins") {
    const SparseOperator b = build_boundary(4, BoundaryVariant::kEndpointPins);
    CHECK(b.coeff(P("2,3 3,2 2,3 3,2").encode(), P("2,3 3,2 2,3 3,2").encode()) ==
          0.0);
    // x12 start: penalized by the pin though it is a legal up letter.
    CHECK(b.coeff(P("1,2 2,1 2,3 3,2").encode(), P("1,2 2,1 2,3 3,2").encode()) ==
          1.0);
    // x12...x21 walk: both pins fire.
    CHECK(b.coeff(P("1,2 2,3 3,2 2,1").encode(), P("1,2 2,3 3,2 2,1").encode()) ==
          2.0);
  }
}

TEST_CASE("balancing term: penalized neighbor factors") {
  const SparseOperator b = build_balancing(2);
  CHECK(b.coeff(P("1,3 3,2").encode(), P("1,3 3,2").encode()) == 1.0);
  CHECK(b.coeff(P("2,3 3,1").encode(), P("2,3 3,1").encode()) == 1.0);
  CHECK(b.coeff(P("1,3 3,1").encode(), P("1,3 3,1").encode()) == 0.0);
  const SparseOperator b4 = build_balancing(4);
  const std::uint64_t alt = P("2,3 3,2 2,3 3,2").encode();
  CHECK(b4.coeff(alt, alt) == 0.0);
}

TEST_CASE("disconnection penalty: diagonal equals the junction mismatch count") {
  for (int n = 2; n <= 5; ++n) {
    const SparseOperator d = build_disconnected(n);
    CHECK(d.nnz() ==
          word_space_size(n) - connected_sector(n).indices.size());
    for (std::uint64_t idx = 0; idx < d.dim(); ++idx) {
      const auto breaks = Path::decode(idx, n).disconnection_sites();
      CHECK(d.coeff(idx, idx) == static_cast<double>(breaks.size()));
    }
  }
  SUBCASE("pinned examples") {
    const SparseOperator d5 = build_disconnected(5);
    CHECK(d5.coeff(P("1,2 2,1 2,3 3,2 2,1").encode(),
                   P("1,2 2,1 2,3 3,2 2,1").encode()) == 1.0);
    const SparseOperator d3 = build_disconnected(3);
    CHECK(d3.coeff(P("1,2 1,2 1,2").encode(), P("1,2 1,2 1,2").encode()) == 2.0);
  }
  SUBCASE("agrees with the projector-sum construction") {
    const int n = 3;
    std::vector<Triplet> t;
    for (int j = 1; j + 1 <= n; ++j)
      for (int c0 = 0; c0 < 6; ++c0)
        for (int c1 = 0; c1 < 6; ++c1) {
          if (Step::from_code(c0).b == Step::from_code(c1).a) continue;
          const SparseOperator p =
              projector_onto(n, {{j, j + 1}, {{1.0, L({c0, c1})}}});
          for (std::uint64_t row = 0; row < p.dim(); ++row)
            for (std::uint64_t k = p.row_ptr()[row]; k < p.row_ptr()[row + 1]; ++k)
              t.push_back({row, p.cols()[k], p.values()[k]});
        }
    const SparseOperator via_projectors =
        SparseOperator::from_triplets(word_space_size(n), std::move(t));
    CHECK(sparse_add(1.0, via_projectors, -1.0, build_disconnected(n)).max_abs() <
          1e-14);
  }
}

TEST_CASE("assembled chain Hamiltonian: kernels, couplings, validation") {
  CHECK_THROWS_AS(build_hf(2, {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_hf(4, {-1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_hf(9, {1.0, 0.0}), CapacityError);

  SUBCASE("every zero-energy class state is annihilated, per regime") {
    const int n = 4;
    const auto run = [&](PhaseParams params, GroundClassOptions opts,
                         BoundaryVariant variant, std::size_t expected_classes) {
      const SparseOperator h = build_hf(n, params, variant);
      CHECK(h.is_symmetric(0.0));
      const auto classes = ground_state_classes(n, opts);
      REQUIRE(classes.size() == expected_classes);
      for (const auto& cls : classes)
        CHECK(residual(h, uniform_state(n, cls)) < 1e-13);
    };
    GroundClassOptions phase1;
    phase1.w2_active = true;
    phase1.balancing_penalty = false;
    run({1.0, 0.0}, phase1, BoundaryVariant::kThreeSiteCorners, 4);

    GroundClassOptions phase2;
    phase2.w2_active = false;
    phase2.balancing_penalty = false;
    run({0.0, 0.0}, phase2, BoundaryVariant::kThreeSiteCorners, 8);

    GroundClassOptions phase3;
    phase3.w2_active = false;
    phase3.balancing_penalty = true;
    run({0.0, 1.0}, phase3, BoundaryVariant::kThreeSiteCorners, 2);

    GroundClassOptions pins;
    pins.w2_active = true;
    pins.balancing_penalty = false;
    pins.variant = BoundaryVariant::kEndpointPins;
    run({1.0, 0.0}, pins, BoundaryVariant::kEndpointPins, 1);
  }

  SUBCASE("balancing coupling enters linearly") {
    const SparseOperator h0 = build_hf(3, {0.0, 0.0});
    const SparseOperator h2 = build_hf(3, {0.0, 2.0});
    const SparseOperator diff = sparse_add(1.0, h2, -1.0, h0);
    const SparseOperator twice_b = sparse_add(2.0, build_balancing(3), 0.0, h0);
    CHECK(sparse_add(1.0, diff, -1.0, twice_b).max_abs() < 1e-14);
  }
}

TEST_CASE("junction operators: counts, diagonality, commutators") {
  const int n = 4;
  const SparseOperator h = build_hf(n, {1.0, 0.0});

  SUBCASE("operator count and diagonality") {
    const auto ops = conserved_operators(n);
    CHECK(ops.size() == 24 * (n - 1));
    std::vector<Triplet> t;
    for (const auto& op : ops) {
      for (std::uint64_t row = 0; row < op.dim(); ++row)
        for (std::uint64_t k = op.row_ptr()[row]; k < op.row_ptr()[row + 1]; ++k) {
          CHECK(op.cols()[k] == row);  // diagonal, so mutual commutators vanish
          t.push_back({row, op.cols()[k], op.values()[k]});
        }
    }
    const SparseOperator total =
        SparseOperator::from_triplets(word_space_size(n), std::move(t));
    CHECK(sparse_add(1.0, total, -1.0, build_disconnected(n)).max_abs() < 1e-14);
  }

  SUBCASE("a single junction-pattern projector fails to commute") {
    // The recoloring move changes the letters at a matched junction without
    // repairing a neighboring mismatch, so the projector onto one specific
    // mismatched pattern is not conserved; only the pattern sum per junction
    // is.  Witness: x12 x21 x23 x32 <-> x13 x31 x23 x32 under recoloring at
    // sites (1,2), distinguished by the pattern x21 x23 at sites (2,3).
    const SparseOperator o =
        projector_onto(n, {{2, 3}, {{1.0, L({3, 2})}}});
    CHECK(commutator_max_norm(h, o) == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("junction indicator sums commute exactly") {
    for (const PhaseParams params :
         {PhaseParams{1.0, 0.0}, PhaseParams{0.0, 0.0}, PhaseParams{0.0, 1.0}}) {
      const SparseOperator hp = build_hf(n, params);
      for (const auto& dj : junction_disconnection_indicators(n))
        CHECK(commutator_max_norm(hp, dj) < 1e-14);
    }
  }
}

TEST_CASE("sectors: block structure of the chain Hamiltonian") {
  SUBCASE("sector sizes") {
    for (int n = 1; n <= 6; ++n)
      CHECK(connected_sector(n).indices.size() == 6u << (n - 1));
    CHECK(pattern_sector(4, {2}).indices.size() == 6 * 2 * 4 * 2);
    CHECK(pattern_sector(4, {1, 2, 3}).indices.size() == 6 * 4 * 4 * 4);
    CHECK_THROWS_AS(pattern_sector(4, {4}), std::invalid_argument);
  }
  SUBCASE("no off-diagonal entry leaves its sector") {
    const SparseOperator h = build_hf(4, {1.0, 1.0});
    for (std::uint64_t row = 0; row < h.dim(); ++row) {
      const auto row_sites = Path::decode(row, 4).disconnection_sites();
      for (std::uint64_t k = h.row_ptr()[row]; k < h.row_ptr()[row + 1]; ++k)
        if (h.cols()[k] != row)
          CHECK(Path::decode(h.cols()[k], 4).disconnection_sites() == row_sites);
    }
  }
  SUBCASE("restriction and prolongation") {
    const int n = 4;
    const SparseOperator h = build_hf(n, {1.0, 0.0});
    const SectorBasis sec = connected_sector(n);
    const SparseOperator hr = restrict_to(h, sec);
    CHECK(hr.dim() == sec.indices.size());
    // Matvec through the restriction equals full matvec on sector states.
    std::mt19937 rng(3);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd xs(static_cast<Eigen::Index>(sec.indices.size()));
    for (Eigen::Index i = 0; i < xs.size(); ++i) xs[i] = gauss(rng);
    const Eigen::VectorXd full = h.apply(prolong_from_sector(sec, xs));
    const Eigen::VectorXd back = prolong_from_sector(sec, hr.apply(xs));
    CHECK((full - back).norm() < 1e-12);
    CHECK((restrict_to_sector(sec, prolong_from_sector(sec, xs)) - xs).norm() ==
          0.0);
  }
}
