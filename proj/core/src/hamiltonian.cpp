#include "fredkin/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "fredkin/errors.hpp"

namespace fredkin {

namespace {

std::uint64_t pow6(int k) {
  std::uint64_t v = 1;
  for (int i = 0; i < k; ++i) v *= 6;
  return v;
}

void check_chain(int n, int min_n, const char* what) {
  if (n < min_n)
    throw std::invalid_argument(std::string(what) + ": chain length " +
                                std::to_string(n) + " is below the minimum " +
                                std::to_string(min_n));
  if (n > kMaxOperatorSites)
    throw CapacityError(std::string(what) + ": chain length " + std::to_string(n) +
                        " exceeds the operator cap " +
                        std::to_string(kMaxOperatorSites));
}

// Appends scale * |psi><psi| (psi normalized) on the named sites, tensored
// with identity on the rest.
void append_projector(std::vector<Triplet>& out, int n, const std::vector<int>& sites,
                      const std::vector<std::pair<double, std::vector<Step>>>& amps,
                      double scale) {
  const int k = static_cast<int>(sites.size());
  if (k == 0 || amps.empty())
    throw std::invalid_argument("projector: empty site or amplitude list");
  for (int i = 0; i < k; ++i) {
    if (sites[i] < 1 || sites[i] > n)
      throw std::invalid_argument("projector: site outside the chain");
    if (i > 0 && sites[i] <= sites[i - 1])
      throw std::invalid_argument("projector: sites must strictly increase");
  }
  double norm2 = 0.0;
  for (const auto& [amp, letters] : amps) {
    if (static_cast<int>(letters.size()) != k)
      throw std::invalid_argument("projector: pattern length mismatch");
    norm2 += amp * amp;
  }
  if (norm2 == 0.0) throw std::invalid_argument("projector: zero-norm state");

  std::vector<std::uint64_t> pv(sites.size());
  for (int i = 0; i < k; ++i) pv[i] = pow6(n - sites[i]);
  std::vector<std::uint64_t> fpv;
  for (int s = 1, i = 0; s <= n; ++s) {
    if (i < k && sites[i] == s) {
      ++i;
      continue;
    }
    fpv.push_back(pow6(n - s));
  }
  std::vector<std::uint64_t> offset(amps.size());
  for (std::size_t p = 0; p < amps.size(); ++p) {
    std::uint64_t off = 0;
    for (int i = 0; i < k; ++i)
      off += static_cast<std::uint64_t>(amps[p].second[i].code()) * pv[i];
    offset[p] = off;
  }

  const std::uint64_t env_count = pow6(n - k);
  for (std::uint64_t e = 0; e < env_count; ++e) {
    std::uint64_t base = 0, rest = e;
    for (std::size_t i = fpv.size(); i-- > 0;) {
      base += (rest % 6) * fpv[i];
      rest /= 6;
    }
    for (std::size_t p = 0; p < amps.size(); ++p)
      for (std::size_t q = 0; q < amps.size(); ++q)
        out.push_back({base + offset[p], base + offset[q],
                       scale * amps[p].first * amps[q].first / norm2});
  }
}

std::vector<Step> letters(std::initializer_list<int> codes) {
  std::vector<Step> out;
  for (int c : codes) out.push_back(Step::from_code(c));
  return out;
}

void append_bulk(std::vector<Triplet>& out, int n, const PhaseParams& params) {
  for (int j = 1; j + 2 <= n; ++j) {
    // Swap of a mountain against a wedge, both starting from the same letter.
    append_projector(out, n, {j, j + 1, j + 2},
                     {{1.0, letters({0, 2, 5})}, {-1.0, letters({0, 3, 0})}}, 1.0);
    append_projector(out, n, {j, j + 1, j + 2},
                     {{1.0, letters({2, 5, 3})}, {-1.0, letters({3, 0, 3})}}, 1.0);
  }
  for (int j = 1; j + 1 <= n; ++j) {
    append_projector(out, n, {j, j + 1},
                     {{1.0, letters({0, 3})}, {-1.0, letters({1, 4})}}, 1.0);
    if (params.lambda1 != 0.0)
      append_projector(out, n, {j, j + 1},
                       {{1.0, letters({4, 1})}, {-1.0, letters({5, 2})}},
                       params.lambda1);
  }
}

void append_boundary(std::vector<Triplet>& out, int n, BoundaryVariant variant) {
  for (int c : {3, 4, 5})  // down letters may not start the walk
    append_projector(out, n, {1}, {{1.0, letters({c})}}, 1.0);
  for (int c : {0, 1, 2})  // up letters may not end it
    append_projector(out, n, {n}, {{1.0, letters({c})}}, 1.0);
  if (variant == BoundaryVariant::kThreeSiteCorners) {
    append_projector(out, n, {1, 2, 3}, {{1.0, letters({1, 5, 3})}}, 1.0);
    append_projector(out, n, {n - 2, n - 1, n}, {{1.0, letters({0, 2, 4})}}, 1.0);
  } else {
    // Pins: the first letter must be x23, the last x32.
    append_projector(out, n, {1}, {{1.0, letters({0})}}, 1.0);
    append_projector(out, n, {1}, {{1.0, letters({1})}}, 1.0);
    append_projector(out, n, {n}, {{1.0, letters({3})}}, 1.0);
    append_projector(out, n, {n}, {{1.0, letters({4})}}, 1.0);
  }
}

void append_balancing(std::vector<Triplet>& out, int n, double scale) {
  for (int j = 1; j + 1 <= n; ++j) {
    append_projector(out, n, {j, j + 1}, {{1.0, letters({1, 5})}}, scale);
    append_projector(out, n, {j, j + 1}, {{1.0, letters({2, 4})}}, scale);
  }
}

void append_disconnected(std::vector<Triplet>& out, int n) {
  const std::uint64_t dim = pow6(n);
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    int breaks = 0;
    std::uint64_t rest = idx;
    Step next = Step::from_code(static_cast<int>(rest % 6));
    rest /= 6;
    for (int j = n - 1; j >= 1; --j) {
      const Step cur = Step::from_code(static_cast<int>(rest % 6));
      rest /= 6;
      if (cur.b != next.a) ++breaks;
      next = cur;
    }
    if (breaks > 0) out.push_back({idx, idx, static_cast<double>(breaks)});
  }
}

}  // namespace

SparseOperator projector_onto(int n, const ProjectorSpec& spec) {
  check_chain(n, 1, "projector_onto");
  std::vector<Triplet> t;
  append_projector(t, n, spec.sites, spec.amplitudes, 1.0);
  return SparseOperator::from_triplets(pow6(n), std::move(t));
}

SparseOperator build_bulk_connected(int n, const PhaseParams& params) {
  check_chain(n, 2, "build_bulk_connected");
  std::vector<Triplet> t;
  append_bulk(t, n, params);
  return SparseOperator::from_triplets(pow6(n), std::move(t));
}

SparseOperator build_boundary(int n, BoundaryVariant variant) {
  check_chain(n, variant == BoundaryVariant::kThreeSiteCorners ? 3 : 2,
              "build_boundary");
  std::vector<Triplet> t;
  append_boundary(t, n, variant);
  return SparseOperator::from_triplets(pow6(n), std::move(t));
}

SparseOperator build_balancing(int n) {
  check_chain(n, 2, "build_balancing");
  std::vector<Triplet> t;
  append_balancing(t, n, 1.0);
  return SparseOperator::from_triplets(pow6(n), std::move(t));
}

SparseOperator build_disconnected(int n) {
  check_chain(n, 2, "build_disconnected");
  std::vector<Triplet> t;
  append_disconnected(t, n);
  return SparseOperator::from_triplets(pow6(n), std::move(t));
}

SparseOperator build_hf(int n, const PhaseParams& params, BoundaryVariant variant) {
  check_chain(n, 3, "build_hf");
  if (params.lambda1 < 0.0 || params.lambda2 < 0.0)
    throw std::invalid_argument("build_hf: couplings must be nonnegative");
  if (!params.frustration_free())
    std::cerr << "build_hf: warning: both couplings positive; the recoloring and "
                 "balancing terms have no common zero-energy state\n";
  std::vector<Triplet> t;
  append_bulk(t, n, params);
  append_boundary(t, n, variant);
  if (params.lambda2 != 0.0) append_balancing(t, n, params.lambda2);
  append_disconnected(t, n);
  return SparseOperator::from_triplets(pow6(n), std::move(t));
}

std::vector<SparseOperator> conserved_operators(int n) {
  check_chain(n, 2, "conserved_operators");
  std::vector<SparseOperator> ops;
  for (int j = 1; j + 1 <= n; ++j)
    for (int c0 = 0; c0 < 6; ++c0)
      for (int c1 = 0; c1 < 6; ++c1) {
        if (Step::from_code(c0).b == Step::from_code(c1).a) continue;
        std::vector<Triplet> t;
        append_projector(t, n, {j, j + 1}, {{1.0, letters({c0, c1})}}, 1.0);
        ops.push_back(SparseOperator::from_triplets(pow6(n), std::move(t)));
      }
  return ops;
}

std::vector<SparseOperator> junction_disconnection_indicators(int n) {
  check_chain(n, 2, "junction_disconnection_indicators");
  std::vector<SparseOperator> ops;
  for (int j = 1; j + 1 <= n; ++j) {
    std::vector<Triplet> t;
    for (int c0 = 0; c0 < 6; ++c0)
      for (int c1 = 0; c1 < 6; ++c1)
        if (Step::from_code(c0).b != Step::from_code(c1).a)
          append_projector(t, n, {j, j + 1}, {{1.0, letters({c0, c1})}}, 1.0);
    ops.push_back(SparseOperator::from_triplets(pow6(n), std::move(t)));
  }
  return ops;
}

SectorBasis pattern_sector(int n, const std::vector<int>& disconnection_sites) {
  if (n < 1) throw std::invalid_argument("pattern_sector: empty chain");
  word_space_size(n);  // enforces the encodable range
  std::vector<bool> broken(static_cast<std::size_t>(n), false);
  for (int s : disconnection_sites) {
    if (s < 1 || s > n - 1)
      throw std::invalid_argument("pattern_sector: junction outside the chain");
    if (broken[static_cast<std::size_t>(s)])
      throw std::invalid_argument("pattern_sector: repeated junction");
    broken[static_cast<std::size_t>(s)] = true;
  }
  SectorBasis out;
  out.n = n;
  std::vector<int> codes(static_cast<std::size_t>(n));
  const auto rec = [&](auto&& self, int pos, std::uint64_t idx) -> void {
    if (pos == n) {
      out.indices.push_back(idx);
      return;
    }
    for (int c = 0; c < 6; ++c) {
      if (pos > 0) {
        const bool mismatch =
            Step::from_code(codes[static_cast<std::size_t>(pos - 1)]).b !=
            Step::from_code(c).a;
        if (mismatch != broken[static_cast<std::size_t>(pos)]) continue;
      }
      codes[static_cast<std::size_t>(pos)] = c;
      self(self, pos + 1, idx * 6 + static_cast<std::uint64_t>(c));
    }
  };
  rec(rec, 0, 0);
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

SectorBasis connected_sector(int n) { return pattern_sector(n, {}); }

SparseOperator restrict_to(const SparseOperator& op, const SectorBasis& sector) {
  if (sector.indices.empty())
    throw std::invalid_argument("restrict_to: empty sector");
  std::unordered_map<std::uint64_t, std::uint64_t> pos;
  pos.reserve(sector.indices.size());
  for (std::size_t i = 0; i < sector.indices.size(); ++i)
    pos.emplace(sector.indices[i], static_cast<std::uint64_t>(i));
  std::vector<Triplet> t;
  for (std::uint64_t row = 0; row < op.dim(); ++row) {
    const auto pr = pos.find(row);
    if (pr == pos.end()) continue;
    for (std::uint64_t k = op.row_ptr()[row]; k < op.row_ptr()[row + 1]; ++k) {
      const auto pc = pos.find(op.cols()[k]);
      if (pc == pos.end()) continue;
      t.push_back({pr->second, pc->second, op.values()[k]});
    }
  }
  return SparseOperator::from_triplets(sector.indices.size(), std::move(t));
}

Eigen::VectorXd prolong_from_sector(const SectorBasis& sector, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != sector.indices.size())
    throw std::invalid_argument("prolong_from_sector: length mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(word_space_size(sector.n)));
  for (std::size_t i = 0; i < sector.indices.size(); ++i)
    out[static_cast<Eigen::Index>(sector.indices[i])] = x[static_cast<Eigen::Index>(i)];
  return out;
}

Eigen::VectorXd restrict_to_sector(const SectorBasis& sector, const Eigen::VectorXd& x) {
  if (static_cast<std::uint64_t>(x.size()) != word_space_size(sector.n))
    throw std::invalid_argument("restrict_to_sector: length mismatch");
  Eigen::VectorXd out(static_cast<Eigen::Index>(sector.indices.size()));
  for (std::size_t i = 0; i < sector.indices.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = x[static_cast<Eigen::Index>(sector.indices[i])];
  return out;
}

}  // namespace fredkin
