#include "fredkin/closure.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>

#include "fredkin/errors.hpp"

namespace fredkin {

namespace {

struct MovePattern {
  int width;
  std::array<int, 3> lhs;  // window codes
  std::array<int, 3> rhs;
};

// The exchanged window patterns, as letter codes.
constexpr MovePattern kUp{3, {0, 2, 5}, {0, 3, 0}};      // x12 x23 x32 <-> x12 x21 x12
constexpr MovePattern kDown{3, {2, 5, 3}, {3, 0, 3}};    // x23 x32 x21 <-> x21 x12 x21
constexpr MovePattern kMountain{2, {0, 3, -1}, {1, 4, -1}};  // x12 x21 <-> x13 x31
constexpr MovePattern kValley{2, {4, 1, -1}, {5, 2, -1}};    // x31 x13 <-> x32 x23

using Word = std::vector<std::uint8_t>;  // letter codes

Word to_word(const Path& p) {
  Word w(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i)
    w[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(p.steps[static_cast<std::size_t>(i)].code());
  return w;
}

Path to_path(const Word& w) {
  std::vector<Step> steps(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) steps[i] = Step::from_code(w[i]);
  return Path(std::move(steps));
}

void apply_moves_at(const Word& w, std::size_t pos, const MovePattern& m,
                    std::vector<Word>& out) {
  const auto matches = [&](const std::array<int, 3>& pat) {
    for (int i = 0; i < m.width; ++i)
      if (w[pos + static_cast<std::size_t>(i)] != pat[static_cast<std::size_t>(i)])
        return false;
    return true;
  };
  const auto rewrite = [&](const std::array<int, 3>& pat) {
    Word v = w;
    for (int i = 0; i < m.width; ++i)
      v[pos + static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(pat[static_cast<std::size_t>(i)]);
    out.push_back(std::move(v));
  };
  if (matches(m.lhs)) rewrite(m.rhs);
  else if (matches(m.rhs)) rewrite(m.lhs);
}

std::vector<Word> neighbors(const Word& w, const MoveSet& moves) {
  std::vector<Word> out;
  const std::size_t n = w.size();
  if (moves.ud && n >= 3) {
    for (std::size_t pos = 0; pos + 3 <= n; ++pos) {
      apply_moves_at(w, pos, kUp, out);
      apply_moves_at(w, pos, kDown, out);
    }
  }
  if (n >= 2) {
    for (std::size_t pos = 0; pos + 2 <= n; ++pos) {
      if (moves.w1) apply_moves_at(w, pos, kMountain, out);
      if (moves.w2) apply_moves_at(w, pos, kValley, out);
    }
  }
  return out;
}

std::vector<Word> closure_words(const Word& seed, const MoveSet& moves,
                                std::uint64_t max_results) {
  std::set<Word> seen;
  std::deque<Word> queue;
  seen.insert(seed);
  queue.push_back(seed);
  while (!queue.empty()) {
    const Word w = std::move(queue.front());
    queue.pop_front();
    for (Word& v : neighbors(w, moves)) {
      if (seen.insert(v).second) {
        if (seen.size() > max_results)
          throw CapacityError("equivalence_closure: class larger than " +
                              std::to_string(max_results));
        queue.push_back(std::move(v));
      }
    }
  }
  return {seen.begin(), seen.end()};  // std::set iterates in sorted order
}

}  // namespace

std::vector<Path> equivalence_closure(const Path& seed, const MoveSet& moves,
                                      std::uint64_t max_results) {
  std::vector<Path> out;
  for (const Word& w : closure_words(to_word(seed), moves, max_results))
    out.push_back(to_path(w));
  return out;
}

std::vector<Path> connected_words(int n) {
  if (n < 1) throw std::invalid_argument("connected_words: length must be >= 1");
  std::vector<Path> out;
  std::vector<Step> prefix;
  prefix.reserve(static_cast<std::size_t>(n));
  const auto grow = [&](auto&& self, int k, int incoming) -> void {
    if (k == n) {
      out.push_back(Path(prefix));
      return;
    }
    for (int b = 1; b <= 3; ++b) {
      if (incoming != 0 ? b == incoming : false) continue;
      if (incoming == 0) {
        for (int a = 1; a <= 3; ++a) {
          if (a == b) continue;
          prefix.emplace_back(a, b);
          self(self, k + 1, b);
          prefix.pop_back();
        }
      } else {
        prefix.emplace_back(incoming, b);
        self(self, k + 1, b);
        prefix.pop_back();
      }
    }
  };
  grow(grow, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_penalized(const Path& word, const GroundClassOptions& opts) {
  const int n = word.size();
  if (n == 0) return false;
  const auto code = [&](int site) {
    return word.steps[static_cast<std::size_t>(site - 1)].code();
  };
  // Single-site walls: no down letter first, no up letter last.
  if (!word.steps.front().is_up()) return true;
  if (word.steps.back().is_up()) return true;
  if (opts.variant == BoundaryVariant::kThreeSiteCorners) {
    // Corner projectors: x13 x32 x21 at the left edge, x12 x23 x31 at the
    // right edge.
    if (n >= 3 && code(1) == 1 && code(2) == 5 && code(3) == 3) return true;
    if (n >= 3 && code(n - 2) == 0 && code(n - 1) == 2 && code(n) == 4)
      return true;
  } else {
    // Endpoint pins: the first letter must be x23, the last x32 (the up/down
    // walls above already exclude the rest).
    if (code(1) != 2) return true;
    if (code(n) != 5) return true;
  }
  if (opts.balancing_penalty) {
    // Pair penalties on the factors x13 x32 and x23 x31.
    for (int k = 1; k < n; ++k) {
      const int c0 = code(k), c1 = code(k + 1);
      if ((c0 == 1 && c1 == 5) || (c0 == 2 && c1 == 4)) return true;
    }
  }
  return false;
}

std::vector<std::vector<Path>> ground_state_classes(
    int n, const GroundClassOptions& opts) {
  const MoveSet moves{true, true, opts.w2_active};
  std::set<Word> visited;
  std::vector<std::vector<Path>> good;
  for (const Path& p : connected_words(n)) {
    const Word w = to_word(p);
    if (visited.count(w)) continue;
    const std::vector<Word> orbit = closure_words(w, moves, opts.max_results);
    bool clean = true;
    for (const Word& m : orbit) {
      visited.insert(m);
      if (clean && is_penalized(to_path(m), opts)) clean = false;
    }
    if (clean) {
      std::vector<Path> members;
      members.reserve(orbit.size());
      for (const Word& m : orbit) members.push_back(to_path(m));
      good.push_back(std::move(members));
    }
  }
  std::sort(good.begin(), good.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return good;
}

}  // namespace fredkin
