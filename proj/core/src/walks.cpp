#include "fredkin/walks.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "fredkin/errors.hpp"

namespace fredkin {

int max_height(int n) {
  if (n <= 0) throw std::invalid_argument("max_height: length must be >= 1");
  if (n == 1) return 1;
  // After the first unit of height, each further unit costs three letters:
  // the climb stalls until the arrow indices have cycled back to an up pair.
  return (n - 2) / 3 + 2;
}

std::vector<int> Path::heights(int start_height) const {
  std::vector<int> h;
  h.reserve(steps.size() + 1);
  h.push_back(start_height);
  int cur = start_height;
  for (const Step& s : steps) {
    cur += s.height_delta();
    h.push_back(cur);
  }
  return h;
}

int Path::end_height(int start_height) const {
  int cur = start_height;
  for (const Step& s : steps) cur += s.height_delta();
  return cur;
}

int Path::min_height(int start_height) const {
  int cur = start_height;
  int lo = start_height;
  for (const Step& s : steps) {
    cur += s.height_delta();
    lo = std::min(lo, cur);
  }
  return lo;
}

int Path::max_height_reached(int start_height) const {
  int cur = start_height;
  int hi = start_height;
  for (const Step& s : steps) {
    cur += s.height_delta();
    hi = std::max(hi, cur);
  }
  return hi;
}

bool Path::stays_nonnegative(int start_height) const {
  if (start_height < 0) return false;
  int cur = start_height;
  for (const Step& s : steps) {
    cur += s.height_delta();
    if (cur < 0) return false;
  }
  return true;
}

std::vector<int> Path::disconnection_sites() const {
  std::vector<int> sites;
  for (int k = 1; k < size(); ++k)
    if (steps[static_cast<std::size_t>(k - 1)].b !=
        steps[static_cast<std::size_t>(k)].a)
      sites.push_back(k);
  return sites;
}

Classification Path::classify() const {
  Classification c;
  c.sites = disconnection_sites();
  if (c.sites.empty())
    c.kind = WalkKind::kConnected;
  else if (static_cast<int>(c.sites.size()) == size() - 1)
    c.kind = WalkKind::kTotallyDisconnected;
  else
    c.kind = WalkKind::kPartiallyDisconnected;
  return c;
}

std::uint64_t word_space_size(int n) {
  if (n < 0) throw std::invalid_argument("word_space_size: negative length");
  if (n > 24)
    throw CapacityError("word space 6^" + std::to_string(n) +
                        " exceeds 64-bit indexing (max n = 24)");
  std::uint64_t d = 1;
  for (int i = 0; i < n; ++i) d *= 6;
  return d;
}

std::uint64_t Path::encode() const {
  word_space_size(size());  // capacity check
  std::uint64_t idx = 0;
  for (const Step& s : steps) idx = idx * 6 + static_cast<std::uint64_t>(s.code());
  return idx;
}

Path Path::decode(std::uint64_t index, int n) {
  if (index >= word_space_size(n))
    throw std::invalid_argument("Path::decode: index out of range");
  std::vector<Step> steps(static_cast<std::size_t>(n));
  for (int s = n - 1; s >= 0; --s) {
    steps[static_cast<std::size_t>(s)] = Step::from_code(static_cast<int>(index % 6));
    index /= 6;
  }
  return Path(std::move(steps));
}

std::string Path::text(bool mark_disconnections) const {
  std::string out;
  for (int k = 0; k < size(); ++k) {
    if (k > 0) {
      if (mark_disconnections &&
          steps[static_cast<std::size_t>(k - 1)].b != steps[static_cast<std::size_t>(k)].a)
        out += " |";
      out += ' ';
    }
    out += steps[static_cast<std::size_t>(k)].text();
  }
  return out;
}

Path Path::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<Step> steps;
  std::vector<int> bars;  // junction labels asserted disconnected
  std::string tok;
  while (in >> tok) {
    if (tok == "|") {
      if (steps.empty())
        throw std::invalid_argument("path parse: '|' before the first letter");
      if (!bars.empty() && bars.back() == static_cast<int>(steps.size()))
        throw std::invalid_argument("path parse: repeated '|'");
      bars.push_back(static_cast<int>(steps.size()));
      continue;
    }
    const auto comma = tok.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 >= tok.size())
      throw std::invalid_argument("path parse: expected 'a,b' token, got '" +
                                  tok + "'");
    const std::string as = tok.substr(0, comma);
    const std::string bs = tok.substr(comma + 1);
    if (as.size() != 1 || bs.size() != 1 || !std::isdigit(as[0]) ||
        !std::isdigit(bs[0]))
      throw std::invalid_argument("path parse: expected single digits in '" +
                                  tok + "'");
    const int a = as[0] - '0';
    const int b = bs[0] - '0';
    if (a < 1 || a > 3 || b < 1 || b > 3 || a == b)
      throw std::invalid_argument("path parse: invalid letter '" + tok + "'");
    steps.emplace_back(a, b);
  }
  if (!bars.empty() && bars.back() == static_cast<int>(steps.size()))
    throw std::invalid_argument("path parse: trailing '|'");
  Path p(std::move(steps));
  const std::vector<int> broken = p.disconnection_sites();
  for (int k : bars)
    if (!std::binary_search(broken.begin(), broken.end(), k))
      throw std::invalid_argument(
          "path parse: '|' after site " + std::to_string(k) +
          " marks a junction that is connected");
  return p;
}

namespace {

struct WalkSearch {
  int n;
  WalkClass cls;
  EnumerateOptions opts;
  std::vector<Step> prefix;
  std::vector<Path>* out;       // null when only counting
  std::uint64_t count = 0;

  bool feasible(int k, int height) const {
    const int r = n - k;
    const int d = cls.h - height;
    if (std::abs(d) > r) return false;
    if (((r - d) & 1) != 0) return false;
    return true;
  }

  void grow(int k, int height, int next_a) {
    if (k == n) {
      // next_a holds the outgoing index of the final letter.
      if (height == cls.h && next_a == cls.b) {
        ++count;
        if (out) {
          if (count > opts.max_results)
            throw CapacityError("enumerate_walks: more than " +
                                std::to_string(opts.max_results) + " walks");
          out->push_back(Path(prefix));
        }
      }
      return;
    }
    if (!feasible(k, height)) return;
    for (int b = 1; b <= 3; ++b) {
      if (b == next_a) continue;
      const Step s(next_a, b);
      const int h2 = height + s.height_delta();
      if (opts.restricted && h2 < 0) continue;
      prefix.push_back(s);
      grow(k + 1, h2, b);
      prefix.pop_back();
    }
  }
};

std::uint64_t run_walk_search(int n, const WalkClass& cls,
                              const EnumerateOptions& opts,
                              std::vector<Path>* out) {
  if (n < 0) throw std::invalid_argument("enumerate_walks: negative length");
  if (cls.a < 1 || cls.a > 3 || cls.b < 1 || cls.b > 3)
    throw std::invalid_argument("enumerate_walks: arrow indices must be 1..3");
  if (opts.restricted && opts.start_height < 0)
    throw std::invalid_argument(
        "enumerate_walks: restricted walk cannot start below the floor");
  if (n == 0) {
    const bool exists = cls.a == cls.b && cls.h == opts.start_height;
    if (exists && out) out->push_back(Path{});
    return exists ? 1 : 0;
  }
  WalkSearch search{n, cls, opts, {}, out};
  search.prefix.reserve(static_cast<std::size_t>(n));
  search.grow(0, opts.start_height, cls.a);
  return search.count;
}

}  // namespace

std::vector<Path> enumerate_walks(int n, const WalkClass& cls,
                                  const EnumerateOptions& opts) {
  std::vector<Path> out;
  run_walk_search(n, cls, opts, &out);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t enumerate_count(int n, const WalkClass& cls,
                              const EnumerateOptions& opts) {
  return run_walk_search(n, cls, opts, nullptr);
}

}  // namespace fredkin
