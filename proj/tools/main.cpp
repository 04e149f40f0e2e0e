// Command-line front end: exact walk counts, enumerations, move closures,
// spectra, ground-space reports, entanglement entropies, localization
// correlators, and the runnable acceptance suite.
//
// Output contract: JSON by default (--format csv switches), written to
// stdout or --output.  Every document begins with a metadata record echoing
// the tool version, the full parsed configuration, and the wall-clock
// runtime; pass --no-timing to zero the timing field when byte-identical
// artifacts matter.  Exit codes: 0 success, 1 usage or internal error,
// 2 capacity cap exceeded, 3 ambiguous spectral cluster, 4 violated exact
// identity; verify exits with the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "json.hpp"

#include "fredkin/acceptance.hpp"
#include "fredkin/asymptotics.hpp"
#include "fredkin/closure.hpp"
#include "fredkin/correlator.hpp"
#include "fredkin/counts.hpp"
#include "fredkin/entanglement.hpp"
#include "fredkin/errors.hpp"
#include "fredkin/hamiltonian.hpp"
#include "fredkin/path.hpp"
#include "fredkin/pointwise.hpp"
#include "fredkin/spectra.hpp"
#include "fredkin/version.hpp"
#include "fredkin/walks.hpp"

namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Output plumbing.
// ---------------------------------------------------------------------------

struct OutputOptions {
  std::string format = "json";  // "json" | "csv"
  std::string path;             // empty -> stdout
  bool no_timing = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", out.path, "write to this file instead of stdout");
  cmd->add_flag("--no-timing", out.no_timing,
                "report wall_clock_seconds as 0 for byte-identical artifacts");
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char ch : field) {
    quoted += ch;
    if (ch == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

class Emitter {
 public:
  Emitter(std::string command, ordered_json config, const OutputOptions& out)
      : command_(std::move(command)),
        config_(std::move(config)),
        out_(out),
        start_(std::chrono::steady_clock::now()) {}

  bool csv() const { return out_.format == "csv"; }

  // JSON document: metadata record first, then the payload fields in order.
  void finish_json(const ordered_json& payload) const {
    ordered_json doc;
    doc["meta"] = meta();
    for (const auto& [key, value] : payload.items()) doc[key] = value;
    write(doc.dump(2) + "\n");
  }

  // CSV document: one metadata comment line, a header, then the rows.
  void finish_csv(const std::string& header,
                  const std::vector<std::string>& rows) const {
    std::string text = "# fredkin " FREDKIN_VERSION_STRING " " + command_ +
                       " config=" + config_.dump() +
                       " wall_clock_seconds=" + fmt_double(wall_clock()) + "\n";
    text += header + "\n";
    for (const auto& row : rows) text += row + "\n";
    write(text);
  }

 private:
  double wall_clock() const {
    if (out_.no_timing) return 0.0;
    const double s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start_)
                         .count();
    return std::round(s * 1000.0) / 1000.0;
  }

  ordered_json meta() const {
    ordered_json m;
    m["tool"] = "fredkin";
    m["version"] = FREDKIN_VERSION_STRING;
    m["command"] = command_;
    m["config"] = config_;
    m["wall_clock_seconds"] = wall_clock();
    return m;
  }

  void write(const std::string& text) const {
    if (out_.path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream file(out_.path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_.path);
    file << text;
  }

  std::string command_;
  ordered_json config_;
  const OutputOptions& out_;
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Small parsers shared by several commands.
// ---------------------------------------------------------------------------

std::pair<int, int> parse_class(const std::string& text) {
  if (text.size() != 2 || text[0] < '1' || text[0] > '3' || text[1] < '1' ||
      text[1] > '3')
    throw std::invalid_argument("--class expects two digits in 1..3, e.g. 11");
  return {text[0] - '0', text[1] - '0'};
}

fredkin::Phase phase_enum(int phase) {
  switch (phase) {
    case 1: return fredkin::Phase::kFull;
    case 2: return fredkin::Phase::kMountainsOnly;
    case 3: return fredkin::Phase::kPairPenalty;
  }
  throw std::invalid_argument("--phase must be 1, 2 or 3");
}

// "l,a,b,s,e;l,a,b,s,e;..." -> excitation segments.
std::vector<fredkin::ExcitationSegment> parse_segments(const std::string& text) {
  std::vector<fredkin::ExcitationSegment> segments;
  std::istringstream stream(text);
  std::string chunk;
  while (std::getline(stream, chunk, ';')) {
    if (chunk.empty()) continue;
    fredkin::ExcitationSegment s;
    char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
    std::istringstream fields(chunk);
    if (!(fields >> s.length >> c1 >> s.a >> c2 >> s.b >> c3 >> s.start_height >>
          c4 >> s.end_height) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',')
      throw std::invalid_argument(
          "--segments expects 'length,a,b,start,end' groups separated by ';'");
    segments.push_back(s);
  }
  if (segments.empty())
    throw std::invalid_argument("--segments parsed to an empty list");
  return segments;
}

std::vector<int> resolve_range(int single, int lo, int hi, const char* what) {
  std::vector<int> values;
  if (single >= 0) {
    values.push_back(single);
  } else if (lo >= 0 && hi >= lo) {
    for (int v = lo; v <= hi; ++v) values.push_back(v);
  } else {
    throw std::invalid_argument(std::string("give either --") + what +
                                " or a --" + what + "-min/--" + what +
                                "-max range");
  }
  return values;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  return hash;
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

struct CountOpts {
  int phase = 1;
  bool dyck = false;
  int n = -1;
  int n_min = -1;
  int n_max = -1;
  int h = 0;
  bool all_heights = false;
  std::string cls;  // empty = all classes
  bool log_domain = false;
  bool asymptotic = false;
  OutputOptions out;
};

struct CountRow {
  std::string phase;
  int n = 0;
  int h = 0;
  int a = 0;
  int b = 0;
  std::string count;                 // decimal integer or log value
  std::optional<double> ratio;       // exact/asymptotic when requested
};

// Exact rows are cached under $FREDKIN_CACHE_DIR, content-addressed by the
// phase and the requested range.
class CountCache {
 public:
  CountCache(const CountOpts& opts, const std::string& descriptor) {
    const char* dir = std::getenv("FREDKIN_CACHE_DIR");
    if (dir == nullptr || *dir == '\0' || opts.dyck || opts.log_domain) return;
    descriptor_ = descriptor;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;
    char name[64];
    std::snprintf(name, sizeof name, "counts-p%d-%016llx.csv", opts.phase,
                  static_cast<unsigned long long>(fnv1a(descriptor)));
    path_ = std::filesystem::path(dir) / name;
  }

  bool load(std::vector<CountRow>& rows) const {
    if (path_.empty()) return false;
    std::ifstream file(path_);
    if (!file) return false;
    std::string line;
    if (!std::getline(file, line) || line != "# " + descriptor_) return false;
    std::vector<CountRow> loaded;
    while (std::getline(file, line)) {
      CountRow row;
      char c = 0;
      std::istringstream fields(line);
      if (!(fields >> row.n >> c >> row.h >> c >> row.a >> c >> row.b >> c) ||
          !std::getline(fields, row.count))
        return false;
      row.phase = descriptor_.substr(6, 1);  // "phase=P;..."
      loaded.push_back(row);
    }
    rows = std::move(loaded);
    return true;
  }

  void store(const std::vector<CountRow>& rows) const {
    if (path_.empty()) return;
    std::ofstream file(path_, std::ios::binary);
    if (!file) return;
    file << "# " << descriptor_ << "\n";
    for (const auto& row : rows)
      file << row.n << ',' << row.h << ',' << row.a << ',' << row.b << ','
           << row.count << "\n";
  }

 private:
  std::string descriptor_;
  std::filesystem::path path_;
};

int cmd_count(const CountOpts& opts) {
  ordered_json config{{"phase", opts.phase},
                      {"dyck", opts.dyck},
                      {"n", opts.n},
                      {"n_min", opts.n_min},
                      {"n_max", opts.n_max},
                      {"h", opts.h},
                      {"all_heights", opts.all_heights},
                      {"class", opts.cls},
                      {"log_domain", opts.log_domain},
                      {"asymptotic", opts.asymptotic}};
  Emitter emitter("count", config, opts.out);

  const std::vector<int> ns = resolve_range(opts.n, opts.n_min, opts.n_max, "n");
  const fredkin::Phase phase = phase_enum(opts.phase);
  int a_lo = 1, a_hi = 3, b_lo = 1, b_hi = 3;
  if (!opts.cls.empty()) {
    const auto [a, b] = parse_class(opts.cls);
    a_lo = a_hi = a;
    b_lo = b_hi = b;
  }
  const bool wildcard = opts.all_heights || opts.cls.empty();

  std::ostringstream descriptor;
  descriptor << "phase=" << opts.phase << ";n=" << ns.front() << ".."
             << ns.back() << ";h=" << (opts.all_heights ? std::string("all")
                                                        : std::to_string(opts.h))
             << ";class=" << (opts.cls.empty() ? std::string("all") : opts.cls);
  const CountCache cache(opts, descriptor.str());

  std::vector<CountRow> rows;
  const bool cached = !opts.dyck && cache.load(rows);
  if (!cached) {
    for (int n : ns) {
      const int h_hi = opts.all_heights ? fredkin::max_height(std::max(n, 1)) : opts.h;
      for (int h = opts.all_heights ? 0 : opts.h; h <= h_hi; ++h) {
        if (opts.dyck) {
          CountRow row{"dyck", n, h, 0, 0, "", std::nullopt};
          row.count = opts.log_domain
                          ? fmt_double(fredkin::log_dyck_catalan(n, h))
                          : fredkin::dyck_catalan(n, h).get_str();
          rows.push_back(std::move(row));
          continue;
        }
        for (int a = a_lo; a <= a_hi; ++a) {
          for (int b = b_lo; b <= b_hi; ++b) {
            CountRow row{std::to_string(opts.phase), n, h, a, b, "",
                         std::nullopt};
            try {
              if (opts.log_domain) {
                row.count = fmt_double(fredkin::log_count(phase, n, h, a, b));
              } else {
                switch (opts.phase) {
                  case 1: row.count = fredkin::count_phase1(n, h, a, b).get_str(); break;
                  case 2: row.count = fredkin::count_phase2(n, h, a, b).get_str(); break;
                  default: row.count = fredkin::count_phase3(n, h, a, b).get_str();
                }
              }
            } catch (const std::invalid_argument&) {
              if (!wildcard) throw;
              continue;  // class untabulated in this regime; skip in sweeps
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
    if (!opts.dyck && !opts.log_domain) cache.store(rows);
  }

  if (opts.asymptotic) {
    for (auto& row : rows) {
      const double lc = opts.dyck
                            ? fredkin::log_dyck_catalan(row.n, row.h)
                            : fredkin::log_count(phase, row.n, row.h, row.a, row.b);
      const double la = opts.dyck
                            ? fredkin::asymptotic_log_dyck(row.n, row.h)
                            : fredkin::asymptotic_log_count(phase, row.n, row.h,
                                                            row.a, row.b);
      row.ratio = std::exp(lc - la);
    }
  }

  if (emitter.csv()) {
    std::vector<std::string> lines;
    for (const auto& row : rows) {
      std::string line = row.phase + ',' + std::to_string(row.n) + ',' +
                         std::to_string(row.h) + ',' + std::to_string(row.a) +
                         ',' + std::to_string(row.b) + ',' + row.count;
      if (row.ratio) line += ',' + fmt_double(*row.ratio);
      lines.push_back(std::move(line));
    }
    emitter.finish_csv(opts.asymptotic
                           ? "phase,n,h,a,b,count,asymptotic_ratio"
                           : "phase,n,h,a,b,count",
                       lines);
  } else {
    ordered_json data = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json j{{"phase", row.phase}, {"n", row.n},       {"h", row.h},
                     {"a", row.a},         {"b", row.b},       {"count", row.count}};
      if (opts.log_domain) j["count"] = std::stod(row.count);
      if (row.ratio) j["asymptotic_ratio"] = *row.ratio;
      data.push_back(std::move(j));
    }
    ordered_json payload;
    payload["cached"] = cached;
    payload["rows"] = std::move(data);
    emitter.finish_json(payload);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// enumerate / closure
// ---------------------------------------------------------------------------

struct WordListOpts {
  // enumerate
  int n = -1;
  std::string cls = "11";
  int h = 0;
  int start_height = 0;
  bool unrestricted = false;
  // closure
  std::string seed;
  std::string moves = "all";
  // shared
  std::uint64_t max_results = 1u << 22;
  OutputOptions out;
};

int emit_words(Emitter& emitter, const std::vector<fredkin::Path>& words) {
  if (emitter.csv()) {
    std::vector<std::string> lines;
    lines.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
      lines.push_back(std::to_string(i) + ',' + csv_quote(words[i].text()));
    emitter.finish_csv("index,word", lines);
  } else {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < words.size(); ++i)
      rows.push_back(ordered_json{{"index", i}, {"word", words[i].text()}});
    ordered_json payload;
    payload["count"] = words.size();
    payload["rows"] = std::move(rows);
    emitter.finish_json(payload);
  }
  return 0;
}

int cmd_enumerate(const WordListOpts& opts) {
  ordered_json config{{"n", opts.n},
                      {"class", opts.cls},
                      {"h", opts.h},
                      {"start_height", opts.start_height},
                      {"unrestricted", opts.unrestricted},
                      {"max_results", opts.max_results}};
  Emitter emitter("enumerate", config, opts.out);
  const auto [a, b] = parse_class(opts.cls);
  fredkin::EnumerateOptions eo;
  eo.start_height = opts.start_height;
  eo.restricted = !opts.unrestricted;
  eo.max_results = opts.max_results;
  const auto words =
      fredkin::enumerate_walks(opts.n, fredkin::WalkClass{a, b, opts.h}, eo);
  return emit_words(emitter, words);
}

int cmd_closure(const WordListOpts& opts) {
  ordered_json config{{"seed", opts.seed},
                      {"moves", opts.moves},
                      {"max_results", opts.max_results}};
  Emitter emitter("closure", config, opts.out);
  const fredkin::MoveSet moves = opts.moves == "mountains"
                                     ? fredkin::MoveSet::mountains_only()
                                     : fredkin::MoveSet::all();
  const auto words = fredkin::equivalence_closure(fredkin::Path::parse(opts.seed),
                                                  moves, opts.max_results);
  return emit_words(emitter, words);
}

// ---------------------------------------------------------------------------
// spectrum / gsd
// ---------------------------------------------------------------------------

struct SpectrumOpts {
  int n = -1;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int k = 6;
  double tol = 1e-9;
  std::uint64_t dense_cutoff = 10000;
  unsigned seed = 20240816;
  bool connected = false;
  OutputOptions out;
};

fredkin::SparseOperator build_operator(int n, double lambda1, double lambda2,
                                       bool connected) {
  fredkin::SparseOperator h = fredkin::build_hf(n, {lambda1, lambda2});
  if (connected)
    h = fredkin::restrict_to(h, fredkin::connected_sector(n));
  return h;
}

int cmd_spectrum(const SpectrumOpts& opts) {
  ordered_json config{{"n", opts.n},
                      {"lambda1", opts.lambda1},
                      {"lambda2", opts.lambda2},
                      {"k", opts.k},
                      {"tol", opts.tol},
                      {"dense_cutoff", opts.dense_cutoff},
                      {"seed", opts.seed},
                      {"connected_sector", opts.connected}};
  Emitter emitter("spectrum", config, opts.out);

  const fredkin::SparseOperator h =
      build_operator(opts.n, opts.lambda1, opts.lambda2, opts.connected);
  fredkin::SolverOptions so;
  so.tol = opts.tol;
  so.dense_cutoff = opts.dense_cutoff;
  so.seed = opts.seed;
  const fredkin::SpectrumSlice slice = fredkin::low_spectrum(h, opts.k, so);

  const auto count = static_cast<int>(slice.values.size());
  double gap = 0.0;
  for (int i = 1; i < count; ++i) {
    if (slice.values[i] - slice.values[0] > 10.0 * opts.tol) {
      gap = slice.values[i] - slice.values[0];
      break;
    }
  }
  if (emitter.csv()) {
    std::vector<std::string> lines;
    for (int i = 0; i < count; ++i) {
      const double residual =
          i < slice.residuals.size() ? slice.residuals[i] : 0.0;
      lines.push_back(std::to_string(i) + ',' + fmt_double(slice.values[i]) +
                      ',' + fmt_double(residual));
    }
    emitter.finish_csv("index,energy,residual", lines);
  } else {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < count; ++i)
      rows.push_back(ordered_json{
          {"index", i},
          {"energy", slice.values[i]},
          {"residual", i < slice.residuals.size() ? slice.residuals[i] : 0.0}});
    ordered_json payload;
    payload["dim"] = h.dim();
    payload["dense"] = slice.dense;
    payload["iterations"] = slice.iterations;
    payload["ground_energy"] = count > 0 ? slice.values[0] : 0.0;
    payload["first_gap"] = gap;
    payload["rows"] = std::move(rows);
    emitter.finish_json(payload);
  }
  return 0;
}

struct GsdOpts {
  int n = -1;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double tol = 1e-9;
  std::uint64_t dense_cutoff = 10000;
  bool connected = false;
  OutputOptions out;
};

int cmd_gsd(const GsdOpts& opts) {
  ordered_json config{{"n", opts.n},
                      {"lambda1", opts.lambda1},
                      {"lambda2", opts.lambda2},
                      {"tol", opts.tol},
                      {"dense_cutoff", opts.dense_cutoff},
                      {"connected_sector", opts.connected}};
  Emitter emitter("gsd", config, opts.out);

  const fredkin::SparseOperator h =
      build_operator(opts.n, opts.lambda1, opts.lambda2, opts.connected);
  fredkin::SolverOptions so;
  so.tol = opts.tol;
  so.dense_cutoff = opts.dense_cutoff;
  const fredkin::GroundSpace gs = fredkin::ground_space(h, so);
  const fredkin::PhaseParams params{opts.lambda1, opts.lambda2};

  // The move classes predict the kernel dimension whenever the coupling
  // pattern pins the move set (both couplings positive is not frustration
  // free, so no prediction there).
  ordered_json expected;
  if (params.frustration_free()) {
    fredkin::GroundClassOptions gco;
    gco.w2_active = opts.lambda1 > 0.0;
    gco.balancing_penalty = opts.lambda2 > 0.0;
    const auto orbits = fredkin::ground_state_classes(opts.n, gco);
    ordered_json labels = ordered_json::array();
    for (const auto& orbit : orbits)
      labels.push_back(std::to_string(orbit.front().first_index()) +
                       std::to_string(orbit.front().last_index()));
    expected["move_classes"] = orbits.size();
    expected["class_labels"] = std::move(labels);
  }

  if (emitter.csv()) {
    emitter.finish_csv(
        "n,lambda1,lambda2,dim,degeneracy,ground_energy,gap",
        {std::to_string(opts.n) + ',' + fmt_double(opts.lambda1) + ',' +
         fmt_double(opts.lambda2) + ',' + std::to_string(h.dim()) + ',' +
         std::to_string(gs.degeneracy()) + ',' + fmt_double(gs.energy) + ',' +
         fmt_double(gs.gap)});
  } else {
    ordered_json payload;
    payload["dim"] = h.dim();
    payload["degeneracy"] = gs.degeneracy();
    payload["ground_energy"] = gs.energy;
    payload["gap"] = gs.gap;
    payload["membership_tol"] = gs.tol;
    payload["frustration_free"] = params.frustration_free();
    if (!expected.empty()) payload["expected"] = std::move(expected);
    emitter.finish_json(payload);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// ee
// ---------------------------------------------------------------------------

struct EeOpts {
  int phase = 1;
  std::string cls = "11";
  int two_n = -1;
  int two_n_min = -1;
  int two_n_max = -1;
  std::vector<int> r = {0};
  std::vector<std::string> methods = {"counts"};
  OutputOptions out;
};

std::vector<fredkin::Path> class_members(int phase, int two_n, int c, int d) {
  if (phase == 1)
    return fredkin::enumerate_walks(two_n, fredkin::WalkClass{c, d, 0});
  if (phase == 2) {
    if (c != 1 || d != 1)
      throw std::invalid_argument(
          "the state route in the move-class regime covers only class 11");
    std::string word;
    for (int i = 0; i < two_n / 2; ++i) word += i == 0 ? "1,2 2,1" : " 1,2 2,1";
    return fredkin::equivalence_closure(fredkin::Path::parse(word),
                                        fredkin::MoveSet::mountains_only());
  }
  fredkin::GroundClassOptions gco;
  gco.w2_active = false;
  gco.balancing_penalty = true;
  for (const auto& orbit : fredkin::ground_state_classes(two_n, gco))
    if (orbit.front().first_index() == c && orbit.front().last_index() == d)
      return orbit;
  throw std::invalid_argument("no balanced ground class " + std::to_string(c) +
                              std::to_string(d) + " at 2n=" +
                              std::to_string(two_n));
}

int cmd_ee(const EeOpts& opts) {
  ordered_json config{{"phase", opts.phase},   {"class", opts.cls},
                      {"two_n", opts.two_n},   {"two_n_min", opts.two_n_min},
                      {"two_n_max", opts.two_n_max},
                      {"r", opts.r},           {"methods", opts.methods}};
  Emitter emitter("ee", config, opts.out);

  std::vector<int> lengths =
      resolve_range(opts.two_n, opts.two_n_min, opts.two_n_max, "two-n");
  std::erase_if(lengths, [](int v) { return v % 2 != 0 || v < 2; });
  if (lengths.empty())
    throw std::invalid_argument("the 2n grid holds no even length >= 2");
  const auto [c, d] = parse_class(opts.cls);
  const fredkin::Phase phase = phase_enum(opts.phase);

  struct EeRow {
    int two_n;
    int r;
    std::string method;
    double S;
  };
  std::vector<EeRow> rows;
  for (int two_n : lengths) {
    const int half = two_n / 2;
    for (int r : opts.r) {
      if (r < 0 || r >= half)
        throw std::invalid_argument("cut offset r must satisfy 0 <= r < n");
      for (const std::string& method : opts.methods) {
        double S = 0.0;
        if (method == "counts") {
          S = fredkin::entropy_from_distribution(
                  fredkin::schmidt_distribution(two_n, r, phase, c, d))
                  .S;
        } else if (method == "state") {
          if (two_n > 8)
            throw std::invalid_argument(
                "the state route reshapes the full amplitude vector and is "
                "capped at 2n = 8");
          S = fredkin::entropy_from_state(
                  fredkin::build_path_state(
                      class_members(opts.phase, two_n, c, d)),
                  two_n, half + r)
                  .S;
        } else if (method == "asymptotic") {
          S = opts.phase == 1 ? fredkin::entropy_asymptotic_phase1(half, r).S
                              : fredkin::area_law_entropy_limit();
        } else if (method == "logcounts") {
          if (opts.phase != 1)
            throw std::invalid_argument(
                "the log-domain route applies to the critical regime "
                "(--phase 1)");
          S = fredkin::entropy_phase1_logcounts(half, r).S;
        } else {
          throw std::invalid_argument(
              "unknown method '" + method +
              "' (expected counts, state, asymptotic or logcounts)");
        }
        rows.push_back(EeRow{two_n, r, method, S});
      }
    }
  }

  if (emitter.csv()) {
    std::vector<std::string> lines;
    for (const auto& row : rows)
      lines.push_back(std::to_string(opts.phase) + ',' + opts.cls + ',' +
                      std::to_string(row.two_n) + ',' + std::to_string(row.r) +
                      ',' + row.method + ',' + fmt_double(row.S));
    emitter.finish_csv("phase,class,two_n,r,method,S", lines);
  } else {
    ordered_json data = ordered_json::array();
    for (const auto& row : rows)
      data.push_back(ordered_json{{"phase", opts.phase},
                                  {"class", opts.cls},
                                  {"two_n", row.two_n},
                                  {"r", row.r},
                                  {"method", row.method},
                                  {"S", row.S}});
    ordered_json payload;
    payload["rows"] = std::move(data);
    emitter.finish_json(payload);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// correlator
// ---------------------------------------------------------------------------

struct CorrelatorOpts {
  int n = -1;
  int he_r = -1;
  std::string segments;
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  std::vector<double> times = {0.5, 1.0, 5.0};
  int max_radius = 1;
  int window_stride = 1;
  int flip_samples = 2;
  int diagonal_samples = 2;
  int mixed_samples = 1;
  unsigned seed = 20240816;
  OutputOptions out;
};

int cmd_correlator(const CorrelatorOpts& opts) {
  ordered_json config{{"n", opts.n},
                      {"he", opts.he_r},
                      {"segments", opts.segments},
                      {"lambda1", opts.lambda1},
                      {"lambda2", opts.lambda2},
                      {"times", opts.times},
                      {"max_radius", opts.max_radius},
                      {"window_stride", opts.window_stride},
                      {"flip_samples", opts.flip_samples},
                      {"diagonal_samples", opts.diagonal_samples},
                      {"mixed_samples", opts.mixed_samples},
                      {"seed", opts.seed}};
  Emitter emitter("correlator", config, opts.out);

  if ((opts.he_r >= 0) == !opts.segments.empty())
    throw std::invalid_argument(
        "give exactly one of --he (ladder count) or --segments");

  Eigen::VectorXd psi;
  std::vector<int> junctions;
  std::string state_id;
  if (opts.he_r >= 0) {
    psi = fredkin::highly_excited_state(opts.n, opts.he_r);
    for (int j = 1; j <= opts.he_r; ++j) junctions.push_back(j);
    state_id = "he-" + std::to_string(opts.n) + "-" + std::to_string(opts.he_r);
  } else {
    const auto segments = parse_segments(opts.segments);
    psi = fredkin::build_excitation(opts.n, segments);
    int site = 0;
    state_id = "seg";
    for (std::size_t i = 0; i < segments.size(); ++i) {
      site += segments[i].length;
      if (i + 1 < segments.size()) junctions.push_back(site);
      state_id += "-" + std::to_string(segments[i].length) +
                  std::to_string(segments[i].a) + std::to_string(segments[i].b);
    }
  }

  fredkin::LocalizationOptions lo;
  lo.times = opts.times;
  std::sort(lo.times.begin(), lo.times.end());
  lo.times.erase(std::unique(lo.times.begin(), lo.times.end()), lo.times.end());
  lo.max_radius = opts.max_radius;
  lo.window_stride = opts.window_stride;
  lo.flip_samples = opts.flip_samples;
  lo.diagonal_samples = opts.diagonal_samples;
  lo.mixed_samples = opts.mixed_samples;
  lo.seed = opts.seed;

  const fredkin::LocalizationReport report = fredkin::localization_report(
      fredkin::build_hf(opts.n, {opts.lambda1, opts.lambda2}), psi, junctions,
      lo);

  if (emitter.csv()) {
    std::vector<std::string> lines;
    lines.reserve(report.samples.size());
    for (const auto& s : report.samples)
      lines.push_back(std::to_string(opts.n) + ',' + state_id + ',' +
                      std::to_string(s.i) + ',' + std::to_string(s.delta) +
                      ',' + std::to_string(s.j) + ',' +
                      std::to_string(s.delta_prime) + ',' + fmt_double(s.t) +
                      ',' + fmt_double(s.value.real()) + ',' +
                      fmt_double(s.value.imag()) + ',' +
                      fmt_double(std::abs(s.value)) + ',' +
                      (s.overlap ? "1" : "0"));
    emitter.finish_csv("n,state_id,i,delta,j,delta_prime,t,re,im,abs,overlap_flag",
                       lines);
  } else {
    ordered_json rows = ordered_json::array();
    for (const auto& s : report.samples)
      rows.push_back(ordered_json{{"n", opts.n},
                                  {"state_id", state_id},
                                  {"i", s.i},
                                  {"delta", s.delta},
                                  {"j", s.j},
                                  {"delta_prime", s.delta_prime},
                                  {"t", s.t},
                                  {"re", s.value.real()},
                                  {"im", s.value.imag()},
                                  {"abs", std::abs(s.value)},
                                  {"overlap_flag", s.overlap ? 1 : 0},
                                  {"family_a", s.family_a},
                                  {"family_b", s.family_b}});
    ordered_json payload;
    payload["disconnections"] = report.disconnections;
    payload["overlap_count"] = report.overlap_count;
    payload["no_overlap_count"] = report.no_overlap_count;
    payload["max_no_overlap"] = report.max_no_overlap;
    payload["max_overlap"] = report.max_overlap;
    payload["rows"] = std::move(rows);
    emitter.finish_json(payload);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOpts {
  bool quick = false;
  int only = 0;  // 0 = all criteria
  OutputOptions out;
};

int cmd_verify(const VerifyOpts& opts) {
  ordered_json config{{"quick", opts.quick}, {"only", opts.only}};
  Emitter emitter("verify", config, opts.out);

  const fredkin::AcceptanceOptions ao{opts.quick};
  std::vector<fredkin::CriterionResult> results;
  const auto progress = [](const fredkin::CriterionResult& r) {
    std::fprintf(stderr, "[%s] %2d %s (%.1fs) %s\n", r.passed ? "PASS" : "FAIL",
                 r.id, r.name.c_str(), r.seconds, r.detail.c_str());
  };
  if (opts.only > 0) {
    results.push_back(fredkin::run_acceptance_criterion(opts.only, ao));
    progress(results.back());
  } else {
    results = fredkin::run_acceptance(ao, progress);
  }

  int failed = 0;
  ordered_json failing = ordered_json::array();
  for (const auto& r : results) {
    if (!r.passed) {
      ++failed;
      failing.push_back(r.id);
    }
  }

  if (emitter.csv()) {
    std::vector<std::string> lines;
    for (const auto& r : results)
      lines.push_back(std::to_string(r.id) + ',' + r.name + ',' +
                      (r.passed ? "1" : "0") + ',' + fmt_double(r.seconds) +
                      ',' + csv_quote(r.detail));
    emitter.finish_csv("id,name,passed,seconds,detail", lines);
  } else {
    ordered_json rows = ordered_json::array();
    for (const auto& r : results)
      rows.push_back(ordered_json{{"id", r.id},
                                  {"name", r.name},
                                  {"passed", r.passed},
                                  {"seconds", r.seconds},
                                  {"detail", r.detail}});
    ordered_json payload;
    payload["passed"] = static_cast<int>(results.size()) - failed;
    payload["failed"] = failed;
    payload["failing"] = std::move(failing);
    payload["rows"] = std::move(rows);
    emitter.finish_json(payload);
  }
  return failed;
}

}  // namespace

// ---------------------------------------------------------------------------
// wiring
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{
      "fredkin: arrow-indexed walk combinatorics and spin-chain numerics"};
  app.set_version_flag("--version", FREDKIN_VERSION_STRING);
  app.require_subcommand(0, 1);
  app.fallthrough();

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--threads", threads,
                 "threads for the dense linear algebra backend")
      ->capture_default_str();

  CountOpts count_opts;
  CLI::App* count = app.add_subcommand("count", "exact, log-domain and "
                                                "asymptotic walk counts");
  count->set_help_flag("--help", "print help");  // frees -h for the --h option
  count->add_option("--phase", count_opts.phase, "counting regime")
      ->check(CLI::Range(1, 3))->capture_default_str();
  count->add_flag("--dyck", count_opts.dyck,
                  "count plain nonnegative walks by end height instead");
  count->add_option("--n", count_opts.n, "walk length");
  count->add_option("--n-min", count_opts.n_min, "first length of a sweep");
  count->add_option("--n-max", count_opts.n_max, "last length of a sweep");
  count->add_option("--h", count_opts.h, "end height")->capture_default_str();
  count->add_flag("--all-heights", count_opts.all_heights,
                  "sweep every reachable end height");
  count->add_option("--class", count_opts.cls,
                    "arrow-index class, two digits (first, last); default all");
  count->add_flag("--log-domain", count_opts.log_domain,
                  "emit natural logs instead of exact integers");
  count->add_flag("--asymptotic", count_opts.asymptotic,
                  "append the exact/asymptotic ratio column");
  add_output_options(count, count_opts.out);

  WordListOpts enum_opts;
  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "list the connected walks of one class");
  enumerate->set_help_flag("--help", "print help");
  enumerate->add_option("--n", enum_opts.n, "walk length")->required();
  enumerate->add_option("--class", enum_opts.cls, "arrow-index class")
      ->capture_default_str();
  enumerate->add_option("--h", enum_opts.h, "end height")->capture_default_str();
  enumerate->add_option("--start-height", enum_opts.start_height,
                        "height the walk starts from")->capture_default_str();
  enumerate->add_flag("--unrestricted", enum_opts.unrestricted,
                      "drop the floor constraint");
  enumerate->add_option("--max-results", enum_opts.max_results,
                        "enumeration cap")->capture_default_str();
  add_output_options(enumerate, enum_opts.out);

  WordListOpts closure_opts;
  CLI::App* closure = app.add_subcommand(
      "closure", "move-equivalence class of a seed word");
  closure->add_option("--seed", closure_opts.seed,
                      "seed word, e.g. '1,2 2,1'")->required();
  closure->add_option("--moves", closure_opts.moves, "move set")
      ->check(CLI::IsMember({"all", "mountains"}))->capture_default_str();
  closure->add_option("--max-results", closure_opts.max_results,
                      "closure cap")->capture_default_str();
  add_output_options(closure, closure_opts.out);

  SpectrumOpts spectrum_opts;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "low eigenvalues of the chain Hamiltonian");
  spectrum->add_option("--n", spectrum_opts.n, "chain length")->required();
  spectrum->add_option("--lambda1", spectrum_opts.lambda1,
                       "recoloring coupling")->capture_default_str();
  spectrum->add_option("--lambda2", spectrum_opts.lambda2,
                       "balancing coupling")->capture_default_str();
  spectrum->add_option("--k", spectrum_opts.k, "number of eigenpairs")
      ->capture_default_str();
  spectrum->add_option("--tol", spectrum_opts.tol, "residual tolerance")
      ->capture_default_str();
  spectrum->add_option("--dense-cutoff", spectrum_opts.dense_cutoff,
                       "largest dimension solved densely")->capture_default_str();
  spectrum->add_option("--seed", spectrum_opts.seed,
                       "iterative solver start seed")->capture_default_str();
  spectrum->add_flag("--connected-sector", spectrum_opts.connected,
                     "restrict to the connected words");
  add_output_options(spectrum, spectrum_opts.out);

  GsdOpts gsd_opts;
  CLI::App* gsd = app.add_subcommand(
      "gsd", "ground-space degeneracy, energy and gap");
  gsd->add_option("--n", gsd_opts.n, "chain length")->required();
  gsd->add_option("--lambda1", gsd_opts.lambda1, "recoloring coupling")
      ->capture_default_str();
  gsd->add_option("--lambda2", gsd_opts.lambda2, "balancing coupling")
      ->capture_default_str();
  gsd->add_option("--tol", gsd_opts.tol, "kernel membership tolerance")
      ->capture_default_str();
  gsd->add_option("--dense-cutoff", gsd_opts.dense_cutoff,
                  "largest dimension solved densely")->capture_default_str();
  gsd->add_flag("--connected-sector", gsd_opts.connected,
                "restrict to the connected words");
  add_output_options(gsd, gsd_opts.out);

  EeOpts ee_opts;
  CLI::App* ee = app.add_subcommand(
      "ee", "entanglement entropy by counting, reshaping or asymptotics");
  ee->add_option("--phase", ee_opts.phase, "regime")->check(CLI::Range(1, 3))
      ->capture_default_str();
  ee->add_option("--class", ee_opts.cls, "ground class, two digits")
      ->capture_default_str();
  ee->add_option("--two-n", ee_opts.two_n, "chain length (even)");
  ee->add_option("--two-n-min", ee_opts.two_n_min, "first length of a sweep");
  ee->add_option("--two-n-max", ee_opts.two_n_max, "last length of a sweep");
  ee->add_option("--r", ee_opts.r, "cut offsets from the midpoint")
      ->capture_default_str();
  ee->add_option("--method", ee_opts.methods,
                 "counts | state | asymptotic | logcounts (repeatable)")
      ->capture_default_str();
  add_output_options(ee, ee_opts.out);

  CorrelatorOpts corr_opts;
  CLI::App* correlator = app.add_subcommand(
      "correlator", "connected-correlator localization scan of an excitation");
  correlator->add_option("--n", corr_opts.n, "chain length")->required();
  correlator->add_option("--he", corr_opts.he_r,
                         "ladder excitation with this many disconnections");
  correlator->add_option("--segments", corr_opts.segments,
                         "excitation segments 'l,a,b,start,end;...'");
  correlator->add_option("--lambda1", corr_opts.lambda1, "recoloring coupling")
      ->capture_default_str();
  correlator->add_option("--lambda2", corr_opts.lambda2, "balancing coupling")
      ->capture_default_str();
  correlator->add_option("--times", corr_opts.times, "evolution times")
      ->capture_default_str();
  correlator->add_option("--max-radius", corr_opts.max_radius,
                         "largest window radius")->capture_default_str();
  correlator->add_option("--window-stride", corr_opts.window_stride,
                         "stride of window centers")->capture_default_str();
  correlator->add_option("--flip-samples", corr_opts.flip_samples,
                         "flip operators per evolved window")->capture_default_str();
  correlator->add_option("--diagonal-samples", corr_opts.diagonal_samples,
                         "diagonal operators per evolved window")
      ->capture_default_str();
  correlator->add_option("--mixed-samples", corr_opts.mixed_samples,
                         "mixed operators per window")->capture_default_str();
  correlator->add_option("--seed", corr_opts.seed, "operator sampling seed")
      ->capture_default_str();
  add_output_options(correlator, corr_opts.out);

  VerifyOpts verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the acceptance criteria and report pass/fail");
  verify->add_flag("--quick", verify_opts.quick,
                   "reduced grids for a fast sanity pass");
  verify->add_option("--only", verify_opts.only,
                     "run a single criterion by id (1-13)");
  add_output_options(verify, verify_opts.out);

  CLI11_PARSE(app, argc, argv);

  // The dense eigensolver backend reads its thread count at first use; the
  // flag must win over an inherited environment only when given explicitly.
  setenv("OPENBLAS_NUM_THREADS", std::to_string(threads).c_str(),
         app.count("--threads") > 0 ? 1 : 0);
  Eigen::setNbThreads(static_cast<int>(threads));

  try {
    if (app.got_subcommand(count)) return cmd_count(count_opts);
    if (app.got_subcommand(enumerate)) return cmd_enumerate(enum_opts);
    if (app.got_subcommand(closure)) return cmd_closure(closure_opts);
    if (app.got_subcommand(spectrum)) return cmd_spectrum(spectrum_opts);
    if (app.got_subcommand(gsd)) return cmd_gsd(gsd_opts);
    if (app.got_subcommand(ee)) return cmd_ee(ee_opts);
    if (app.got_subcommand(correlator)) return cmd_correlator(corr_opts);
    if (app.got_subcommand(verify)) return cmd_verify(verify_opts);
  } catch (const fredkin::CapacityError& e) {
    std::fprintf(stderr, "capacity cap exceeded: %s\n", e.what());
    return 2;
  } catch (const fredkin::SpectralAmbiguityError& e) {
    std::fprintf(stderr, "ambiguous spectral cluster: %s\n", e.what());
    return 3;
  } catch (const fredkin::IdentityViolationError& e) {
    std::fprintf(stderr, "exact identity violated: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  std::puts("no subcommand given; try --help");
  return 1;
}
