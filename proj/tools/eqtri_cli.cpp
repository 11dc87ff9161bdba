// eqtri: construct, invert and count equilateral triangles in Z^3.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage error.
#include "eqtri/analysis.hpp"
#include "eqtri/counting.hpp"
#include "eqtri/diophantine.hpp"
#include "eqtri/oeis.hpp"
#include "eqtri/parametrization.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef EQTRI_VERSION
#define EQTRI_VERSION "0.0.0"
#endif
#ifndef EQTRI_FIXTURE
#define EQTRI_FIXTURE "data/b102698.txt"
#endif

namespace {

using namespace eqtri;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  Int lo = 0;
  Int hi = 0;
};

Range parse_range(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    Int v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const Int v = parse_int(text);
    return {v, v};
  }
  const Range r{parse_int(text.substr(0, dots)), parse_int(text.substr(dots + 2))};
  if (r.lo > r.hi) throw UsageError("empty range '" + text + "'");
  return r;
}

/// Everything a subcommand needs, validated before any computation.
struct RunConfig {
  std::string subcommand;
  std::string range_text;
  std::vector<Int> numbers;
  bool degenerate_only = false;
  bool all_pairs = false;
  bool oracle = false;
  Int oracle_limit = kDefaultOracleLimit;
  std::string compare_source;
  std::string cache_dir;
  bool long_run = false;
  Int long_threshold = 300;
  unsigned threads = 1;
  std::string format = "csv";
  std::string output;
  std::string counts_file;
  std::vector<Int> fit_points;
  std::vector<std::string> emit;
  std::string out_dir = ".";

  std::string canonical() const {
    std::ostringstream os;
    os << subcommand << '|' << range_text << '|';
    for (Int v : numbers) os << v << ',';
    os << '|' << degenerate_only << all_pairs << oracle << '|' << oracle_limit << '|' << compare_source
       << '|' << long_run << '|' << long_threshold << '|' << format << '|' << counts_file << '|';
    for (Int v : fit_points) os << v << ',';
    for (const auto& e : emit) os << e << ',';
    // thread budget and output locations do not influence results
    return os.str();
  }

  std::string hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : canonical()) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  std::string header_line() const { return "# eqtri " EQTRI_VERSION " config=" + hash(); }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string resolve_source(const std::string& source) {
  if (source == "fixture") {
    if (const char* env = std::getenv("EQTRI_FIXTURE")) return env;
    return EQTRI_FIXTURE;
  }
  if (source == "oeis") return bfile_url(kTriangleSequenceId);
  return source;
}

FetchOptions fetch_options(const RunConfig& cfg) {
  FetchOptions opts;
  if (!cfg.cache_dir.empty()) {
    opts.cache_dir = fs::path(cfg.cache_dir);
  } else if (const char* env = std::getenv("EQTRI_CACHE_DIR")) {
    opts.cache_dir = fs::path(env);
  }
  return opts;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_triples(const RunConfig& cfg) {
  const Range range = parse_range(cfg.range_text);
  if (range.lo < 1) throw UsageError("d must be positive");
  if (range.lo == range.hi && range.lo % 2 == 0) throw UsageError("d must be odd");
  Output out(cfg.output);
  std::ostream& os = out.stream();
  nlohmann::json rows = nlohmann::json::array();
  if (cfg.format == "csv") os << cfg.header_line() << "\na,b,c,d,zeta_a,zeta_b,zeta_c,degenerate\n";
  for (Int d = range.lo | 1; d <= range.hi; d += 2) {
    for (const Triple& t : enumerate_triples(d)) {
      const DegeneracyInfo info = degeneracy(t);
      if (cfg.degenerate_only && !info.is_degenerate) continue;
      if (cfg.format == "csv") {
        os << t.a << ',' << t.b << ',' << t.c << ',' << t.d << ',' << info.zeta_a << ',' << info.zeta_b
           << ',' << info.zeta_c << ',' << (info.is_degenerate ? 1 : 0) << '\n';
      } else {
        rows.push_back({{"a", t.a}, {"b", t.b}, {"c", t.c}, {"d", t.d},
                        {"zeta", {info.zeta_a, info.zeta_b, info.zeta_c}},
                        {"degenerate", info.is_degenerate}});
      }
    }
  }
  if (cfg.format == "json") {
    os << nlohmann::json{{"meta", {{"version", EQTRI_VERSION}, {"config", cfg.hash()}}}, {"triples", rows}}
              .dump(2)
       << '\n';
  }
  return kExitOk;
}

std::string linear_form(Int cm, Int cn) {
  std::ostringstream os;
  os << cm << "m" << (cn > 0 ? " - " : " + ") << (cn > 0 ? cn : -cn) << "n";
  return os.str();
}

int cmd_params(const RunConfig& cfg) {
  if (cfg.numbers.size() != 4) throw UsageError("params needs a b c d");
  Triple t;
  try {
    t = make_triple(cfg.numbers[0], cfg.numbers[1], cfg.numbers[2], cfg.numbers[3]);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const std::vector<ParamPair> tables = cfg.all_pairs ? suitable_params(t) : std::vector{canonical_params(t)};
  Output out(cfg.output);
  std::ostream& os = out.stream();
  if (cfg.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : tables) {
      arr.push_back({{"r", p.rs.r}, {"s", p.rs.s},
                     {"P", {{p.m_u(), p.n_u()}, {p.m_v(), p.n_v()}, {p.m_w(), p.n_w()}}},
                     {"Q", {{p.m_x(), p.n_x()}, {p.m_y(), p.n_y()}, {p.m_z(), p.n_z()}}}});
    }
    os << nlohmann::json{{"meta", {{"version", EQTRI_VERSION}, {"config", cfg.hash()}}},
                         {"triple", {t.a, t.b, t.c, t.d}},
                         {"tables", arr}}
              .dump(2)
       << '\n';
    return kExitOk;
  }
  os << cfg.header_line() << '\n';
  os << "triple a=" << t.a << " b=" << t.b << " c=" << t.c << " d=" << t.d << " q=" << to_string(t.q())
     << '\n';
  for (const auto& p : tables) {
    os << "r=" << p.rs.r << " s=" << p.rs.s << '\n';
    os << "  m_u=" << p.m_u() << " n_u=" << p.n_u() << " m_v=" << p.m_v() << " n_v=" << p.n_v()
       << " m_w=" << p.m_w() << " n_w=" << p.n_w() << '\n';
    os << "  m_x=" << p.m_x() << " n_x=" << p.n_x() << " m_y=" << p.m_y() << " n_y=" << p.n_y()
       << " m_z=" << p.m_z() << " n_z=" << p.n_z() << '\n';
    os << "  P=(" << linear_form(p.m_u(), p.n_u()) << ", " << linear_form(p.m_v(), p.n_v()) << ", "
       << linear_form(p.m_w(), p.n_w()) << ")\n";
    os << "  Q=(" << linear_form(p.m_x(), p.n_x()) << ", " << linear_form(p.m_y(), p.n_y()) << ", "
       << linear_form(p.m_z(), p.n_z()) << ")\n";
  }
  return kExitOk;
}

int cmd_count(const RunConfig& cfg) {
  const Range range = parse_range(cfg.range_text);
  if (range.lo < 0) throw UsageError("n must be non-negative");
  if (cfg.oracle && range.hi > cfg.oracle_limit) {
    throw UsageError("oracle limit is " + std::to_string(cfg.oracle_limit) + "; raise --oracle-limit");
  }
  if (!cfg.oracle && range.hi > cfg.long_threshold && !cfg.long_run) {
    throw UsageError("n above " + std::to_string(cfg.long_threshold) + " requires --long");
  }

  std::vector<CountRecord> records;
  if (cfg.oracle) {
    for (Int n = range.lo; n <= range.hi; ++n) records.push_back(oracle_count(n, cfg.oracle_limit));
  } else {
    CountOptions opts;
    opts.threads = cfg.threads;
    records = count_range(range.lo, range.hi, opts);
  }

  Output out(cfg.output);
  std::ostream& os = out.stream();
  std::optional<ComparisonReport> report;
  if (!cfg.compare_source.empty()) {
    const std::string source = resolve_source(cfg.compare_source);
    const BFile bfile = parse_bfile(fetch_bfile(source, fetch_options(cfg)));
    report = compare(records, bfile);
  }

  if (cfg.format == "csv") {
    os << cfg.header_line() << '\n' << format_counts_csv(records);
  } else if (cfg.format == "bfile") {
    os << cfg.header_line() << '\n' << emit_bfile(to_bfile(records));
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back({{"n", r.n}, {"count", r.count}});
    nlohmann::json doc{{"meta", {{"version", EQTRI_VERSION}, {"config", cfg.hash()}}}, {"records", arr}};
    if (report) {
      nlohmann::json verdicts = nlohmann::json::array();
      for (const auto& v : report->verdicts) verdicts.push_back({{"n", v.n}, {"verdict", to_string(v.verdict)}});
      doc["comparison"] = {{"pass", report->pass()}, {"verdicts", verdicts}};
    }
    os << doc.dump(2) << '\n';
  }

  if (report) {
    for (const auto& v : report->verdicts) {
      if (v.verdict == Verdict::Mismatch) {
        std::cerr << "mismatch at n=" << v.n << ": computed " << v.computed << ", expected " << *v.expected
                  << '\n';
      }
    }
    std::cerr << "comparison: " << report->matches << " match, " << report->mismatches << " mismatch, "
              << report->absent << " absent -> " << (report->pass() ? "PASS" : "FAIL") << '\n';
    if (!report->pass()) return kExitMismatch;
  }
  return kExitOk;
}

bool looks_like_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    return line.find(',') != std::string::npos;
  }
  return false;
}

std::vector<CountRecord> load_counts(const std::string& path) {
  if (!fs::exists(path)) throw UsageError("counts file not found: " + path);
  const std::string text = read_text(path);
  std::vector<CountRecord> records;
  try {
    if (looks_like_csv(text)) {
      records = parse_counts_csv(text);
    } else {
      for (const auto& e : parse_bfile(text).entries) {
        if (e.value < 0 || e.value > std::numeric_limits<Count>::max()) {
          throw UsageError("count out of range at n=" + std::to_string(e.index));
        }
        records.push_back({e.index, e.value.convert_to<Count>()});
      }
    }
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (records.empty()) throw UsageError("no counts in " + path);
  return records;
}

int cmd_analyze(const RunConfig& cfg) {
  std::vector<CountRecord> records = load_counts(cfg.counts_file);
  std::vector<Int> skipped;
  const std::vector<GrowthSample> samples = growth_sequence(records, &skipped);
  std::ostream& os = std::cout;
  os << cfg.header_line() << '\n';
  os << "records: n=" << records.front().n << ".." << records.back().n << " (" << records.size() << ")\n";
  for (Int n : skipped) os << "skipped n=" << n << " (ET(n) = 0 or n = 0)\n";
  if (samples.empty()) throw UsageError("no positive counts to analyze");

  PlotFits fits;
  if (!cfg.fit_points.empty()) {
    if (cfg.fit_points.size() != 3) throw UsageError("--fit-points takes exactly three values");
    fits.growth = fit_g_three_points(samples, cfg.fit_points[0], cfg.fit_points[1], cfg.fit_points[2]);
    std::printf("three-point fit: a=%.10f b=%.10f c=%.10f\n", fits.growth.a, fits.growth.b, fits.growth.c);
  }

  const Int k_lo = samples.front().n;
  const Int k_hi = samples.back().n;
  std::printf("mean |f-g| reference constants, k=%lld..%lld: %.12f (reference over 1..1105: %.12f)\n",
              static_cast<long long>(k_lo), static_cast<long long>(k_hi),
              mean_abs_deviation(samples, kReferenceGrowthFit, k_lo, k_hi), kReferenceMeanDeviation);
  if (!cfg.fit_points.empty()) {
    std::printf("mean |f-g| three-point fit, k=%lld..%lld: %.12f\n", static_cast<long long>(k_lo),
                static_cast<long long>(k_hi), mean_abs_deviation(samples, fits.growth, k_lo, k_hi));
  }
  if (records.size() >= 3) {
    const PowerFit pf = fit_power(records);
    std::printf("first-difference power fit (log-log least squares): C=%.9f k=%.9f\n", pf.power_coefficient,
                pf.exponent);
  }
  const MonotonicityReport mono = monotonicity_report(samples);
  os << "monotonicity: " << mono.violations.size() << " violations of f(n+1) > f(n)";
  for (Int n : mono.violations) os << ' ' << n;
  os << '\n';

  if (!cfg.emit.empty()) fs::create_directories(cfg.out_dir);
  for (const auto& name : cfg.emit) {
    PlotKind kind;
    try {
      kind = parse_plot_kind(name);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    const fs::path path = fs::path(cfg.out_dir) / (std::string(to_string(kind)) + ".csv");
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path.string());
    f << cfg.header_line() << '\n' << emit_plot_data(kind, records, fits);
    os << "wrote " << path.string() << '\n';
  }
  return mono.strictly_increasing() ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilateral triangles with vertices in Z^3"};
  app.set_version_flag("--version", EQTRI_VERSION);
  app.require_subcommand(1);
  RunConfig cfg;

  auto* triples = app.add_subcommand("triples", "Primitive solutions of a^2+b^2+c^2=3d^2");
  triples->add_option("d", cfg.range_text, "odd d, or a range lo..hi")->required();
  triples->add_flag("--degenerate-only", cfg.degenerate_only, "only triples with min gcd(d, .) > 1");
  triples->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
  triples->add_option("-o,--output", cfg.output, "output file (default stdout)");

  auto* params = app.add_subcommand("params", "Coefficient table of the parametrization");
  params->add_option("abcd", cfg.numbers, "a b c d")->expected(4)->required();
  params->add_flag("--all", cfg.all_pairs, "every suitable (r, s), not only the canonical one");
  params->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
  params->add_option("-o,--output", cfg.output, "output file (default stdout)");

  auto* count = app.add_subcommand("count", "ET(n), equilateral triangles in {0..n}^3");
  count->add_option("n", cfg.range_text, "n, or a range lo..hi")->required();
  count->add_flag("--oracle", cfg.oracle, "exhaustive scan instead of the fast counter");
  count->add_option("--oracle-limit", cfg.oracle_limit, "largest n the oracle accepts")->check(CLI::NonNegativeNumber);
  count->add_option("--compare-oeis", cfg.compare_source,
                    "b-file to compare against: a path, a URL, 'fixture' or 'oeis'");
  count->add_option("--cache-dir", cfg.cache_dir, "download cache (default $EQTRI_CACHE_DIR)");
  count->add_flag("--long", cfg.long_run, "allow n above the long-run threshold");
  count->add_option("--long-threshold", cfg.long_threshold)->check(CLI::NonNegativeNumber);
  count->add_option("--threads", cfg.threads)->check(CLI::Range(1u, 1024u));
  count->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "bfile", "json"}));
  count->add_option("-o,--output", cfg.output, "output file (default stdout)");

  auto* analyze = app.add_subcommand("analyze", "Growth analysis of a counts file");
  analyze->add_option("counts-file", cfg.counts_file, "CSV 'n,count' or b-file")->required();
  analyze->add_option("--fit-points", cfg.fit_points, "three n values for the g fit")->expected(3);
  analyze->add_option("--emit", cfg.emit, "growth | first-difference | third-difference");
  analyze->add_option("--out-dir", cfg.out_dir, "directory for emitted CSV files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  try {
    if (cfg.subcommand == "triples") return cmd_triples(cfg);
    if (cfg.subcommand == "params") return cmd_params(cfg);
    if (cfg.subcommand == "count") return cmd_count(cfg);
    if (cfg.subcommand == "analyze") return cmd_analyze(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FetchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitUsage;
}
