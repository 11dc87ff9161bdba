#include "eqtri/oeis.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "httplib.h"

namespace eqtri {

namespace {

bool is_url(const std::string& s) { return s.rfind("http://", 0) == 0 || s.rfind("https://", 0) == 0; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FetchError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool valid_integer(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (const char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

}  // namespace

BFile parse_bfile(std::string_view text, std::string id) {
  BFile out{std::move(id), {}};
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t sep = line.find_first_of(" \t");
    if (sep == std::string_view::npos) throw ParseError(line_no, "expected 'index value'");
    const std::string_view index_text = line.substr(0, sep);
    std::string_view value_text = line.substr(sep);
    while (!value_text.empty() && (value_text.front() == ' ' || value_text.front() == '\t')) {
      value_text.remove_prefix(1);
    }
    Int index = 0;
    const auto [ip, iec] = std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
    if (iec != std::errc{} || ip != index_text.data() + index_text.size()) {
      throw ParseError(line_no, "bad index '" + std::string(index_text) + "'");
    }
    if (!valid_integer(value_text)) {
      throw ParseError(line_no, "bad value '" + std::string(value_text) + "'");
    }
    if (!out.entries.empty() && index <= out.entries.back().index) {
      throw ParseError(line_no, "index " + std::to_string(index) + " is not increasing");
    }
    out.entries.push_back({index, BigInt(std::string(value_text))});
  }
  return out;
}

std::string emit_bfile(const BFile& bfile) {
  std::ostringstream os;
  for (const auto& e : bfile.entries) os << e.index << ' ' << e.value << '\n';
  return os.str();
}

BFile to_bfile(const std::vector<CountRecord>& records, std::string id) {
  BFile out{std::move(id), {}};
  for (const auto& r : records) out.entries.push_back({r.n, BigInt(r.count)});
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Match:
      return "match";
    case Verdict::Mismatch:
      return "mismatch";
    case Verdict::Absent:
      return "absent";
  }
  return "?";
}

ComparisonReport compare(const std::vector<CountRecord>& records, const BFile& bfile) {
  std::map<Int, const BigInt*> expected;
  for (const auto& e : bfile.entries) expected[e.index] = &e.value;
  ComparisonReport report;
  for (const auto& r : records) {
    IndexVerdict v{r.n, Verdict::Absent, r.count, std::nullopt};
    if (auto it = expected.find(r.n); it != expected.end()) {
      v.expected = *it->second;
      v.verdict = (*it->second == BigInt(r.count)) ? Verdict::Match : Verdict::Mismatch;
    }
    switch (v.verdict) {
      case Verdict::Match:
        ++report.matches;
        break;
      case Verdict::Mismatch:
        ++report.mismatches;
        break;
      case Verdict::Absent:
        ++report.absent;
        break;
    }
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

std::string bfile_url(std::string_view id) {
  if (id.size() < 2 || id.front() != 'A') throw InvalidArgument("not an OEIS id: " + std::string(id));
  return "https://oeis.org/" + std::string(id) + "/b" + std::string(id.substr(1)) + ".txt";
}

std::string fetch_bfile(const std::string& source, const FetchOptions& opts) {
  if (!is_url(source)) {
    if (!std::filesystem::exists(source)) throw FetchError("no such file: " + source);
    std::string text = read_file(source);
    if (text.empty()) throw FetchError("empty b-file: " + source);
    return text;
  }

  static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch match;
  if (!std::regex_match(source, match, url_re)) throw FetchError("malformed URL: " + source);
  const std::string origin = match[1].str();
  const std::string path = match[2].matched ? match[2].str() : "/";
  const std::string name = std::filesystem::path(path).filename().string();

  std::optional<std::filesystem::path> cached;
  if (opts.cache_dir && !name.empty()) {
    cached = *opts.cache_dir / name;
    if (std::filesystem::exists(*cached)) {
      std::string text = read_file(*cached);
      if (!text.empty()) return text;
    }
  }

  httplib::Client client(origin);
  client.set_connection_timeout(opts.timeout_seconds, 0);
  client.set_read_timeout(opts.timeout_seconds, 0);
  client.set_follow_location(true);
  const auto res = client.Get(path);
  if (!res) throw FetchError("request to " + source + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw FetchError("request to " + source + " returned HTTP " + std::to_string(res->status));
  }
  if (res->body.empty()) throw FetchError("empty response from " + source);

  if (cached) {
    std::filesystem::create_directories(cached->parent_path());
    std::ofstream out(*cached, std::ios::binary);
    out << res->body;
  }
  return res->body;
}

}  // namespace eqtri
