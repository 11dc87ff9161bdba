// OEIS b-file parsing, emission, retrieval and comparison.
#pragma once

#include "eqtri/counting.hpp"
#include "eqtri/types.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eqtri {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::string_view kTriangleSequenceId = "A102698";

struct BFileEntry {
  Int index = 0;
  BigInt value;

  bool operator==(const BFileEntry&) const = default;
};

/// Sequence id plus entries with strictly increasing indices.
struct BFile {
  std::string id;
  std::vector<BFileEntry> entries;

  bool operator==(const BFile&) const = default;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class FetchError : public Error {
 public:
  using Error::Error;
};

/// Lines "index value"; '#' comment lines and blank lines are ignored.
/// Values may have any number of digits.
BFile parse_bfile(std::string_view text, std::string id = std::string(kTriangleSequenceId));

std::string emit_bfile(const BFile& bfile);

BFile to_bfile(const std::vector<CountRecord>& records,
               std::string id = std::string(kTriangleSequenceId));

enum class Verdict { Match, Mismatch, Absent };

const char* to_string(Verdict v);

struct IndexVerdict {
  Int n = 0;
  Verdict verdict = Verdict::Absent;
  Count computed = 0;
  std::optional<BigInt> expected;
};

struct ComparisonReport {
  std::vector<IndexVerdict> verdicts;
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t absent = 0;

  /// No mismatch on any overlapping index.
  bool pass() const { return mismatches == 0; }
};

/// One verdict per computed record, in record order.
ComparisonReport compare(const std::vector<CountRecord>& records, const BFile& bfile);

/// "https://oeis.org/A102698/b102698.txt" for id "A102698".
std::string bfile_url(std::string_view id);

struct FetchOptions {
  /// Directory holding cached downloads, keyed by the URL's file name.
  std::optional<std::filesystem::path> cache_dir;
  int timeout_seconds = 10;
};

/// Reads a local path, or an http(s) URL with the cached copy preferred.
/// Throws FetchError on missing files, network failures and empty content.
std::string fetch_bfile(const std::string& source, const FetchOptions& opts = {});

}  // namespace eqtri
