#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eqtri/oeis.hpp"

#include "httplib.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

using namespace eqtri;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("eqtri_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse_bfile") {
  const BFile two = parse_bfile("0 0\n1 8\n");
  CHECK(two.id == "A102698");
  REQUIRE(two.entries.size() == 2);
  CHECK(two.entries[0] == BFileEntry{0, 0});
  CHECK(two.entries[1] == BFileEntry{1, 8});

  const BFile one = parse_bfile("# comment\n\n5 3448\n");
  REQUIRE(one.entries.size() == 1);
  CHECK(one.entries[0] == BFileEntry{5, 3448});

  const BFile big = parse_bfile("7 123456789012345678901234567890123456789\r\n8 -4\n");
  CHECK(big.entries[0].value == BigInt("123456789012345678901234567890123456789"));
  CHECK(big.entries[1].value == -4);

  CHECK(parse_bfile("").entries.empty());
}

TEST_CASE("parse_bfile errors carry the line number") {
  try {
    parse_bfile("1 x");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  try {
    parse_bfile("# c\n1 8\n1 9\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_bfile("12\n"), ParseError);
  CHECK_THROWS_AS(parse_bfile("a 1\n"), ParseError);
  CHECK_THROWS_AS(parse_bfile("1 2 3\n"), ParseError);
}

TEST_CASE("emit then parse is the identity") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> step(1, 5);
  std::uniform_int_distribution<int> digits(1, 60);
  std::uniform_int_distribution<int> digit(0, 9);
  for (int trial = 0; trial < 50; ++trial) {
    BFile b{"A102698", {}};
    Int index = -3;
    for (int i = 0; i < 40; ++i) {
      index += step(rng);
      std::string v(1, static_cast<char>('1' + digit(rng) % 9));
      for (int k = digits(rng); k > 1; --k) v.push_back(static_cast<char>('0' + digit(rng)));
      b.entries.push_back({index, BigInt(v)});
    }
    CHECK(parse_bfile(emit_bfile(b)) == b);
  }
}

TEST_CASE("compare") {
  const BFile ref = parse_bfile("0 0\n1 8\n");
  const auto pass = compare({{0, 0}, {1, 8}}, ref);
  CHECK(pass.pass());
  CHECK(pass.matches == 2);

  const auto fail = compare({{1, 9}}, ref);
  CHECK_FALSE(fail.pass());
  REQUIRE(fail.verdicts.size() == 1);
  CHECK(fail.verdicts[0].verdict == Verdict::Mismatch);
  CHECK(fail.verdicts[0].n == 1);

  const BFile to1105 = parse_bfile("1 8\n1105 2474524936846512\n");
  const auto absent = compare({{2000, 1}}, to1105);
  CHECK(absent.pass());
  CHECK(absent.verdicts[0].verdict == Verdict::Absent);

  // verdicts are symmetric in the values compared
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Count> dist(0, 3);
  for (int i = 0; i < 100; ++i) {
    const Count x = dist(rng), y = dist(rng);
    const auto r1 = compare({{4, x}}, to_bfile({{4, y}}));
    const auto r2 = compare({{4, y}}, to_bfile({{4, x}}));
    CHECK(r1.verdicts[0].verdict == r2.verdicts[0].verdict);
    CHECK((r1.verdicts[0].verdict == Verdict::Mismatch) == (x != y));
  }
}

TEST_CASE("bundled fixture") {
  const BFile fixture = parse_bfile(fetch_bfile(EQTRI_FIXTURE));
  REQUIRE(fixture.entries.size() >= 100);
  CHECK(fixture.entries.front() == BFileEntry{1, 8});
  CHECK(fixture.entries[3] == BFileEntry{4, 1264});
  for (const auto& e : fixture.entries) CHECK(e.value >= 0);
}

TEST_CASE("bfile_url") {
  CHECK(bfile_url("A102698") == "https://oeis.org/A102698/b102698.txt");
  CHECK_THROWS_AS(bfile_url("x"), InvalidArgument);
}

TEST_CASE("fetch_bfile local and cached sources") {
  const fs::path dir = scratch_dir("fetch");
  const fs::path local = dir / "local.txt";
  std::ofstream(local) << "1 8\n";
  CHECK(fetch_bfile(local.string()) == "1 8\n");
  CHECK_THROWS_AS(fetch_bfile((dir / "missing.txt").string()), FetchError);
  std::ofstream(dir / "empty.txt").flush();
  CHECK_THROWS_AS(fetch_bfile((dir / "empty.txt").string()), FetchError);

  // cached copy wins; the host does not resolve, so any network use would fail
  const fs::path cache = dir / "cache";
  fs::create_directories(cache);
  std::ofstream(cache / "b102698.txt") << "1 8\n2 80\n";
  FetchOptions opts;
  opts.cache_dir = cache;
  CHECK(fetch_bfile("https://oeis.invalid/A102698/b102698.txt", opts) == "1 8\n2 80\n");

  opts.timeout_seconds = 2;
  CHECK_THROWS_AS(fetch_bfile("http://127.0.0.1:9/A1/b1.txt", opts), FetchError);
  fs::remove_all(dir);
}

TEST_CASE("fetch_bfile over HTTP fills the cache") {
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Get("/A000001/b000001.txt", [&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.set_content("1 1\n2 1\n", "text/plain");
  });
  server.Get("/A000002/b000002.txt", [&](const httplib::Request&, httplib::Response& res) { res.status = 404; });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const fs::path cache = scratch_dir("http");
  FetchOptions opts;
  opts.cache_dir = cache;
  const std::string url = "http://127.0.0.1:" + std::to_string(port) + "/A000001/b000001.txt";
  CHECK(fetch_bfile(url, opts) == "1 1\n2 1\n");
  CHECK(fs::exists(cache / "b000001.txt"));
  CHECK(fetch_bfile(url, opts) == "1 1\n2 1\n");
  CHECK(hits == 1);
  CHECK_THROWS_AS(fetch_bfile("http://127.0.0.1:" + std::to_string(port) + "/A000002/b000002.txt", opts),
                  FetchError);

  server.stop();
  worker.join();
  fs::remove_all(cache);
}
