#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unistd.h>

#include "usp/arith.hpp"
#include "usp/search.hpp"

using namespace usp;
using namespace usp::search;

namespace {

std::vector<Natural> ns(const std::vector<SearchHit>& hits) {
  std::vector<Natural> out;
  for (const auto& h : hits) out.push_back(h.n);
  return out;
}

std::string render(const std::vector<SearchHit>& hits) {
  std::string out;
  for (const auto& h : hits) out += to_json_line(h) + '\n';
  return out;
}

Natural brute_unitary_sigma(Natural n) {
  Natural s = 0;
  for (Natural d = 1; d * d <= n; ++d) {
    if (n % d || std::gcd(d, n / d) != 1) continue;
    s += d;
    if (d * d != n) s += n / d;
  }
  return s;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& tag)
      : path(std::filesystem::temp_directory_path() /
             ("usp-test-" + tag + "-" + std::to_string(::getpid()) + ".ckpt")) {
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string read() const {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  void write(const std::string& text) const { std::ofstream(path) << text; }
};

SearchConfig small_config() {
  SearchConfig c;
  c.limit = 1'000'000;
  c.segment_size = Natural{1} << 16;
  return c;
}

}  // namespace

TEST_CASE("sigma_star_segment examples") {
  CHECK(sigma_star_segment(1, 11) == std::vector<Natural>{1, 3, 4, 5, 6, 12, 8, 9, 10, 18});
  CHECK(sigma_star_segment(165, 166) == std::vector<Natural>{288});
  CHECK(sigma_star_segment(238, 239) == std::vector<Natural>{432});
  CHECK(sigma_segment(1, 7) == std::vector<Natural>{1, 3, 4, 7, 6, 12});
  CHECK(sigma_star_segment(5, 5).empty());
  CHECK_THROWS_AS(sigma_star_segment(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(sigma_star_segment(9, 5), std::invalid_argument);
}

TEST_CASE("sieve agrees with factorization in random windows up to the cap") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<Natural> pick(1, kHardCap - 1024);
  for (int w = 0; w < 10; ++w) {
    const Natural lo = w == 0 ? 1 : pick(rng);
    const auto us = sigma_star_segment(lo, lo + 1000);
    const auto s = sigma_segment(lo, lo + 1000);
    for (Natural i = 0; i < 1000; ++i) {
      const auto f = arith::factorize(lo + i);
      REQUIRE(us[i] == arith::unitary_sigma(f));
      REQUIRE(s[i] == arith::divisor_sigma(f));
    }
  }
}

TEST_CASE("sieve agrees with brute force below 1e5") {
  const auto us = sigma_star_segment(1, 100'001);
  for (Natural n = 1; n <= 100'000; ++n) REQUIRE(us[n - 1] == brute_unitary_sigma(n));
}

TEST_CASE("image_equals matches full evaluation") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Natural> pick(1, 20'000'000'000ULL);
  for (int i = 0; i < 20'000; ++i) {
    const Natural m = pick(rng);
    for (auto kind : {DivisorKind::Unitary, DivisorKind::Ordinary}) {
      const Natural f = divisor_function(m, kind);
      REQUIRE(image_equals(m, f, kind));
      REQUIRE_FALSE(image_equals(m, f + 2, kind));
      REQUIRE_FALSE(image_equals(m, f - 1, kind));
      REQUIRE(image_equals(m, 2 * m, kind) == (f == 2 * m));
    }
  }
  CHECK(image_equals(1, 1, DivisorKind::Unitary));
  CHECK(image_equals(288, 330, DivisorKind::Unitary));
  CHECK(image_equals(8191, 8192, DivisorKind::Ordinary));
  CHECK_FALSE(image_equals(0, 1, DivisorKind::Unitary));
}

TEST_CASE("find_usp") {
  CHECK(ns(find_usp(300)) == std::vector<Natural>{2, 9, 165, 238});
  CHECK(find_usp(1).empty());
  CHECK(find_usp(0).empty());
  CHECK(ns(find_usp(300, Parity::Even)) == std::vector<Natural>{2, 238});

  const auto odd = find_usp(1'000'000, Parity::Odd);
  REQUIRE(ns(odd) == std::vector<Natural>{9, 165});
  for (const auto& h : odd) {
    REQUIRE(h.structure.has_value());
    CHECK(h.structure->ok());
  }
  // every hit below 10^7 passes the divisor-enumeration oracle
  for (const auto& h : find_usp(10'000'000)) {
    REQUIRE(brute_unitary_sigma(brute_unitary_sigma(h.n)) == 2 * h.n);
  }
}

TEST_CASE("find_unitary_perfect") {
  CHECK(ns(find_unitary_perfect(100)) == std::vector<Natural>{6, 60, 90});
  const auto hits = ns(find_unitary_perfect(100'000));
  CHECK(std::find(hits.begin(), hits.end(), 87360) != hits.end());
  CHECK(find_unitary_perfect(2'000'000, Parity::Odd).empty());
}

TEST_CASE("find_super_perfect and find_perfect") {
  CHECK(ns(find_super_perfect(100)) == std::vector<Natural>{2, 4, 16, 64});
  const auto hits = ns(find_super_perfect(5000));
  CHECK(std::find(hits.begin(), hits.end(), 4096) != hits.end());
  CHECK(find_super_perfect(2'000'000, Parity::Odd).empty());
  CHECK(ns(find_perfect(10'000)) == std::vector<Natural>{6, 28, 496, 8128});
}

TEST_CASE("hits are increasing and reproducible from n alone") {
  SearchConfig c = small_config();
  c.classes = {Classification::Perfect, Classification::USP, Classification::SuperPerfect,
               Classification::UnitaryPerfect, Classification::USP};
  const auto hits = run_search(c).hits;
  for (std::size_t i = 1; i < hits.size(); ++i) {
    const auto& a = hits[i - 1];
    const auto& b = hits[i];
    REQUIRE((a.n < b.n || (a.n == b.n && a.classification < b.classification)));
  }
  for (const auto& h : hits) {
    const auto again = verify_hit(h.n, h.classification);
    REQUIRE(again.first == h.first);
    REQUIRE(again.second == h.second);
    REQUIRE(classify(h.n, h.classification));
  }
  CHECK_THROWS_AS(verify_hit(10, Classification::USP), std::logic_error);
  CHECK_FALSE(classify(10, Classification::Perfect));
}

TEST_CASE("hit JSON lines") {
  const auto hits = find_usp(200);
  const auto j = nlohmann::json::parse(to_json_line(hits[2]));
  CHECK(j["n"] == 165);
  CHECK(j["class"] == "usp");
  CHECK(j["parity"] == "odd");
  CHECK(j["f_n"] == 288);
  CHECK(j["f_f_n"] == 330);
  CHECK(j["structure"]["ok"] == true);
  CHECK(j["structure"]["q"] == 3);
  CHECK(nlohmann::json::parse(to_json_line(hits[0]))["structure"].is_null());
}

TEST_CASE("classification and parity names round-trip") {
  for (auto c : {Classification::USP, Classification::UnitaryPerfect, Classification::SuperPerfect,
                 Classification::Perfect})
    CHECK(parse_classification(to_string(c)) == c);
  for (auto p : {Parity::All, Parity::Odd, Parity::Even}) CHECK(parse_parity(to_string(p)) == p);
  CHECK_FALSE(parse_classification("amicable").has_value());
  CHECK_FALSE(parse_parity("both").has_value());
}

TEST_CASE("worker count and segment size never change the output") {
  SearchConfig one = small_config();
  const std::string reference = render(run_search(one).hits);
  for (unsigned workers : {2u, 4u, 7u}) {
    SearchConfig c = one;
    c.workers = workers;
    CHECK(render(run_search(c).hits) == reference);
  }
  for (Natural seg : {Natural{1000}, Natural{1} << 20, Natural{1} << 22}) {
    SearchConfig c = one;
    c.segment_size = seg;
    c.workers = 3;
    CHECK(render(run_search(c).hits) == reference);
  }
}

TEST_CASE("1 vs 4 workers at 1e7") {
  SearchConfig c;
  c.limit = 10'000'000;
  c.segment_size = Natural{1} << 20;
  const auto a = render(run_search(c).hits);
  c.workers = 4;
  CHECK(render(run_search(c).hits) == a);
}

TEST_CASE("interrupt and resume at every tenth segment") {
  const std::string reference = render(run_search(small_config()).hits);
  TempFile file("resume");
  for (std::size_t stop : {std::size_t{1}, std::size_t{7}, std::size_t{8}, std::size_t{15}}) {
    std::filesystem::remove(file.path);
    SearchConfig c = small_config();
    c.workers = 3;
    c.checkpoint = file.path;
    c.stop_after_segments = stop;
    const auto partial = run_search(c);
    CHECK(partial.completed_segments == stop);
    CHECK_FALSE(partial.complete());

    c.resume = true;
    c.stop_after_segments.reset();
    const auto done = run_search(c);
    CHECK(done.complete());
    CHECK(done.resumed_segments == stop);
    CHECK(render(done.hits) == reference);
  }

  // resuming a finished run does no work and reports the same hits
  SearchConfig again = small_config();
  again.checkpoint = file.path;
  again.resume = true;
  const auto replay = run_search(again);
  CHECK(replay.resumed_segments == replay.total_segments);
  CHECK(render(replay.hits) == reference);
}

TEST_CASE("repeated interruptions") {
  const std::string reference = render(run_search(small_config()).hits);
  TempFile file("chain");
  SearchConfig c = small_config();
  c.checkpoint = file.path;
  c.resume = true;
  c.stop_after_segments = 3;
  SearchReport r = run_search(c);
  for (int guard = 0; guard < 20 && !r.complete(); ++guard) r = run_search(c);
  CHECK(r.complete());
  CHECK(render(r.hits) == reference);
}

TEST_CASE("checkpoint file format") {
  TempFile file("format");
  SearchConfig c = small_config();
  c.checkpoint = file.path;
  run_search(c);
  const std::string text = file.read();
  std::istringstream lines(text);
  std::string first, second, line, last;
  std::getline(lines, first);
  std::getline(lines, second);
  while (std::getline(lines, line)) last = line;
  CHECK(first == "uspsearch-v1 1000000 65536");
  CHECK(second == "scope usp all");
  CHECK(last.rfind("digest ", 0) == 0);
  CHECK(last.size() == 7 + 64);
  CHECK(text.find("\nseg 0 11\nhit 2 3 4 usp\nhit 9 10 18 usp\nhit 165 288 330 usp\nhit 238 432 476 usp\nhit 1640 ") !=
        std::string::npos);

  const auto parsed = parse_checkpoint(text);
  CHECK(parsed.limit == 1'000'000);
  CHECK(parsed.completed_segments == 16);
  CHECK(serialize(parsed) == text);
}

TEST_CASE("corrupted or mismatched checkpoints are refused") {
  TempFile file("corrupt");
  SearchConfig c = small_config();
  c.checkpoint = file.path;
  c.stop_after_segments = 4;
  run_search(c);
  const std::string good = file.read();

  std::string tampered = good;
  tampered.replace(tampered.find("hit 165 288"), 11, "hit 167 288");
  CHECK_THROWS_AS(parse_checkpoint(tampered), CheckpointError);
  CHECK_THROWS_AS(parse_checkpoint(good.substr(0, good.size() / 2)), CheckpointError);
  CHECK_THROWS_AS(parse_checkpoint(""), CheckpointError);

  c.resume = true;
  c.stop_after_segments.reset();
  file.write(tampered);
  CHECK_THROWS_AS(run_search(c), CheckpointError);
  CHECK(file.read() == tampered);  // refused state is left untouched

  file.write(good);
  SearchConfig other = c;
  other.limit = 2'000'000;
  CHECK_THROWS_AS(run_search(other), CheckpointError);
  other = c;
  other.parity = Parity::Odd;
  CHECK_THROWS_AS(run_search(other), CheckpointError);
  other = c;
  other.segment_size = Natural{1} << 15;
  CHECK_THROWS_AS(run_search(other), CheckpointError);

  // a well-formed checkpoint whose hit does not verify
  Checkpoint forged = parse_checkpoint(good);
  forged.hits[1].n = 11;
  forged.hits[1].first = 12;
  forged.hits[1].second = 22;
  file.write(serialize(forged));
  CHECK_THROWS_AS(run_search(c), CheckpointError);
}

TEST_CASE("resume without a checkpoint file starts from scratch") {
  TempFile file("fresh");
  SearchConfig c = small_config();
  c.checkpoint = file.path;
  c.resume = true;
  const auto r = run_search(c);
  CHECK(r.resumed_segments == 0);
  CHECK(r.complete());
  CHECK(std::filesystem::exists(file.path));
}

TEST_CASE("configuration validation") {
  SearchConfig c;
  c.limit = kHardCap + 1;
  CHECK_THROWS_AS(run_search(c), std::invalid_argument);
  c = small_config();
  c.segment_size = 0;
  CHECK_THROWS_AS(run_search(c), std::invalid_argument);
  c = small_config();
  c.workers = 0;
  CHECK_THROWS_AS(run_search(c), std::invalid_argument);
  c = small_config();
  c.classes.clear();
  CHECK_THROWS_AS(run_search(c), std::invalid_argument);
  c = small_config();
  c.resume = true;
  CHECK_THROWS_AS(run_search(c), std::invalid_argument);
}

TEST_CASE("unwritable checkpoint path is an I/O error") {
  SearchConfig c = small_config();
  c.checkpoint = "/nonexistent-dir/usp.ckpt";
  CHECK_THROWS_AS(run_search(c), std::runtime_error);
}
