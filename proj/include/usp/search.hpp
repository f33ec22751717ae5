#pragma once

// Segmented, parallel enumeration of perfect-number variants with resumable
// checkpoints.
//
// sigma* and sigma are sieved per segment from a least-prime-factor style
// pass over the base primes. The second application, f(f(n)), is evaluated
// on the fly by trial division with early exit: every prime power found in
// f(n) must contribute a divisor of 2n.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "usp/arith.hpp"
#include "usp/structure.hpp"

namespace usp::search {

inline constexpr Natural kDefaultLimit = 100'000'000;
inline constexpr Natural kHardCap = 10'000'000'000;
inline constexpr Natural kDefaultSegmentSize = Natural{1} << 22;

enum class Classification { USP, UnitaryPerfect, SuperPerfect, Perfect };
enum class Parity { All, Odd, Even };
enum class DivisorKind { Unitary, Ordinary };

std::string to_string(Classification c);
std::string to_string(Parity p);
std::optional<Classification> parse_classification(const std::string& s);
std::optional<Parity> parse_parity(const std::string& s);

/// sigma* for USP and unitary perfect, sigma for the other two.
DivisorKind divisor_kind(Classification c);

// ---------------------------------------------------------------------------
// Sieve

/// Reusable per-worker buffers for sieving one segment at a time.
class SegmentSieve {
 public:
  /// base_primes must contain every prime up to sqrt(hi) of any later segment.
  explicit SegmentSieve(std::span<const Natural> base_primes);

  void run(Natural lo, Natural hi, bool unitary, bool ordinary);

  std::span<const Natural> unitary() const { return {unitary_.data(), size_}; }
  std::span<const Natural> ordinary() const { return {ordinary_.data(), size_}; }

 private:
  std::span<const Natural> primes_;
  std::vector<Natural> rest_;
  std::vector<Natural> unitary_;
  std::vector<Natural> ordinary_;
  std::size_t size_ = 0;
};

/// sigma*(n) for n in [lo, hi); lo >= 1, hi - lo <= kHardCap.
std::vector<Natural> sigma_star_segment(Natural lo, Natural hi);
/// sigma(n) for n in [lo, hi).
std::vector<Natural> sigma_segment(Natural lo, Natural hi);

/// f(m) == target where f is sigma* or sigma, abandoning the factorization of
/// m as soon as a prime-power contribution fails to divide what is left.
bool image_equals(Natural m, Natural target, DivisorKind kind);

/// f(n) via factorization, independent of the sieve.
Natural divisor_function(Natural n, DivisorKind kind);

// ---------------------------------------------------------------------------
// Hits

struct SearchHit {
  Natural n = 0;
  Natural first = 0;   // f(n)
  Natural second = 0;  // f(f(n))
  Classification classification = Classification::USP;
  // odd USP hits only
  std::optional<structure::UspStructureVerdict> structure;

  bool odd() const { return n % 2 == 1; }
};

/// Recomputes a hit from n alone by factorization; throws std::logic_error if
/// n does not satisfy the classification.
SearchHit verify_hit(Natural n, Classification c);

/// Does n satisfy c? Recomputed by factorization.
bool classify(Natural n, Classification c);

std::string to_json_line(const SearchHit& hit);

// ---------------------------------------------------------------------------
// Checkpoints
//
//   uspsearch-v1 <limit> <segment_size>
//   scope <classes> <parity>
//   seg <index> <hit_count>
//   hit <n> <f(n)> <f(f(n))> <class>
//   ...
//   digest <sha256 hex of all preceding lines>

struct Checkpoint {
  Natural limit = 0;
  Natural segment_size = 0;
  std::string scope;
  std::size_t completed_segments = 0;
  std::vector<SearchHit> hits;
};

std::string serialize(const Checkpoint& c);

/// Throws CheckpointError on malformed input or digest mismatch.
Checkpoint parse_checkpoint(const std::string& text);

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes to path + ".tmp" and renames over path.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

// ---------------------------------------------------------------------------
// Driver

struct SearchConfig {
  Natural limit = kDefaultLimit;
  Natural segment_size = kDefaultSegmentSize;
  unsigned workers = 1;
  std::vector<Classification> classes{Classification::USP};
  Parity parity = Parity::All;
  std::optional<std::filesystem::path> checkpoint;
  bool resume = false;
  // stop after committing this many segments in this run (simulated interrupt)
  std::optional<std::size_t> stop_after_segments;
};

struct SearchReport {
  std::vector<SearchHit> hits;  // ascending by n, then classification
  std::size_t completed_segments = 0;
  std::size_t total_segments = 0;
  std::size_t resumed_segments = 0;
  bool complete() const { return completed_segments == total_segments; }
};

/// Throws std::invalid_argument on a bad config, CheckpointError on a
/// refused checkpoint and std::runtime_error on I/O failure.
SearchReport run_search(const SearchConfig& config);

std::string scope_string(const SearchConfig& config);

std::vector<SearchHit> find_usp(Natural limit, Parity parity = Parity::All, unsigned workers = 1);
std::vector<SearchHit> find_unitary_perfect(Natural limit, Parity parity = Parity::All,
                                            unsigned workers = 1);
std::vector<SearchHit> find_super_perfect(Natural limit, Parity parity = Parity::All,
                                          unsigned workers = 1);
std::vector<SearchHit> find_perfect(Natural limit, Parity parity = Parity::All,
                                    unsigned workers = 1);

}  // namespace usp::search
