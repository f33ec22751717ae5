#include <stdexcept>

#include "usp/search.hpp"

namespace usp::search {

SegmentSieve::SegmentSieve(std::span<const Natural> base_primes) : primes_(base_primes) {}

void SegmentSieve::run(Natural lo, Natural hi, bool unitary, bool ordinary) {
  if (lo == 0 || hi < lo) throw std::invalid_argument("sieve segment must satisfy 1 <= lo <= hi");
  size_ = static_cast<std::size_t>(hi - lo);
  if (rest_.size() < size_) {
    rest_.resize(size_);
    unitary_.resize(size_);
    ordinary_.resize(size_);
  }
  for (std::size_t i = 0; i < size_; ++i) {
    rest_[i] = lo + i;
    unitary_[i] = 1;
    ordinary_[i] = 1;
  }

  for (Natural p : primes_) {
    if (p * p >= hi) break;
    Natural first = (lo + p - 1) / p * p;
    for (Natural j = first; j < hi; j += p) {
      std::size_t i = static_cast<std::size_t>(j - lo);
      Natural r = rest_[i] / p;
      Natural pe = p;
      while (r % p == 0) {
        r /= p;
        pe *= p;
      }
      rest_[i] = r;
      // pe <= n < 2^34, so pe * p cannot overflow
      if (unitary) unitary_[i] *= pe + 1;
      if (ordinary) ordinary_[i] *= (pe * p - 1) / (p - 1);
    }
  }

  // what survives has no prime factor <= sqrt(n), hence is 1 or prime
  for (std::size_t i = 0; i < size_; ++i) {
    Natural r = rest_[i];
    if (r > 1) {
      unitary_[i] *= r + 1;
      ordinary_[i] *= r + 1;
    }
  }
}

namespace {

std::vector<Natural> segment_values(Natural lo, Natural hi, bool unitary) {
  if (lo == 0 || hi < lo) throw std::invalid_argument("segment must satisfy 1 <= lo <= hi");
  if (hi - 1 > kHardCap) throw std::invalid_argument("segment exceeds the search cap");
  Natural root = 1;
  while ((root + 1) * (root + 1) < hi) ++root;
  auto primes = arith::primes_below(root + 1);
  SegmentSieve sieve(primes);
  sieve.run(lo, hi, unitary, !unitary);
  auto values = unitary ? sieve.unitary() : sieve.ordinary();
  return {values.begin(), values.end()};
}

}  // namespace

std::vector<Natural> sigma_star_segment(Natural lo, Natural hi) {
  return segment_values(lo, hi, true);
}

std::vector<Natural> sigma_segment(Natural lo, Natural hi) { return segment_values(lo, hi, false); }

}  // namespace usp::search
