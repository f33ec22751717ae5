#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "usp/search.hpp"

namespace usp::search {

namespace {

struct Plan {
  SearchConfig config;
  std::size_t total_segments = 0;
  bool unitary = false;
  bool ordinary = false;
};

Plan make_plan(const SearchConfig& config) {
  if (config.limit > kHardCap) {
    throw std::invalid_argument("limit exceeds the hard cap of " + std::to_string(kHardCap));
  }
  if (config.segment_size == 0 || config.segment_size > (Natural{1} << 28)) {
    throw std::invalid_argument("segment size must lie in [1, 2^28]");
  }
  if (config.workers == 0 || config.workers > 256) {
    throw std::invalid_argument("worker count must lie in [1, 256]");
  }
  if (config.classes.empty()) throw std::invalid_argument("no classification selected");
  if (config.resume && !config.checkpoint) {
    throw std::invalid_argument("resume requires a checkpoint path");
  }

  Plan plan{config};
  auto& classes = plan.config.classes;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (auto c : classes) {
    (divisor_kind(c) == DivisorKind::Unitary ? plan.unitary : plan.ordinary) = true;
  }
  plan.total_segments =
      static_cast<std::size_t>((config.limit + config.segment_size - 1) / config.segment_size);
  return plan;
}

bool wanted(Natural n, Parity parity) {
  switch (parity) {
    case Parity::All: return true;
    case Parity::Odd: return n % 2 == 1;
    case Parity::Even: return n % 2 == 0;
  }
  return false;
}

// Fast path: candidate n values with their classification, ascending.
std::vector<SearchHit> scan_segment(SegmentSieve& sieve, std::size_t index, const Plan& plan) {
  const Natural lo = 1 + index * plan.config.segment_size;
  const Natural hi = std::min(lo + plan.config.segment_size, plan.config.limit + 1);
  sieve.run(lo, hi, plan.unitary, plan.ordinary);
  const auto us = sieve.unitary();
  const auto s = sieve.ordinary();

  std::vector<SearchHit> found;
  for (Natural n = lo; n < hi; ++n) {
    if (!wanted(n, plan.config.parity)) continue;
    const std::size_t i = static_cast<std::size_t>(n - lo);
    const Natural target = 2 * n;
    for (auto c : plan.config.classes) {
      bool hit = false;
      switch (c) {
        case Classification::USP:
          hit = us[i] <= target && image_equals(us[i], target, DivisorKind::Unitary);
          break;
        case Classification::UnitaryPerfect: hit = us[i] == target; break;
        case Classification::SuperPerfect:
          hit = s[i] <= target && image_equals(s[i], target, DivisorKind::Ordinary);
          break;
        case Classification::Perfect: hit = s[i] == target; break;
      }
      if (hit) {
        SearchHit h;
        h.n = n;
        h.classification = c;
        found.push_back(h);
      }
    }
  }
  return found;
}

Natural isqrt(Natural n) {
  Natural r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Restores committed hits from a checkpoint, re-deriving every field.
std::vector<SearchHit> restore(const Checkpoint& cp, const Plan& plan) {
  if (cp.limit != plan.config.limit || cp.segment_size != plan.config.segment_size ||
      cp.scope != scope_string(plan.config)) {
    throw CheckpointError("checkpoint was written for a different search configuration");
  }
  if (cp.completed_segments > plan.total_segments) {
    throw CheckpointError("checkpoint claims more segments than the search has");
  }
  std::vector<SearchHit> hits;
  for (const auto& stored : cp.hits) {
    SearchHit h;
    try {
      h = verify_hit(stored.n, stored.classification);
    } catch (const std::logic_error&) {
      throw CheckpointError("checkpoint hit " + std::to_string(stored.n) + " does not verify");
    }
    if (h.first != stored.first || h.second != stored.second) {
      throw CheckpointError("checkpoint hit " + std::to_string(stored.n) + " has wrong values");
    }
    hits.push_back(std::move(h));
  }
  return hits;
}

}  // namespace

std::string scope_string(const SearchConfig& config) {
  auto classes = config.classes;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::string out;
  for (auto c : classes) {
    if (!out.empty()) out += ',';
    out += to_string(c);
  }
  return out + ' ' + to_string(config.parity);
}

SearchReport run_search(const SearchConfig& config) {
  const Plan plan = make_plan(config);
  SearchReport report;
  report.total_segments = plan.total_segments;

  if (config.resume && std::filesystem::exists(*config.checkpoint)) {
    const Checkpoint cp = parse_checkpoint(read_file(*config.checkpoint));
    report.hits = restore(cp, plan);
    report.completed_segments = report.resumed_segments = cp.completed_segments;
  }

  auto save = [&] {
    if (!config.checkpoint) return;
    Checkpoint cp;
    cp.limit = config.limit;
    cp.segment_size = config.segment_size;
    cp.scope = scope_string(plan.config);
    cp.completed_segments = report.completed_segments;
    cp.hits = report.hits;
    write_atomically(*config.checkpoint, serialize(cp));
  };

  if (report.completed_segments == plan.total_segments) {
    save();
    return report;
  }

  const auto base_primes = arith::primes_below(isqrt(config.limit) + 2);

  std::atomic<std::size_t> next{report.completed_segments};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::condition_variable ready;
  std::map<std::size_t, std::vector<SearchHit>> finished;
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      SegmentSieve sieve(base_primes);
      while (!stop.load()) {
        const std::size_t index = next.fetch_add(1);
        if (index >= plan.total_segments) break;
        auto found = scan_segment(sieve, index, plan);
        std::lock_guard lock(mu);
        finished.emplace(index, std::move(found));
        ready.notify_one();
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      stop = true;
      ready.notify_one();
    }
  };

  const std::size_t remaining = plan.total_segments - report.completed_segments;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(config.workers, remaining));
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);

  std::size_t committed_this_run = 0;
  try {
    while (report.completed_segments < plan.total_segments) {
      std::vector<SearchHit> found;
      {
        std::unique_lock lock(mu);
        ready.wait(lock, [&] { return failure || finished.count(report.completed_segments); });
        if (failure) break;
        auto node = finished.extract(report.completed_segments);
        found = std::move(node.mapped());
      }
      // merge-side recomputation from n alone
      for (const auto& candidate : found) {
        report.hits.push_back(verify_hit(candidate.n, candidate.classification));
      }
      ++report.completed_segments;
      ++committed_this_run;
      save();
      if (config.stop_after_segments && committed_this_run >= *config.stop_after_segments) break;
    }
  } catch (...) {
    stop = true;
    throw;
  }
  stop = true;
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return report;
}

namespace {

std::vector<SearchHit> find(Classification c, Natural limit, Parity parity, unsigned workers) {
  SearchConfig config;
  config.limit = limit;
  config.classes = {c};
  config.parity = parity;
  config.workers = workers;
  return run_search(config).hits;
}

}  // namespace

std::vector<SearchHit> find_usp(Natural limit, Parity parity, unsigned workers) {
  return find(Classification::USP, limit, parity, workers);
}

std::vector<SearchHit> find_unitary_perfect(Natural limit, Parity parity, unsigned workers) {
  return find(Classification::UnitaryPerfect, limit, parity, workers);
}

std::vector<SearchHit> find_super_perfect(Natural limit, Parity parity, unsigned workers) {
  return find(Classification::SuperPerfect, limit, parity, workers);
}

std::vector<SearchHit> find_perfect(Natural limit, Parity parity, unsigned workers) {
  return find(Classification::Perfect, limit, parity, workers);
}

}  // namespace usp::search
