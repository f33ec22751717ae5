#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "usp/acceptance.hpp"
#include "usp/arith.hpp"
#include "usp/bounds.hpp"
#include "usp/search.hpp"
#include "usp/structure.hpp"

namespace usp::cli {

namespace {

using json = nlohmann::ordered_json;

std::string list(const std::vector<Natural>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

std::vector<Natural> all_divisors(const arith::Factorization& f) {
  std::vector<Natural> ds{1};
  for (const auto& [p, e] : f) {
    const std::size_t count = ds.size();
    Natural pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

// Each command returns an exit code; the shared flag lives here.
struct Context {
  bool json = false;
  std::ostream& out;
  std::ostream& err;
};

int cmd_sigma(Context& c, Natural n) {
  const auto f = arith::factorize(n);
  const auto unitary = arith::unitary_divisors(f);
  const auto divisors = all_divisors(f);
  if (c.json) {
    json j;
    j["n"] = n;
    j["factorization"] = f.to_string();
    j["sigma_star"] = arith::unitary_sigma(f);
    j["sigma"] = arith::divisor_sigma(f);
    j["unitary_divisors"] = unitary;
    j["divisors"] = divisors;
    c.out << j.dump() << '\n';
  } else {
    c.out << fmt::format("{:<10}{}\n", "n", n) << fmt::format("{:<10}{}\n", "factors", f.to_string())
          << fmt::format("{:<10}{}\n", "sigma*", arith::unitary_sigma(f))
          << fmt::format("{:<10}{}\n", "sigma", arith::divisor_sigma(f))
          << fmt::format("{:<10}{}\n", "unitary", list(unitary))
          << fmt::format("{:<10}{}\n", "divisors", list(divisors));
  }
  return kOk;
}

int cmd_factor(Context& c, Natural n) {
  const auto f = arith::factorize(n);
  if (c.json) {
    json j;
    j["n"] = n;
    auto factors = json::array();
    for (const auto& [p, e] : f) factors.push_back({{"p", p}, {"e", e}});
    j["factors"] = std::move(factors);
    c.out << j.dump() << '\n';
  } else {
    c.out << n << " = " << f.to_string() << '\n';
  }
  return kOk;
}

int cmd_decompose(Context& c, Natural m) {
  const auto d = structure::decompose_2aqb(m);
  if (c.json) {
    json j;
    j["m"] = m;
    j["decomposable"] = d.has_value();
    if (d) {
      j["a"] = d->a;
      j["q"] = d->q ? json(*d->q) : json(nullptr);
      j["b"] = d->b;
    }
    c.out << j.dump() << '\n';
  } else if (d) {
    c.out << m << " = 2^" << d->a;
    if (d->q) c.out << " * " << *d->q << '^' << d->b;
    c.out << '\n';
  } else {
    c.out << m << " is not of the form 2^a * q^b\n";
  }
  return kOk;
}

int cmd_zsigmondy(Context& c, Natural a, Natural b, unsigned n) {
  const auto r = structure::zsigmondy(a, b, n);
  const auto* p = std::get_if<structure::PrimitivePrime>(&r);
  if (c.json) {
    json j;
    j["a"] = a;
    j["b"] = b;
    j["n"] = n;
    j["result"] = structure::to_string(r);
    j["prime"] = p ? json(p->prime) : json(nullptr);
    c.out << j.dump() << '\n';
  } else {
    c.out << a << '^' << n << " - " << b << '^' << n << ": " << structure::to_string(r) << '\n';
  }
  return kOk;
}

std::string witness_text(const structure::Witness& w) {
  std::string out;
  for (const auto& [k, v] : w) out += (out.empty() ? "" : " ") + k + "=" + v;
  return out;
}

int cmd_verify_lemma(Context& c, const std::string& id, const structure::LemmaRange& range) {
  const auto reports = structure::verify_lemma(id, range);
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.holds();
    if (c.json) {
      c.out << structure::to_json_line(r) << '\n';
      continue;
    }
    c.out << fmt::format("lemma {:<5} {:<20} checked {:>8}  applicable {:>8}  counterexamples {}  ({} ms)\n",
                         r.lemma_id, r.range, r.checked, r.applicable, r.counterexamples.size(),
                         r.elapsed.count());
    for (const auto& w : r.solutions) c.out << "  solution " << witness_text(w) << '\n';
    for (const auto& w : r.counterexamples) c.out << "  COUNTEREXAMPLE " << witness_text(w) << '\n';
  }
  return ok ? kOk : kMathFailure;
}

int cmd_bounds(Context& c, const std::string& id) {
  std::vector<bounds::InequalityRecord> records;
  if (id.empty()) {
    for (const auto& i : bounds::inequality_ids()) records.push_back(bounds::evaluate_inequality(i));
    records.push_back(bounds::constant_record());
  } else if (id == "C") {
    records.push_back(bounds::constant_record());
  } else {
    records.push_back(bounds::evaluate_inequality(id));
  }
  bool ok = true;
  if (!c.json) {
    c.out << fmt::format("{:<8} {:>10} {:>10} {:>14} {:>14}  {}\n", "id", "printed", "estimate",
                         "lower", "upper", "verdict");
  }
  for (const auto& r : records) {
    ok = ok && r.verdict != bounds::Verdict::NotBelow2;
    if (c.json) {
      c.out << bounds::to_json_line(r) << '\n';
      continue;
    }
    c.out << fmt::format("{:<8} {:>10} {:>10.6f} {:>14} {:>14}  {}\n", r.id, r.paper_value,
                         r.computed.estimate,
                         bounds::decimal(r.computed.lower, 10, bounds::Rounding::Down),
                         bounds::decimal(r.computed.upper, 10, bounds::Rounding::Up),
                         bounds::to_string(r.verdict));
    for (const auto& a : r.alternates) {
      c.out << fmt::format("  {:<22} {:>10.6f} {:>14}\n", a.label, a.certificate.estimate,
                           bounds::decimal(a.certificate.upper, 10, bounds::Rounding::Up));
    }
  }
  return ok ? kOk : kMathFailure;
}

int cmd_qscan(Context& c, Natural q_max, unsigned c_cutoff) {
  const auto scan = bounds::q_bound_scan(q_max, c_cutoff);
  if (c.json) {
    for (const auto& e : scan.entries) c.out << bounds::to_json_line(e, scan) << '\n';
    return kOk;
  }
  c.out << "threshold 16/(9C) >= " << bounds::decimal(scan.threshold, 10, bounds::Rounding::Down)
        << " (C cutoff " << scan.c_cutoff << ")\n";
  c.out << fmt::format("{:>5} {:>3} {:>12}  {}\n", "q", "f2", "lhs", "survives");
  for (const auto& e : scan.entries) {
    c.out << fmt::format("{:>5} {:>3} {:>12.8f}  {}\n", e.q, e.f2, e.lhs_estimate,
                         e.satisfies ? "yes" : "no");
  }
  c.out << "f2 = 1: {" << list(scan.satisfying(1)) << "}\n";
  c.out << "f2 >= 2: {" << list(scan.satisfying(2)) << "}\n";
  return kOk;
}

int cmd_case13(Context& c) {
  const auto v = bounds::case_13_elimination();
  for (const auto& s : v.steps) {
    if (c.json) {
      json j;
      j["claim"] = s.claim;
      j["verified"] = s.verified;
      j["evidence"] = s.evidence;
      c.out << j.dump() << '\n';
    } else {
      c.out << (s.verified ? "[ok]   " : "[FAIL] ") << s.claim << "  (" << s.evidence << ")\n";
    }
  }
  return v.ok() ? kOk : kMathFailure;
}

struct SearchArgs {
  std::string classification;
  Natural limit = search::kDefaultLimit;
  std::string parity = "all";
  unsigned workers = 1;
  Natural segment_size = search::kDefaultSegmentSize;
  std::string checkpoint;
  bool resume = false;
  std::size_t stop_after = 0;
};

int cmd_search(Context& c, const SearchArgs& a) {
  search::SearchConfig config;
  const auto cls = search::parse_classification(a.classification);
  const auto parity = search::parse_parity(a.parity);
  if (!cls) throw std::invalid_argument("unknown class '" + a.classification + "'");
  if (!parity) throw std::invalid_argument("unknown parity '" + a.parity + "'");
  config.classes = {*cls};
  config.parity = *parity;
  config.limit = a.limit;
  config.workers = a.workers;
  config.segment_size = a.segment_size;
  config.resume = a.resume;
  if (!a.checkpoint.empty()) config.checkpoint = a.checkpoint;
  if (a.stop_after > 0) config.stop_after_segments = a.stop_after;

  const std::string echo = fmt::format(
      "# search {} --limit {} --parity {} --workers {} --segment-size {}{}{}", a.classification,
      a.limit, a.parity, a.workers, a.segment_size,
      a.checkpoint.empty() ? "" : " --checkpoint " + a.checkpoint, a.resume ? " --resume" : "");
  (c.json ? c.err : c.out) << echo << '\n';

  const auto report = search::run_search(config);
  bool ok = true;
  for (const auto& h : report.hits) {
    if (h.structure && !h.structure->ok()) ok = false;
    if (c.json) {
      c.out << search::to_json_line(h) << '\n';
    } else {
      c.out << fmt::format("{:>12} {:>14} {:>14}  {}{}\n", h.n, h.first, h.second,
                           search::to_string(h.classification),
                           h.structure ? (h.structure->ok() ? "  structure ok" : "  STRUCTURE FAILS")
                                       : "");
    }
  }
  if (!report.complete()) {
    c.err << "stopped after " << report.completed_segments << "/" << report.total_segments
          << " segments; rerun with --resume to continue\n";
  } else if (!c.json) {
    c.out << "# " << report.hits.size() << " hit(s), " << report.total_segments << " segment(s), "
          << report.resumed_segments << " restored from checkpoint\n";
  }
  return ok ? kOk : kMathFailure;
}

int cmd_report(Context& c, bool quick, unsigned workers) {
  acceptance::Options options;
  options.workers = workers;
  if (quick) options.headline_limit = 1'000'000;
  bool ok = true;
  for (const auto& criterion : acceptance::criteria(options)) {
    const auto outcome = criterion.run();
    ok = ok && outcome.passed;
    if (c.json) {
      json j;
      j["criterion"] = criterion.number;
      j["title"] = criterion.title;
      j["passed"] = outcome.passed;
      j["detail"] = outcome.detail;
      c.out << j.dump() << '\n';
    } else {
      c.out << fmt::format("{} {:>2} {}: {}\n", outcome.passed ? "PASS" : "FAIL", criterion.number,
                           criterion.title, outcome.detail);
    }
    c.out.flush();
  }
  return ok ? kOk : kMathFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unitary super perfect number toolkit", "usp"};
  app.require_subcommand(1);
  app.fallthrough();
  Context c{false, out, err};
  app.add_flag("--json", c.json, "JSON-lines output");

  int code = kOk;
  std::function<int()> action;

  Natural n = 0, a = 0, b = 0;
  unsigned exponent = 0;

  auto* sigma = app.add_subcommand("sigma", "sigma*, sigma and divisor lists of n");
  sigma->add_option("n", n)->required();
  sigma->callback([&] { action = [&] { return cmd_sigma(c, n); }; });

  auto* factor = app.add_subcommand("factor", "prime factorization of n");
  factor->add_option("n", n)->required()->check(CLI::PositiveNumber);
  factor->callback([&] { action = [&] { return cmd_factor(c, n); }; });

  auto* decompose = app.add_subcommand("decompose", "write m as 2^a * q^b");
  decompose->add_option("m", n)->required()->check(CLI::PositiveNumber);
  decompose->callback([&] { action = [&] { return cmd_decompose(c, n); }; });

  auto* zsig = app.add_subcommand("zsigmondy", "least primitive prime divisor of a^n - b^n");
  zsig->add_option("a", a)->required();
  zsig->add_option("b", b)->required();
  zsig->add_option("n", exponent)->required();
  zsig->callback([&] { action = [&] { return cmd_zsigmondy(c, a, b, exponent); }; });

  std::string lemma_id;
  structure::LemmaRange range;
  auto* lemma = app.add_subcommand("verify-lemma", "exhaustive scan of a structural lemma");
  lemma->add_option("id", lemma_id, "2.2 2.3 2.4 2.5 2.6 2.7 5.1")
      ->required()
      ->check(CLI::IsMember(structure::lemma_ids()));
  lemma->add_option("--pmax", range.p_max);
  lemma->add_option("--emax", range.e_max);
  lemma->add_option("--xmax", range.x_max);
  lemma->add_option("--amax", range.a_max);
  lemma->add_option("--qmax", range.q_max);
  lemma->add_option("--bmax", range.b_max);
  lemma->add_option("--q", range.qs, "primes for scan 5.1");
  lemma->callback([&] { action = [&] { return cmd_verify_lemma(c, lemma_id, range); }; });

  std::string bound_id;
  auto ids = bounds::inequality_ids();
  ids.push_back("C");
  auto* bnds = app.add_subcommand("bounds", "certified inequality records");
  bnds->add_option("--id", bound_id)->check(CLI::IsMember(ids));
  bnds->callback([&] { action = [&] { return cmd_bounds(c, bound_id); }; });

  Natural q_max = 100;
  unsigned c_cutoff = 2;
  auto* qscan = app.add_subcommand("qscan", "which q survive the product bound");
  qscan->add_option("--qmax", q_max)->check(CLI::Range(Natural{5}, Natural{1'000'000}));
  qscan->add_option("--c-cutoff", c_cutoff)->check(CLI::Range(2u, bounds::kMaxMersenneCutoff));
  qscan->callback([&] { action = [&] { return cmd_qscan(c, q_max, c_cutoff); }; });

  auto* case13 = app.add_subcommand("case13", "the q = 13 elimination chain");
  case13->callback([&] { action = [&] { return cmd_case13(c); }; });

  SearchArgs sa;
  auto* srch = app.add_subcommand("search", "segmented search for a classification");
  srch->add_option("class", sa.classification, "usp unitary-perfect super-perfect perfect")
      ->required()
      ->check(CLI::IsMember({"usp", "unitary-perfect", "super-perfect", "perfect"}));
  srch->add_option("--limit", sa.limit)->check(CLI::Range(Natural{0}, search::kHardCap));
  srch->add_option("--parity", sa.parity)->check(CLI::IsMember({"all", "odd", "even"}));
  srch->add_option("--workers", sa.workers)->check(CLI::Range(1u, 256u));
  srch->add_option("--segment-size", sa.segment_size)->check(CLI::Range(Natural{1}, Natural{1} << 28));
  srch->add_option("--checkpoint", sa.checkpoint);
  srch->add_flag("--resume", sa.resume);
  srch->add_option("--stop-after", sa.stop_after, "stop after this many segments");
  srch->callback([&] { action = [&] { return cmd_search(c, sa); }; });

  bool quick = false;
  unsigned report_workers = 4;
  auto* report = app.add_subcommand("report", "run every acceptance check");
  report->add_flag("--quick", quick, "headline search at 10^6 instead of 10^8");
  report->add_option("--workers", report_workers)->check(CLI::Range(1u, 256u));
  report->callback([&] { action = [&] { return cmd_report(c, quick, report_workers); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? kOk : kUsage;
  }

  try {
    code = action();
  } catch (const std::logic_error& e) {
    // invalid_argument and domain_error are usage problems; other logic
    // errors mean a verification failed
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e) ||
        dynamic_cast<const std::out_of_range*>(&e)) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
    err << "verification failed: " << e.what() << '\n';
    return kMathFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return code;
}

}  // namespace usp::cli
