// fibgcd: command-line surface over the library. Every command writes CSV
// (one header row) or JSON (one object per line for sequences, a single
// object for scalar commands) and produces byte-identical output for
// identical configuration.
//
// Exit status: 0 success, 1 I/O failure, 2 usage error, 3 overflow,
// 4 internal (factorization budget exhausted).

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibgcd/density.hpp"
#include "fibgcd/gcd_set.hpp"

namespace {

using fibgcd::u64;
using ordered_json = nlohmann::ordered_json;

enum class Format { kCsv, kJson };

struct CommonOptions {
  int jobs = 1;
  std::string format = "csv";
  u64 seed = fibgcd::FactorConfig{}.seed;
  std::string out;
};

int default_jobs() {
  if (const char* env = std::getenv("FIBGCD_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  return 1;
}

// One JSON value per cell keeps CSV and JSON output numerically identical:
// both formats print cells with nlohmann's serializer (shortest round-trip
// doubles, plain integers, true/false).
std::string cell_text(const ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

ordered_json bigint_json(const fibgcd::BigInt& v) {
  // Numbers that fit u64 stay JSON numbers; anything wider is emitted as a
  // decimal string to survive round-trips.
  if (v >= 0 && v <= fibgcd::BigInt(std::numeric_limits<u64>::max())) {
    return v.convert_to<u64>();
  }
  return v.str();
}

class Writer {
 public:
  Writer(std::ostream& os, Format format) : os_(os), format_(format) {}

  void row(const ordered_json& obj) {
    if (format_ == Format::kJson) {
      os_ << obj.dump() << '\n';
      return;
    }
    if (!header_written_) {
      bool first = true;
      for (auto it = obj.begin(); it != obj.end(); ++it) {
        os_ << (first ? "" : ",") << it.key();
        first = false;
      }
      os_ << '\n';
      header_written_ = true;
    }
    bool first = true;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      os_ << (first ? "" : ",") << cell_text(it.value());
      first = false;
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
  Format format_;
  bool header_written_ = false;
};

ordered_json report_json(const char* bound_key, const fibgcd::DensityReport& r) {
  ordered_json obj;
  obj[bound_key] = r.m;
  obj["x"] = r.x;
  obj["prime_count"] = r.prime_count;
  obj["hit_count"] = r.hit_count;
  obj["empirical"] = r.empirical;
  obj["exact_num"] = bigint_json(r.exact.num());
  obj["exact_den"] = bigint_json(r.exact.den());
  obj["abs_error"] = r.abs_error;
  return obj;
}

// A survey-sized SPF table makes factorize(n) and factorize(p +- 1) table
// lookups instead of rho runs.
fibgcd::SpfTable make_table(u64 limit) {
  return fibgcd::sieve_spf(std::max<u64>(limit, 2) + 2);
}

int run_command(const std::string& name, const CommonOptions& common, u64 n,
                u64 x, u64 m, u64 y, std::ostream& os) {
  const Format format = common.format == "json" ? Format::kJson : Format::kCsv;
  Writer writer(os, format);
  const fibgcd::FactorConfig cfg{common.seed, fibgcd::FactorConfig{}.rho_budget};

  if (name == "gcd-seq") {
    fibgcd::gcd_sequence(
        x,
        [&](const fibgcd::GcdSequenceRow& row) {
          writer.row(ordered_json{{"n", row.n}, {"g", row.g}});
        },
        common.jobs);
  } else if (name == "enumerate") {
    const fibgcd::SpfTable table = make_table(x);
    fibgcd::RankEvaluator ranks(&table, cfg);
    for (u64 v : fibgcd::enumerate_members(x, ranks, common.jobs)) {
      writer.row(ordered_json{{"n", v}});
    }
  } else if (name == "fixed-points") {
    for (u64 v : fibgcd::enumerate_fixed_points(x, common.jobs)) {
      writer.row(ordered_json{{"n", v}});
    }
  } else if (name == "member") {
    fibgcd::RankEvaluator ranks(nullptr, cfg);
    const fibgcd::MembershipRecord rec = fibgcd::is_member(n, ranks);
    writer.row(ordered_json{{"n", rec.n},
                            {"z", rec.z},
                            {"ell", rec.ell},
                            {"g_of_ell", rec.g_of_ell},
                            {"in_A", rec.in_a}});
  } else if (name == "rank") {
    fibgcd::RankEvaluator ranks(nullptr, cfg);
    const fibgcd::RankInfo info = ranks.rank_info(n);
    writer.row(ordered_json{{"n", info.n}, {"z", info.z}, {"ell", info.ell}});
  } else if (name == "zeta") {
    const fibgcd::Rational zeta = fibgcd::zeta_exact(m, cfg);
    writer.row(ordered_json{{"m", m},
                            {"num", bigint_json(zeta.num())},
                            {"den", bigint_json(zeta.den())},
                            {"value", zeta.to_double()}});
  } else if (name == "prime-density") {
    const fibgcd::SpfTable table = make_table(x);
    fibgcd::RankEvaluator ranks(&table, cfg);
    writer.row(report_json(
        "m", fibgcd::prime_rank_density(m, x, ranks, common.jobs)));
  } else if (name == "p1-density") {
    const fibgcd::SpfTable table = make_table(x);
    fibgcd::RankEvaluator ranks(&table, cfg);
    writer.row(report_json("y", fibgcd::p1_empirical(y, x, ranks, common.jobs)));
  } else if (name == "coprime-count") {
    writer.row(ordered_json{{"x", x},
                            {"count", fibgcd::count_coprime(x, common.jobs)}});
  }
  os.flush();
  return os.good() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arithmetic of g(n) = gcd(n, F_n): ranks of appearance, the "
               "image set of g, and prime density surveys"};
  app.require_subcommand(1);

  CommonOptions common;
  common.jobs = default_jobs();
  u64 n = 1, x = 1, m = 1, y = 3;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", common.jobs, "Worker threads (env FIBGCD_JOBS)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--seed", common.seed,
                    "Seed for the randomized factorizer (reproducibility)");
    cmd->add_option("--out", common.out, "Write to file instead of stdout");
  };

  auto* gcd_seq = app.add_subcommand("gcd-seq", "Rows (n, g(n)) for n = 1..limit");
  gcd_seq->add_option("--limit", x, "Upper bound")->required();
  add_common(gcd_seq);

  auto* enumerate =
      app.add_subcommand("enumerate", "Elements of A = image of g, up to limit");
  enumerate->add_option("--limit", x, "Upper bound")->required();
  add_common(enumerate);

  auto* fixed = app.add_subcommand(
      "fixed-points", "Fixed points of g (n | F_n), up to limit");
  fixed->add_option("--limit", x, "Upper bound")->required();
  add_common(fixed);

  auto* member =
      app.add_subcommand("member", "Membership record for one n (n = g(ell(n))?)");
  member->add_option("--n", n, "Value to test")->required();
  add_common(member);

  auto* rank = app.add_subcommand("rank", "Rank of appearance z(n) and ell(n)");
  rank->add_option("--n", n, "Value")->required();
  add_common(rank);

  auto* zeta = app.add_subcommand(
      "zeta", "Exact density of primes p with m | z(p), as a fraction");
  zeta->add_option("--m", m, "Divisor m")->required();
  add_common(zeta);

  auto* pdensity = app.add_subcommand(
      "prime-density", "Empirical vs exact density of {p <= x : m | z(p)}");
  pdensity->add_option("--m", m, "Divisor m")->required();
  pdensity->add_option("--x", x, "Prime bound")->required();
  add_common(pdensity);

  auto* p1density = app.add_subcommand(
      "p1-density",
      "Empirical vs limit density of {p : q ∤ z(p) for odd primes q <= y}");
  p1density->add_option("--y", y, "Odd-prime bound")->required();
  p1density->add_option("--x", x, "Prime bound")->required();
  add_common(p1density);

  auto* coprime = app.add_subcommand(
      "coprime-count", "#{n <= limit : gcd(n, F_n) = 1}");
  coprime->add_option("--limit", x, "Upper bound")->required();
  add_common(coprime);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();

  std::ofstream file;
  if (!common.out.empty()) {
    file.open(common.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << common.out << " for writing\n";
      return 1;
    }
  }
  std::ostream& os = common.out.empty() ? std::cout : file;

  try {
    return run_command(name, common, n, x, m, y, os);
  } catch (const fibgcd::OverflowError& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return 3;
  } catch (const fibgcd::FactorizationError& e) {
    std::cerr << "factorization: " << e.what() << '\n';
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
