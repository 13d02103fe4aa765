#include "lyapctl/app.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lyap/errors.hpp"
#include "lyap/hill.hpp"
#include "lyap/lyapunov_order.hpp"
#include "lyap/stein.hpp"
#include "lyapctl/problem_file.hpp"
#include "lyapctl/report.hpp"

namespace lyapctl {

using nlohmann::json;

namespace {

struct Options {
  std::string path;
  bool json = false;
  bool verbose = false;
  int precision = 12;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_rank, tol_psd, tol_eq;
  unsigned threads = 1;
  std::string order = "lyapunov";
  std::size_t oracle_trials = 1000;
  std::size_t trials = 1000;
  std::string map = "order";
  std::string selection;
  bool minimal = false;
};

void common_options(CLI::App* cmd, Options& o) {
  cmd->add_option("file", o.path, "Problem file (JSON)")->required();
  cmd->add_flag("--json", o.json, "Emit a single JSON object");
  cmd->add_flag("-v,--verbose", o.verbose, "Extra diagnostics on stderr");
  cmd->add_option("--precision", o.precision, "Significant digits in text output")
      ->check(CLI::Range(1, 17));
  cmd->add_option("--seed", o.seed, "Seed for randomized steps (default: file seed or 0)");
  cmd->add_option("--tol-rank", o.tol_rank, "Relative rank tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-psd", o.tol_psd, "Relative PSD tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-eq", o.tol_eq, "Relative equality tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "Oracle shards")->check(CLI::Range(1u, 256u));
  cmd->add_option("--order", o.order, "Order to decide")
      ->check(CLI::IsMember({"lyapunov", "stein"}));
}

std::vector<lyap::BlockIndex> parse_selection(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ';', ' ');
  std::istringstream in(s);
  std::vector<lyap::BlockIndex> out;
  std::string item;
  while (in >> item) {
    const auto comma = item.find(',');
    std::size_t used_i = 0, used_j = 0;
    long i = 0, j = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("");
      const std::string a = item.substr(0, comma), b = item.substr(comma + 1);
      i = std::stol(a, &used_i);
      j = std::stol(b, &used_j);
      if (used_i != a.size() || used_j != b.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InputError("--selection: expected 1-based pairs \"i,j\", got \"" + item + "\"");
    }
    if (i < 1 || j < 1) throw InputError("--selection: indices are 1-based, got \"" + item + "\"");
    out.push_back({i - 1, j - 1});
  }
  return out;
}

/// Coefficients of B, running the membership check for a raw matrix.
lyap::BicommElement resolve_b(const ProblemFile& pf, const lyap::JordanSpec& spec,
                              const Options& o, std::ostream& err, const TextFormat& fmt) {
  if (const auto* c = std::get_if<lyap::BicommElement>(&pf.B)) return *c;
  const lyap::Mat& B = std::get<lyap::Mat>(pf.B);
  const lyap::Membership m = lyap::check_bicomm_membership(spec, B, pf.tol);
  if (!m.member) {
    std::ostringstream os;
    os << o.path << ": /B/matrix: B is not in the bicommutant of A";
    if (m.witness)
      os << ": entry (" << m.witness->first + 1 << "," << m.witness->second + 1
         << ") of P^-1 B P deviates by " << fmt.scalar(m.deviation);
    throw InputError(os.str());
  }
  lyap::BicommElement b = lyap::extract_bicomm_coeffs(spec, B, pf.tol);
  if (o.verbose) {
    err << "extracted coefficients:\n";
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      err << "  lambda_" << j + 1 << ":";
      for (lyap::Complex t : b.coeffs[j]) err << ' ' << fmt.scalar(t);
      err << '\n';
    }
  }
  return b;
}

int verdict_exit(lyap::Verdict v) {
  switch (v) {
    case lyap::Verdict::Dominates:
      return kDominates;
    case lyap::Verdict::NotDominates:
      return kNotDominated;
    case lyap::Verdict::Marginal:
      break;
  }
  return kMarginal;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err)
      : o_(o), out_(out), err_(err), fmt_(o.precision) {}

  int check() {
    load();
    const lyap::DominationReport r =
        stein() ? lyap::stein_domination(stein_problem(), o_.oracle_trials, seed_, o_.threads)
                : lyap::check_domination(lyapunov_problem(), o_.oracle_trials, seed_, o_.threads);
    if (!r.methods_agree)
      err_ << "warning: Hill-Pick verdict and Choi verdict disagree\n";
    if (r.verdict == lyap::Verdict::Dominates && !r.oracle.consistent)
      err_ << "warning: the sampling oracle found a violation\n";
    if (o_.json) {
      json j = report_json(r, o_.order);
      j["command"] = "check";
      j["seed"] = seed_;
      out_ << j.dump() << '\n';
    } else {
      print_report(out_, r, o_.order, fmt_);
    }
    return verdict_exit(r.verdict);
  }

  int hill_pick() {
    load();
    lyap::HillPickMatrix hp;
    if (stein()) {
      hp = lyap::stein_domination(stein_problem(), 0, seed_).hill_pick;
    } else {
      const lyap::LyapunovProblem p = lyapunov_problem();
      hp = p.field() == lyap::Field::Complex ? lyap::hill_pick_matrix(p)
                                             : lyap::hill_pick_matrix_real(p);
    }
    if (o_.json) {
      json j = hill_pick_json(hp);
      j["command"] = "hill-pick";
      j["order"] = o_.order;
      out_ << j.dump() << '\n';
    } else {
      out_ << "order: " << o_.order << '\n';
      print_hill_pick(out_, hp, fmt_);
    }
    return kDominates;
  }

  int hill() {
    load();
    const lyap::StarLinearMap map = selected_map();
    HillSummary h;
    h.map_name = o_.map;
    if (o_.selection.empty() || o_.minimal) {
      if (o_.minimal && !o_.selection.empty())
        throw InputError("--minimal and --selection are mutually exclusive");
      h.rep = lyap::minimal_hill_from_blocks(map, pf_.tol);
    } else {
      h.rep = lyap::nonminimal_hill(map, parse_selection(o_.selection), pf_.tol);
    }
    h.rank_choi = lyap::rank_tol(lyap::choi(map), pf_.tol);
    h.rank_H = h.rep.r() == 0 ? 0 : lyap::rank_tol(h.rep.H, pf_.tol);
    if (o_.json) {
      json j = hill_json(h);
      j["command"] = "hill";
      out_ << j.dump() << '\n';
    } else {
      print_hill(out_, h, fmt_);
    }
    return kDominates;
  }

  int verify() {
    load();
    const lyap::OracleOutcome r =
        stein() ? lyap::stein_oracle(stein_problem(), o_.trials, seed_, o_.threads)
                : lyap::domination_oracle(lyapunov_problem(), o_.trials, seed_, o_.threads);
    if (o_.json) {
      json j = oracle_json(r);
      j["command"] = "verify";
      j["order"] = o_.order;
      j["seed"] = seed_;
      out_ << j.dump() << '\n';
    } else {
      out_ << "order: " << o_.order << '\n';
      print_oracle(out_, r, fmt_);
      if (r.violation) {
        out_ << "violating H:\n";
        fmt_.matrix(out_, *r.violation);
      }
    }
    return r.consistent ? kDominates : kNotDominated;
  }

 private:
  bool stein() const { return o_.order == "stein"; }

  void load() {
    pf_ = load_problem(o_.path);
    if (o_.tol_rank) pf_.tol.rank_rel = *o_.tol_rank;
    if (o_.tol_psd) pf_.tol.psd_rel = *o_.tol_psd;
    if (o_.tol_eq) pf_.tol.eq_rel = *o_.tol_eq;
    seed_ = o_.seed.value_or(pf_.seed.value_or(0));
    spec_.emplace(pf_.spec());
    b_ = resolve_b(pf_, *spec_, o_, err_, fmt_);
  }

  lyap::LyapunovProblem lyapunov_problem() const {
    try {
      return lyap::LyapunovProblem(*spec_, b_, pf_.tol);
    } catch (const lyap::PreconditionError& e) {
      throw InputError(o_.path + ": /eigenvalues: not Lyapunov regular: " + e.what());
    }
  }

  lyap::SteinProblem stein_problem() const {
    try {
      return lyap::SteinProblem(*spec_, b_, pf_.tol);
    } catch (const lyap::PreconditionError& e) {
      throw InputError(o_.path + ": /eigenvalues: not Stein regular: " + e.what());
    }
  }

  lyap::StarLinearMap selected_map() const {
    if (o_.map == "raw") {
      if (!pf_.map) throw InputError(o_.path + ": /map: missing (required by --map raw)");
      return *pf_.map;
    }
    if (o_.map == "lyapunov") return lyap::lyapunov_matricization(lyapunov_problem().A());
    if (o_.map == "stein") return lyap::stein_matricization(stein_problem().A());
    return stein() ? lyap::stein_order_map(stein_problem())
                   : lyap::lyapunov_order_map(lyapunov_problem());
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  TextFormat fmt_;
  ProblemFile pf_;
  std::optional<lyap::JordanSpec> spec_;
  lyap::BicommElement b_;
  std::uint64_t seed_ = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Decide Lyapunov and Stein domination for B in the bicommutant of A", "lyapctl"};
  app.require_subcommand(1);

  CLI::App* check = app.add_subcommand("check", "Decide domination and print the report");
  common_options(check, o);
  check->add_option("--oracle-trials", o.oracle_trials, "Sampling oracle trials (0 to skip)");

  CLI::App* hill_pick = app.add_subcommand("hill-pick", "Print the Hill-Pick matrix and its selection");
  common_options(hill_pick, o);

  CLI::App* hill = app.add_subcommand("hill", "Print a Hill representation of a map");
  common_options(hill, o);
  hill->add_option("--map", o.map, "Map to represent")
      ->check(CLI::IsMember({"lyapunov", "stein", "order", "raw"}));
  hill->add_option("--selection", o.selection, "1-based blocks \"i,j\" separated by ';' or spaces");
  hill->add_flag("--minimal", o.minimal, "Greedy minimal representation (default)");

  CLI::App* verify = app.add_subcommand("verify", "Run only the sampling oracle");
  common_options(verify, o);
  verify->add_option("--trials", o.trials, "Sampling oracle trials");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInputError;
  }

  Runner runner(o, out, err);
  try {
    if (check->parsed()) return runner.check();
    if (hill_pick->parsed()) return runner.hill_pick();
    if (hill->parsed()) return runner.hill();
    return runner.verify();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const lyap::NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const lyap::Error& e) {
    err << "error: " << o.path << ": " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace lyapctl
