#include "lyapctl/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "lyap/linalg.hpp"
#include "lyapctl/problem_file.hpp"

namespace lyapctl {

using nlohmann::json;
using lyap::Complex;
using lyap::Index;
using lyap::Mat;

std::string TextFormat::scalar(double x) const {
  if (x == 0.0) x = 0.0;  // no "-0"
  std::ostringstream os;
  os << std::setprecision(precision_) << x;
  return os.str();
}

std::string TextFormat::scalar(Complex z) const {
  if (z.imag() == 0.0) return scalar(z.real());
  std::ostringstream os;
  os << scalar(z.real()) << (z.imag() < 0 ? "-" : "+") << scalar(std::abs(z.imag())) << "i";
  return os.str();
}

void TextFormat::matrix(std::ostream& os, const Mat& m, const std::string& indent) const {
  std::vector<std::string> cells;
  std::size_t width = 0;
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      cells.push_back(scalar(m(r, c)));
      width = std::max(width, cells.back().size());
    }
  for (Index r = 0; r < m.rows(); ++r) {
    os << indent;
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) os << "  ";
      os << std::setw(static_cast<int>(width)) << cells[static_cast<std::size_t>(r * m.cols() + c)];
    }
    os << '\n';
  }
}

std::string selection_text(const std::vector<lyap::BlockIndex>& sel) {
  std::ostringstream os;
  for (std::size_t k = 0; k < sel.size(); ++k)
    os << (k ? " " : "") << '(' << sel[k].i + 1 << ',' << sel[k].j + 1 << ')';
  return os.str();
}

json selection_json(const std::vector<lyap::BlockIndex>& sel) {
  json out = json::array();
  for (const auto& b : sel) out.push_back(json::array({b.i + 1, b.j + 1}));
  return out;
}

std::vector<double> sorted_eigenvalues(const Mat& hermitian) {
  if (hermitian.rows() == 0) return {};
  std::vector<double> ev = lyap::hermitian_eigenvalues(hermitian);
  std::sort(ev.begin(), ev.end());
  return ev;
}

void print_oracle(std::ostream& os, const lyap::OracleOutcome& o, const TextFormat& fmt) {
  os << "oracle: ";
  if (o.trials == 0)
    os << "skipped\n";
  else if (o.consistent)
    os << "consistent over " << o.trials << " trials\n";
  else
    os << "violation at trial " << *o.violation_trial << " (min eigenvalue "
       << fmt.scalar(o.violation_min_eig) << ")\n";
}

json oracle_json(const lyap::OracleOutcome& o) {
  json j{{"trials", o.trials}, {"consistent", o.consistent}};
  j["violation_trial"] = o.violation_trial ? json(*o.violation_trial) : json(nullptr);
  j["violation_min_eig"] = o.violation ? json(o.violation_min_eig) : json(nullptr);
  j["violation"] = o.violation ? matrix_to_json(*o.violation) : json(nullptr);
  return j;
}

void print_hill_pick(std::ostream& os, const lyap::HillPickMatrix& hp, const TextFormat& fmt) {
  os << "hill_pick (" << hp.w << " x " << hp.w << "):\n";
  fmt.matrix(os, hp.H);
  os << "selection: " << selection_text(hp.selection) << '\n';
  os << "block_partition:";
  for (Index p : hp.block_partition) os << ' ' << p + 1;
  os << '\n';
  os << "eigenvalues:";
  for (double e : sorted_eigenvalues(hp.H)) os << ' ' << fmt.scalar(e);
  os << '\n';
}

json hill_pick_json(const lyap::HillPickMatrix& hp) {
  json partition = json::array();
  for (Index p : hp.block_partition) partition.push_back(p + 1);
  return json{{"w", hp.w},
              {"matrix", matrix_to_json(hp.H)},
              {"selection", selection_json(hp.selection)},
              {"block_partition", partition},
              {"eigenvalues", sorted_eigenvalues(hp.H)}};
}

void print_report(std::ostream& os, const lyap::DominationReport& r, const std::string& order,
                  const TextFormat& fmt) {
  os << "verdict: " << lyap::to_string(r.verdict) << '\n';
  os << "order: " << order << '\n';
  os << "hill_pick_min_eig: " << fmt.scalar(r.hill_pick_min_eig) << '\n';
  os << "hill_pick_band: " << fmt.scalar(r.hill_pick_band) << '\n';
  os << "choi_verdict: " << lyap::to_string(r.choi_verdict) << '\n';
  os << "choi_min_eig: " << fmt.scalar(r.choi_min_eig) << '\n';
  os << "choi_band: " << fmt.scalar(r.choi_band) << '\n';
  os << "methods_agree: " << (r.methods_agree ? "true" : "false") << '\n';
  print_oracle(os, r.oracle, fmt);
  print_hill_pick(os, r.hill_pick, fmt);
}

json report_json(const lyap::DominationReport& r, const std::string& order) {
  return json{{"verdict", lyap::to_string(r.verdict)},
              {"order", order},
              {"hill_pick_min_eig", r.hill_pick_min_eig},
              {"hill_pick_band", r.hill_pick_band},
              {"choi_verdict", lyap::to_string(r.choi_verdict)},
              {"choi_min_eig", r.choi_min_eig},
              {"choi_band", r.choi_band},
              {"methods_agree", r.methods_agree},
              {"oracle", oracle_json(r.oracle)},
              {"hill_pick", hill_pick_json(r.hill_pick)}};
}

void print_hill(std::ostream& os, const HillSummary& h, const TextFormat& fmt) {
  const lyap::HillRep& rep = h.rep;
  os << "map: " << h.map_name << " (n=" << rep.n << ", q=" << rep.q << ")\n";
  os << "rank_choi: " << h.rank_choi << '\n';
  os << "r: " << rep.r() << '\n';
  os << "rank_H: " << h.rank_H << '\n';
  os << "minimal: " << (rep.minimal ? "true" : "false") << '\n';
  os << "selection: " << selection_text(rep.selection) << '\n';
  os << "H (" << rep.r() << " x " << rep.r() << "):\n";
  fmt.matrix(os, rep.H);
  for (std::size_t k = 0; k < rep.r(); ++k) {
    os << "A_" << k + 1 << ":\n";
    fmt.matrix(os, rep.A[k]);
  }
}

json hill_json(const HillSummary& h) {
  json as = json::array();
  for (const Mat& a : h.rep.A) as.push_back(matrix_to_json(a));
  return json{{"map", h.map_name},
              {"n", h.rep.n},
              {"q", h.rep.q},
              {"rank_choi", h.rank_choi},
              {"r", h.rep.r()},
              {"rank_H", h.rank_H},
              {"minimal", h.rep.minimal},
              {"selection", selection_json(h.rep.selection)},
              {"H", matrix_to_json(h.rep.H)},
              {"A", as}};
}

}  // namespace lyapctl
