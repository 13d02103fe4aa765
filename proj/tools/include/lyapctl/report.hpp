#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "lyap/hill.hpp"
#include "lyap/lyapunov_order.hpp"
#include "lyap/mat.hpp"

namespace lyapctl {

/// Scalar and matrix text with a fixed number of significant digits.
class TextFormat {
 public:
  explicit TextFormat(int precision) : precision_(precision) {}

  std::string scalar(double x) const;
  std::string scalar(lyap::Complex z) const;
  /// Right-aligned columns, one row per line, each line prefixed by indent.
  void matrix(std::ostream& os, const lyap::Mat& m, const std::string& indent = "  ") const;

 private:
  int precision_;
};

/// Blocks printed 1-based as "(i,j)".
std::string selection_text(const std::vector<lyap::BlockIndex>& sel);
nlohmann::json selection_json(const std::vector<lyap::BlockIndex>& sel);

std::vector<double> sorted_eigenvalues(const lyap::Mat& hermitian);

void print_report(std::ostream& os, const lyap::DominationReport& r, const std::string& order,
                  const TextFormat& fmt);
nlohmann::json report_json(const lyap::DominationReport& r, const std::string& order);

void print_hill_pick(std::ostream& os, const lyap::HillPickMatrix& hp, const TextFormat& fmt);
nlohmann::json hill_pick_json(const lyap::HillPickMatrix& hp);

void print_oracle(std::ostream& os, const lyap::OracleOutcome& o, const TextFormat& fmt);
nlohmann::json oracle_json(const lyap::OracleOutcome& o);

struct HillSummary {
  std::string map_name;
  lyap::HillRep rep;
  std::size_t rank_choi = 0;
  std::size_t rank_H = 0;
};

void print_hill(std::ostream& os, const HillSummary& h, const TextFormat& fmt);
nlohmann::json hill_json(const HillSummary& h);

}  // namespace lyapctl
