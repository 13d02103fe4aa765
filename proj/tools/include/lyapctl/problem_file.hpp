#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "lyap/jordan.hpp"
#include "lyap/mat.hpp"
#include "lyap/star_linear.hpp"
#include "lyap/tolerances.hpp"

namespace lyapctl {

/// Malformed or invalid input; the message carries a position (line:col or
/// a JSON pointer).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemFile {
  lyap::Field field = lyap::Field::Complex;
  std::vector<lyap::EigenBlock> eigens;
  std::optional<lyap::Mat> P;
  std::variant<lyap::BicommElement, lyap::Mat> B;
  lyap::Tolerances tol;
  std::optional<std::uint64_t> seed;
  /// Optional explicit map for `hill --map raw`.
  std::optional<lyap::StarLinearMap> map;

  lyap::JordanSpec spec() const;
};

/// Parses a problem document; `source` names it in error messages.
ProblemFile parse_problem(std::string_view text, const std::string& source = "<input>");
ProblemFile load_problem(const std::filesystem::path& path);

/// Dense matrix from nested arrays of numbers or [re, im] pairs.
lyap::Mat matrix_from_json(const nlohmann::json& j, lyap::Field field,
                           const std::string& pointer);
nlohmann::json matrix_to_json(const lyap::Mat& m);
nlohmann::json complex_to_json(lyap::Complex z);

}  // namespace lyapctl
