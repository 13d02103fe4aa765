#include "lyapctl/problem_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "lyap/errors.hpp"

namespace lyapctl {

using nlohmann::json;
using lyap::Complex;
using lyap::Field;
using lyap::Index;
using lyap::Mat;

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw InputError((pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

std::string at(const std::string& pointer, const std::string& key) {
  return pointer + "/" + key;
}
std::string at(const std::string& pointer, std::size_t i) {
  return pointer + "/" + std::to_string(i);
}

void reject_unknown(const json& obj, const std::string& pointer,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(at(pointer, key), "unknown field");
  }
}

double number(const json& j, const std::string& pointer) {
  if (!j.is_number()) fail(pointer, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(pointer, "number is not finite");
  return v;
}

Complex complex_value(const json& j, const std::string& pointer) {
  if (j.is_number()) return number(j, pointer);
  if (!j.is_array() || j.size() != 2) fail(pointer, "expected a number or an [re, im] pair");
  return {number(j[0], at(pointer, 0)), number(j[1], at(pointer, 1))};
}

int positive_int(const json& j, const std::string& pointer) {
  if (!j.is_number_integer()) fail(pointer, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v <= 0 || v > std::numeric_limits<int>::max()) fail(pointer, "expected a positive integer");
  return static_cast<int>(v);
}

const json& require(const json& obj, const std::string& pointer, const char* key) {
  if (!obj.contains(key)) fail(at(pointer, key), "missing required field");
  return obj[key];
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

lyap::Tolerances tolerances(const json& j, const std::string& pointer) {
  if (!j.is_object()) fail(pointer, "expected an object");
  reject_unknown(j, pointer, {"rank_rel", "psd_rel", "eq_rel"});
  lyap::Tolerances t;
  if (j.contains("rank_rel")) t.rank_rel = number(j["rank_rel"], at(pointer, "rank_rel"));
  if (j.contains("psd_rel")) t.psd_rel = number(j["psd_rel"], at(pointer, "psd_rel"));
  if (j.contains("eq_rel")) t.eq_rel = number(j["eq_rel"], at(pointer, "eq_rel"));
  try {
    t.validate();
  } catch (const lyap::Error& e) {
    fail(pointer, e.what());
  }
  return t;
}

std::vector<lyap::EigenBlock> eigen_blocks(const json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) fail(pointer, "expected a nonempty array");
  std::vector<lyap::EigenBlock> out;
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string p = at(pointer, e);
    const json& item = j[e];
    if (!item.is_object()) fail(p, "expected an object");
    reject_unknown(item, p, {"lambda", "sizes"});
    lyap::EigenBlock block;
    block.lambda = complex_value(require(item, p, "lambda"), at(p, "lambda"));
    const json& sizes = require(item, p, "sizes");
    if (!sizes.is_array() || sizes.empty()) fail(at(p, "sizes"), "expected a nonempty array");
    for (std::size_t s = 0; s < sizes.size(); ++s)
      block.sizes.push_back(positive_int(sizes[s], at(at(p, "sizes"), s)));
    out.push_back(std::move(block));
  }
  return out;
}

lyap::BicommElement coefficients(const json& j, const std::string& pointer) {
  if (!j.is_array()) fail(pointer, "expected an array per eigenvalue");
  lyap::BicommElement b;
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string p = at(pointer, e);
    if (!j[e].is_array()) fail(p, "expected an array of coefficients");
    std::vector<Complex> t;
    for (std::size_t i = 0; i < j[e].size(); ++i) t.push_back(complex_value(j[e][i], at(p, i)));
    b.coeffs.push_back(std::move(t));
  }
  return b;
}

lyap::StarLinearMap raw_map(const json& j, const std::string& pointer, Field field) {
  if (!j.is_object()) fail(pointer, "expected an object");
  reject_unknown(j, pointer, {"n", "q", "matricization"});
  const int n = positive_int(require(j, pointer, "n"), at(pointer, "n"));
  const int q = positive_int(require(j, pointer, "q"), at(pointer, "q"));
  Mat L = matrix_from_json(require(j, pointer, "matricization"), field, at(pointer, "matricization"));
  if (L.rows() != Index{n} * n || L.cols() != Index{q} * q)
    fail(at(pointer, "matricization"), "expected an n^2 x q^2 matrix");
  return lyap::StarLinearMap(n, q, std::move(L));
}

}  // namespace

Mat matrix_from_json(const json& j, Field field, const std::string& pointer) {
  if (!j.is_array() || j.empty()) fail(pointer, "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(at(pointer, 0), "expected a nonempty row");
  Mat m(static_cast<Index>(j.size()), static_cast<Index>(cols), field);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string pr = at(pointer, r);
    if (!j[r].is_array() || j[r].size() != cols) fail(pr, "rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      const Complex z = complex_value(j[r][c], at(pr, c));
      if (field == Field::Real && z.imag() != 0.0)
        fail(at(pr, c), "complex entry in a real problem");
      m.set(static_cast<Index>(r), static_cast<Index>(c), z);
    }
  }
  return m;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

lyap::JordanSpec ProblemFile::spec() const { return lyap::JordanSpec(field, eigens, P, tol); }

ProblemFile parse_problem(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": malformed JSON";
    throw InputError(os.str());
  }

  try {
    if (!doc.is_object()) fail("", "expected a JSON object");
    reject_unknown(doc, "", {"field", "eigenvalues", "P", "B", "tolerances", "seed", "map"});

    ProblemFile pf;
    const json& field = require(doc, "", "field");
    if (field == "real")
      pf.field = Field::Real;
    else if (field == "complex")
      pf.field = Field::Complex;
    else
      fail("/field", "expected \"real\" or \"complex\"");

    if (doc.contains("tolerances")) pf.tol = tolerances(doc["tolerances"], "/tolerances");
    if (doc.contains("seed")) {
      if (!doc["seed"].is_number_unsigned()) fail("/seed", "expected a nonnegative integer");
      pf.seed = doc["seed"].get<std::uint64_t>();
    }

    pf.eigens = eigen_blocks(require(doc, "", "eigenvalues"), "/eigenvalues");
    try {
      (void)lyap::JordanSpec(pf.field, pf.eigens, std::nullopt, pf.tol);
    } catch (const lyap::Error& e) {
      fail("/eigenvalues", e.what());
    }

    if (doc.contains("P")) {
      pf.P = matrix_from_json(doc["P"], pf.field, "/P");
      try {
        (void)pf.spec();
      } catch (const lyap::Error& e) {
        fail("/P", e.what());
      }
    }
    const lyap::JordanSpec spec = pf.spec();

    const json& b = require(doc, "", "B");
    if (!b.is_object()) fail("/B", "expected an object");
    reject_unknown(b, "/B", {"coeffs", "matrix"});
    if (b.contains("coeffs") == b.contains("matrix"))
      fail("/B", "expected exactly one of \"coeffs\" or \"matrix\"");
    if (b.contains("coeffs")) {
      lyap::BicommElement coeffs = coefficients(b["coeffs"], "/B/coeffs");
      try {
        lyap::validate_bicomm(spec, coeffs);
      } catch (const lyap::Error& e) {
        fail("/B/coeffs", e.what());
      }
      pf.B = std::move(coeffs);
    } else {
      Mat m = matrix_from_json(b["matrix"], pf.field, "/B/matrix");
      if (m.rows() != spec.n() || m.cols() != spec.n())
        fail("/B/matrix", "expected an n x n matrix with n = " + std::to_string(spec.n()));
      pf.B = std::move(m);
    }

    if (doc.contains("map")) pf.map = raw_map(doc["map"], "/map", pf.field);
    return pf;
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(source + ": " + e.what());
  }
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str(), path.string());
}

}  // namespace lyapctl
