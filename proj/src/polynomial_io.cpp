#include "fstube/polynomial_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fstube {

namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& field, const std::string& what) {
  throw InputError(source + ": field '" + field + "': " + what);
}

int get_int(const Json& j, const char* key, const std::string& path, const std::string& source) {
  if (!j.contains(key)) fail(source, path + key, "missing");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) fail(source, path + key, "expected an integer, got " + v.dump());
  return v.get<int>();
}

std::vector<Monomial> parse_terms(const Json& j, const std::string& path, int vars, const std::string& source) {
  if (!j.is_object() || !j.contains("terms")) fail(source, path + "terms", "missing");
  const Json& terms = j.at("terms");
  if (!terms.is_array() || terms.empty()) fail(source, path + "terms", "expected a non-empty array");
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = path + "terms[" + std::to_string(i) + "].";
    const Json& t = terms[i];
    if (!t.is_object()) fail(source, path + "terms[" + std::to_string(i) + "]", "expected an object");
    if (!t.contains("coeff")) fail(source, at + "coeff", "missing");
    const Json& c = t.at("coeff");
    Complex coeff;
    if (c.is_number()) {
      coeff = c.get<double>();
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      coeff = {c[0].get<double>(), c[1].get<double>()};
    } else {
      fail(source, at + "coeff", "expected [re, im], got " + c.dump());
    }
    if (!t.contains("exp")) fail(source, at + "exp", "missing");
    const Json& e = t.at("exp");
    if (!e.is_array() || static_cast<int>(e.size()) != vars)
      fail(source, at + "exp", "expected an array of " + std::to_string(vars) + " integers");
    std::vector<int> exps;
    for (const Json& x : e) {
      if (!x.is_number_integer() || x.get<int>() < 0) fail(source, at + "exp", "entries must be non-negative integers");
      exps.push_back(x.get<int>());
    }
    out.push_back({coeff, std::move(exps)});
  }
  return out;
}

}  // namespace

Submanifold parse_submanifold(std::istream& in, const std::string& source) {
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    // The parser message already carries "line L, column C".
    throw InputError(source + ": " + e.what());
  }
  if (!j.is_object()) throw InputError(source + ": top level must be an object");
  const int n = get_int(j, "n", "", source);
  const int d = get_int(j, "d", "", source);
  if (n < 1) fail(source, "n", "must be >= 1");
  if (d < 1) fail(source, "d", "must be >= 1");
  const bool has_terms = j.contains("terms"), has_components = j.contains("components");
  if (has_terms == has_components) throw InputError(source + ": exactly one of 'terms' or 'components' is required");
  try {
    if (has_terms) return make_hypersurface(HomogeneousPolynomial(n, d, parse_terms(j, "", n + 1, source)), source);
    const Json& comps = j.at("components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != n + 1)
      fail(source, "components", "expected an array of n+1 = " + std::to_string(n + 1) + " binary forms");
    std::vector<HomogeneousPolynomial> forms;
    for (std::size_t i = 0; i < comps.size(); ++i)
      forms.emplace_back(1, d, parse_terms(comps[i], "components[" + std::to_string(i) + "].", 2, source));
    return make_rational_curve(RationalCurve(n, std::move(forms)), source);
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(source + ": " + e.what());
  } catch (const SubmanifoldError& e) {
    throw InputError(source + ": " + e.what());
  }
}

Submanifold load_submanifold(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  return parse_submanifold(f, path);
}

}  // namespace fstube
