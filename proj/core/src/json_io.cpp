#include "unruh/json_io.hpp"

#include <set>
#include <string>

#include "unruh/error.hpp"

namespace unruh {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  if (!j.at(key).is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

int integer(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("missing field '") + key + "'");
  if (!j.at(key).is_number_integer())
    throw InvalidArgument(std::string("field '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* what) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw InvalidArgument(std::string(what) + ": unknown field '" + key + "'");
}

}  // namespace

RateSet RateSpec::resolve() const {
  if (physical) return compute_rates(*physical);
  return rates_from_gammas(gamma_plus, gamma_minus, f_ab);
}

RateSet RateSpec::resolve(double f) const {
  return resolve().with_f(f);
}

RateSpec rate_spec_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("rates: expected an object");
  const bool physical = j.contains("omega0") || j.contains("alpha");
  const bool direct = j.contains("gamma_plus") || j.contains("gamma_minus");
  if (physical == direct)
    throw InvalidArgument("rates: give either {omega0, alpha, L, lambda} or {gamma_plus, gamma_minus}");
  RateSpec spec;
  spec.n_atoms = j.contains("n_atoms") ? integer(j, "n_atoms") : 2;
  if (physical) {
    reject_unknown(j, {"omega0", "alpha", "L", "lambda", "n_atoms", "unit_mode"}, "rates");
    const UnitMode mode = j.contains("unit_mode")
                              ? parse_unit_mode(j.at("unit_mode").get<std::string>())
                              : UnitMode::natural;
    spec.physical.emplace(number(j, "omega0"), number(j, "alpha"), number(j, "L"),
                          number(j, "lambda"), spec.n_atoms, mode);
  } else {
    reject_unknown(j, {"gamma_plus", "gamma_minus", "f_ab", "n_atoms"}, "rates");
    spec.gamma_plus = number(j, "gamma_plus");
    spec.gamma_minus = number(j, "gamma_minus");
    spec.f_ab = j.contains("f_ab") ? number(j, "f_ab") : 0.0;
    (void)spec.resolve();  // validates
  }
  return spec;
}

json to_json(const RateSpec& spec) {
  if (spec.physical) {
    const auto& p = *spec.physical;
    return {{"omega0", p.omega0()}, {"alpha", p.alpha()}, {"L", p.separation()},
            {"lambda", p.coupling()}, {"n_atoms", p.n_atoms()},
            {"unit_mode", std::string(to_string(p.unit_mode()))}};
  }
  return {{"gamma_plus", spec.gamma_plus}, {"gamma_minus", spec.gamma_minus},
          {"f_ab", spec.f_ab}, {"n_atoms", spec.n_atoms}};
}

json to_json(const DensityMatrix& rho) {
  json entries = json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      entries.push_back({m(i, k).real(), m(i, k).imag()});
  return {{"dim", rho.dim()}, {"entries", entries}};
}

DensityMatrix density_matrix_from_json(const json& j) {
  const int d = integer(j, "dim");
  if (d < 1) throw InvalidArgument("density matrix: dim must be positive");
  const auto& e = j.at("entries");
  if (!e.is_array() || e.size() != static_cast<std::size_t>(d) * d)
    throw InvalidArgument("density matrix: expected dim*dim entries");
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const auto& z = e.at(static_cast<std::size_t>(i) * d + k);
      if (!z.is_array() || z.size() != 2)
        throw InvalidArgument("density matrix: each entry must be [re, im]");
      m(i, k) = {z.at(0).get<double>(), z.at(1).get<double>()};
    }
  return DensityMatrix(std::move(m));
}

json to_json(const SpectrumReport& report) {
  json evs = json::array();
  for (const auto& ev : report.eigenvalues) evs.push_back({ev.real(), ev.imag()});
  return {{"eigenvalues", evs}, {"zero_count", report.zero_count}, {"adr", report.adr}};
}

json to_json(const PowerLawFit& fit) {
  return {{"slope", fit.slope}, {"intercept", fit.intercept},
          {"r_squared", fit.r_squared}, {"n_points", fit.n_points}};
}

}  // namespace unruh
