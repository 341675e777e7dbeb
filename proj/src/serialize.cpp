#include "fk/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace fk {

using nlohmann::json;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json bound_value(double v) { return std::isinf(v) ? json(nullptr) : json(v); }

double bound_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

void to_json(json& j, const Vec2& v) { j = json::array({v.x, v.y}); }

void from_json(const json& j, Vec2& v) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("a point must be a [x, y] array");
  v = {j.at(0).get<double>(), j.at(1).get<double>()};
}

void to_json(json& j, const GeneratorSpec& spec) {
  json d = json::array();
  for (const Vec2 v : spec.displacements()) d.push_back(v);
  j = json{{"name", spec.name()}, {"rho", spec.rho()}, {"displacements", d}};
}

GeneratorSpec generator_from_json(const json& j) {
  return {j.at("name").get<std::string>(), j.at("rho").get<double>(),
          j.at("displacements").get<std::vector<Vec2>>()};
}

void to_json(json& j, const Polyline& poly) {
  j = json{{"level", poly.level ? json(*poly.level) : json(nullptr)}, {"vertices", poly.vertices}};
}

void from_json(const json& j, Polyline& poly) {
  poly.vertices = j.at("vertices").get<std::vector<Vec2>>();
  poly.level.reset();
  if (j.contains("level") && !j.at("level").is_null()) poly.level = j.at("level").get<int>();
  validate(poly);
}

void to_json(json& j, const ScaleRow& r) {
  j = json{{"k", r.k},         {"dx_k", r.dx_k}, {"N_k", r.N_k},     {"L_k", r.L_k}, {"A_k", r.A_k},
           {"v_k", r.v_k},     {"gamma", r.gamma}, {"dA_k0", r.dA_k0}, {"dL_k", r.dL_k}};
}

void from_json(const json& j, ScaleRow& r) {
  r.k = j.at("k").get<int>();
  r.dx_k = j.at("dx_k").get<double>();
  r.N_k = j.at("N_k").get<double>();
  r.L_k = j.at("L_k").get<double>();
  r.A_k = j.at("A_k").get<double>();
  r.v_k = j.at("v_k").get<double>();
  r.gamma = j.at("gamma").get<double>();
  r.dA_k0 = j.at("dA_k0").get<double>();
  r.dL_k = j.at("dL_k").get<double>();
}

void to_json(json& j, const RegimeBound& b) {
  j = json{{"regime", std::string(to_string(b.regime))},
           {"lower", b.lower},
           {"upper", bound_value(b.upper)},
           {"lower_strict", b.lower_strict},
           {"upper_strict", b.upper_strict}};
}

void from_json(const json& j, RegimeBound& b) {
  b.regime = regime_from_string(j.at("regime").get<std::string>());
  b.lower = j.at("lower").get<double>();
  b.upper = bound_from(j.at("upper"));
  b.lower_strict = j.at("lower_strict").get<bool>();
  b.upper_strict = j.at("upper_strict").get<bool>();
}

void to_json(json& j, const BoundsRow& r) {
  j = json{{"k", r.k}, {"product", r.product}, {"lower", r.lower}, {"upper", bound_value(r.upper)},
           {"pass", r.pass}};
}

void from_json(const json& j, BoundsRow& r) {
  r.k = j.at("k").get<int>();
  r.product = j.at("product").get<double>();
  r.lower = j.at("lower").get<double>();
  r.upper = bound_from(j.at("upper"));
  r.pass = j.at("pass").get<bool>();
}

void to_json(json& j, const BoundsReport& r) {
  j = json{{"spec", r.spec},
           {"ds", r.ds},
           {"eta0", r.eta0},
           {"rows", r.rows},
           {"preconditions", {{"k_min", r.k_min}, {"rho_ge_2", r.rho_ge_2}}}};
}

void from_json(const json& j, BoundsReport& r) {
  r.spec = j.at("spec").get<std::string>();
  r.ds = j.at("ds").get<double>();
  r.eta0 = j.at("eta0").get<double>();
  r.rows = j.at("rows").get<std::vector<BoundsRow>>();
  r.k_min = j.at("preconditions").at("k_min").get<int>();
  r.rho_ge_2 = j.at("preconditions").at("rho_ge_2").get<bool>();
}

void to_json(json& j, const MeasurementRow& r) {
  j = json{{"k", r.k}, {"dx", r.dx}, {"count", r.count}, {"length", r.length}};
}

void from_json(const json& j, MeasurementRow& r) {
  r.k = j.at("k").get<int>();
  r.dx = j.at("dx").get<double>();
  r.count = j.at("count").get<double>();
  r.length = j.at("length").get<double>();
}

void to_json(json& j, const DimensionFit& f) {
  j = json{{"ds_hat", f.ds_hat},
           {"intercept", f.intercept},
           {"r2", f.r2},
           {"k_fit_range", json::array({f.k_first, f.k_last})}};
}

void from_json(const json& j, DimensionFit& f) {
  f.ds_hat = j.at("ds_hat").get<double>();
  f.intercept = j.at("intercept").get<double>();
  f.r2 = j.at("r2").get<double>();
  f.k_first = j.at("k_fit_range").at(0).get<int>();
  f.k_last = j.at("k_fit_range").at(1).get<int>();
}

void to_json(json& j, const MeasurementResult& m) {
  j = json{{"method", std::string(to_string(m.method))}, {"rows", m.rows}};
  j["fit"] = m.fit ? json(*m.fit) : json(nullptr);
}

void from_json(const json& j, MeasurementResult& m) {
  m.method = method_from_string(j.at("method").get<std::string>());
  m.rows = j.at("rows").get<std::vector<MeasurementRow>>();
  m.fit.reset();
  if (j.contains("fit") && !j.at("fit").is_null()) m.fit = j.at("fit").get<DimensionFit>();
}

void to_json(json& j, const BrownianPath& b) {
  j = b.path;
  j["metadata"] = {{"seed", b.seed}, {"n", b.n}, {"step_std", b.step_std}, {"prng", b.prng}};
}

void from_json(const json& j, BrownianPath& b) {
  b.path = j.get<Polyline>();
  const json& meta = j.at("metadata");
  b.seed = meta.at("seed").get<std::uint64_t>();
  b.n = meta.at("n").get<int>();
  b.step_std = meta.at("step_std").get<double>();
  b.prng = meta.at("prng").get<std::string>();
}

void write_scale_csv(std::ostream& os, std::span<const ScaleRow> rows) {
  os << "k,dx_k,N_k,L_k,A_k,v_k,gamma,dA_k0,dL_k\n";
  for (const auto& r : rows) {
    os << r.k;
    for (const double v : {r.dx_k, r.N_k, r.L_k, r.A_k, r.v_k, r.gamma, r.dA_k0, r.dL_k}) {
      os << ',' << format_number(v);
    }
    os << '\n';
  }
}

void write_measurement_csv(std::ostream& os, const MeasurementResult& m) {
  os << "k,dx,count,length\n";
  for (const auto& r : m.rows) {
    os << r.k << ',' << format_number(r.dx) << ',' << format_number(r.count) << ','
       << format_number(r.length) << '\n';
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace fk
