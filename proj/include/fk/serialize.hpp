#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "fk/estimator.hpp"
#include "fk/geometry.hpp"
#include "fk/kinematics.hpp"
#include "fk/measures.hpp"

namespace fk {

/// "%.17g"; round-trips every finite double. Infinity prints as "inf".
std::string format_number(double v);

// JSON bindings. Infinite bounds are written as null and read back as +inf.
void to_json(nlohmann::json& j, const Vec2& v);
void from_json(const nlohmann::json& j, Vec2& v);

void to_json(nlohmann::json& j, const GeneratorSpec& spec);
GeneratorSpec generator_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const Polyline& poly);
void from_json(const nlohmann::json& j, Polyline& poly);

void to_json(nlohmann::json& j, const ScaleRow& row);
void from_json(const nlohmann::json& j, ScaleRow& row);

void to_json(nlohmann::json& j, const RegimeBound& b);
void from_json(const nlohmann::json& j, RegimeBound& b);

void to_json(nlohmann::json& j, const BoundsRow& row);
void from_json(const nlohmann::json& j, BoundsRow& row);

void to_json(nlohmann::json& j, const BoundsReport& report);
void from_json(const nlohmann::json& j, BoundsReport& report);

void to_json(nlohmann::json& j, const MeasurementRow& row);
void from_json(const nlohmann::json& j, MeasurementRow& row);

void to_json(nlohmann::json& j, const DimensionFit& fit);
void from_json(const nlohmann::json& j, DimensionFit& fit);

void to_json(nlohmann::json& j, const MeasurementResult& m);
void from_json(const nlohmann::json& j, MeasurementResult& m);

/// Polyline schema plus a "metadata" block {seed, n, step_std, prng}.
void to_json(nlohmann::json& j, const BrownianPath& b);
void from_json(const nlohmann::json& j, BrownianPath& b);

/// Header `k,dx_k,N_k,L_k,A_k,v_k,gamma,dA_k0,dL_k`.
void write_scale_csv(std::ostream& os, std::span<const ScaleRow> rows);

/// Header `k,dx,count,length`.
void write_measurement_csv(std::ostream& os, const MeasurementResult& m);

/// Pretty-printed with a trailing newline; key order is fixed by the
/// bindings above, so equal values give equal bytes.
std::string dump(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

}  // namespace fk
