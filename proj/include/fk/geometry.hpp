#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fk {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

double norm(Vec2 v);
double distance(Vec2 a, Vec2 b);

inline constexpr double kSpecTolerance = 1e-9;
inline constexpr std::size_t kDefaultMaxVertices = 100'000'000;

/// A self-similar production rule: one parent segment is replaced by N unit
/// displacements expressed in child units, so the generator spans (rho, 0).
class GeneratorSpec {
 public:
  /// Throws std::invalid_argument unless the invariants hold:
  /// N >= 2, N >= rho > 1, every |d_i| = 1 and sum(d_i) = (rho, 0).
  GeneratorSpec(std::string name, double rho, std::vector<Vec2> displacements);

  const std::string& name() const { return name_; }
  double rho() const { return rho_; }
  std::size_t segment_count() const { return displacements_.size(); }
  std::span<const Vec2> displacements() const { return displacements_; }

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;

 private:
  std::string name_;
  double rho_;
  std::vector<Vec2> displacements_;
};

/// ln N / ln rho.
double similarity_dimension(const GeneratorSpec& spec);

enum class Builtin { line, koch, peano, cesaro };

std::optional<Builtin> parse_builtin(std::string_view name);

/// Builtin generators. `angle_deg` is only read for cesaro, whose opening
/// angle must lie in (0, 90) degrees; rho = 2(1 + cos angle), N = 4.
GeneratorSpec builtin(Builtin which, double angle_deg = 60.0);

GeneratorSpec line_generator();
GeneratorSpec koch_generator();
GeneratorSpec peano_generator();
GeneratorSpec cesaro_generator(double angle_deg);

struct Polyline {
  std::vector<Vec2> vertices;
  std::optional<int> level;

  friend bool operator==(const Polyline&, const Polyline&) = default;
};

/// Throws std::invalid_argument for fewer than two vertices, repeated
/// consecutive vertices or non-finite coordinates.
void validate(const Polyline& poly);

Polyline unit_segment(double length = 1.0);

double arc_length(const Polyline& poly);

/// Replaces every segment by the generator, scaled by |segment|/rho and
/// rotated onto the segment, `level` times. Each segment's endpoints are
/// copied verbatim, so the base vertices survive bit for bit.
/// Throws std::length_error if the result would exceed `max_vertices`.
Polyline refine(const Polyline& base, const GeneratorSpec& spec, int level,
                std::size_t max_vertices = kDefaultMaxVertices);

}  // namespace fk
