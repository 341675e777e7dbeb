#include "fk/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "fk/parallel.hpp"

namespace fk {

std::string_view to_string(Method m) { return m == Method::grid ? "grid" : "divider"; }

Method method_from_string(std::string_view s) {
  if (s == "grid") return Method::grid;
  if (s == "divider") return Method::divider;
  throw std::invalid_argument("unknown measurement method '" + std::string(s) + "'");
}

namespace {

using Cell = std::pair<std::int64_t, std::int64_t>;

constexpr double kDividerSlack = 1e-9;

void add_column(std::vector<Cell>& out, std::int64_t ix, std::int64_t lo, std::int64_t hi) {
  for (std::int64_t iy = lo; iy <= hi; ++iy) out.emplace_back(ix, iy);
}

void cover_segment(Vec2 p, Vec2 q, double cell, std::vector<Cell>& out) {
  auto index = [cell](double v) { return static_cast<std::int64_t>(std::floor(v / cell)); };

  if (p.x == q.x) {
    add_column(out, index(p.x), index(std::min(p.y, q.y)), index(std::max(p.y, q.y)));
    return;
  }

  const Vec2 a = p.x < q.x ? p : q;
  const Vec2 b = p.x < q.x ? q : p;
  const double slope = (b.y - a.y) / (b.x - a.x);
  const std::int64_t i0 = index(a.x);
  const std::int64_t i1 = index(b.x);

  for (std::int64_t i = i0; i <= i1; ++i) {
    const bool last = i == i1;
    const double xl = i == i0 ? a.x : static_cast<double>(i) * cell;
    const double xr = last ? b.x : static_cast<double>(i + 1) * cell;
    // Column i is [i*cell, (i+1)*cell): its right edge belongs to column i+1.
    if (!last && !(xl < xr)) continue;
    const double yl = i == i0 ? a.y : a.y + (xl - a.x) * slope;
    const double yr = last ? b.y : a.y + (xr - a.x) * slope;

    std::int64_t lo = 0;
    std::int64_t hi = 0;
    if (a.y == b.y) {
      lo = hi = index(a.y);
    } else if (b.y > a.y) {
      lo = index(yl);
      hi = last ? index(yr) : static_cast<std::int64_t>(std::ceil(yr / cell)) - 1;
      hi = std::max(hi, lo);
    } else {
      // y runs over (yr, yl]; floor is right-continuous, so the open end
      // still lands in index(yr).
      lo = index(yr);
      hi = index(yl);
    }
    add_column(out, i, lo, hi);
  }
}

}  // namespace

std::int64_t grid_count(const Polyline& poly, double cell) {
  if (!(cell > 0.0) || !std::isfinite(cell)) throw std::invalid_argument("cell size must be > 0");
  validate(poly);

  std::vector<Cell> cells;
  for (std::size_t i = 1; i < poly.vertices.size(); ++i) {
    cover_segment(poly.vertices[i - 1], poly.vertices[i], cell, cells);
    // Keep the buffer bounded on long inputs.
    if (cells.size() > (1u << 22)) {
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    }
  }
  std::sort(cells.begin(), cells.end());
  return std::unique(cells.begin(), cells.end()) - cells.begin();
}

double divider_count(const Polyline& poly, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("divider step must be > 0");
  validate(poly);

  const auto& v = poly.vertices;
  const double s2 = step * step;
  Vec2 anchor = v.front();
  std::size_t seg = 0;
  double u0 = 0.0;
  long long steps = 0;

  while (seg + 1 < v.size()) {
    const Vec2 p = v[seg];
    const Vec2 d = v[seg + 1] - p;
    const Vec2 f = p - anchor;
    // The previous segment's crossing can round to just past its end.
    if (u0 == 0.0 && p != anchor && f.x * f.x + f.y * f.y >= s2) {
      anchor = p;
      ++steps;
      continue;
    }
    // |f + u d|^2 = s^2. Everything before the crossing lies inside the
    // circle, so the crossing is the larger root.
    const double qa = d.x * d.x + d.y * d.y;
    const double qb = 2.0 * (f.x * d.x + f.y * d.y);
    const double qc = f.x * f.x + f.y * f.y - s2;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      const double root = std::sqrt(disc);
      const double r = qb <= 0.0 ? (-qb + root) / (2.0 * qa) : (2.0 * qc) / (-qb - root);
      // Crossings that round to just past the segment end are taken at the
      // end vertex; otherwise a vertex lying on the circle can be skipped.
      if (r >= u0 && r <= 1.0 + kDividerSlack) {
        anchor = r >= 1.0 ? v[seg + 1] : p + r * d;
        u0 = std::min(r, 1.0);
        ++steps;
        continue;
      }
    }
    ++seg;
    u0 = 0.0;
  }
  return static_cast<double>(steps) + distance(anchor, v.back()) / step;
}

DimensionFit estimate_dimension(std::span<const MeasurementRow> rows, const FitOptions& opts) {
  std::vector<MeasurementRow> sorted(rows.begin(), rows.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const MeasurementRow& a, const MeasurementRow& b) { return a.dx > b.dx; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].dx == sorted[i - 1].dx) throw std::invalid_argument("scales must have distinct dx");
  }
  for (const auto& r : sorted) {
    if (!(r.dx > 0.0)) throw std::invalid_argument("scale dx must be > 0");
  }

  std::vector<MeasurementRow> used;
  for (const auto& r : sorted) {
    if (r.count < 1.0) continue;
    if (opts.exclude_saturated && !used.empty() && r.count < opts.saturation_ratio * used.back().count) {
      break;
    }
    used.push_back(r);
  }
  if (used.size() < 3) {
    throw std::domain_error("fewer than three usable scales for a dimension fit");
  }

  const auto n = static_cast<double>(used.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& r : used) {
    mx += std::log(1.0 / r.dx);
    my += std::log(r.count);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& r : used) {
    const double dx = std::log(1.0 / r.dx) - mx;
    const double dy = std::log(r.count) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  DimensionFit fit;
  fit.ds_hat = sxy / sxx;
  fit.intercept = my - fit.ds_hat * mx;
  double ss_res = 0.0;
  for (const auto& r : used) {
    const double e = std::log(r.count) - (fit.intercept + fit.ds_hat * std::log(1.0 / r.dx));
    ss_res += e * e;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.k_first = used.front().k;
  fit.k_last = used.back().k;
  return fit;
}

MeasurementResult measure(const Polyline& poly, const MeasureOptions& opts) {
  validate(poly);
  if (!(opts.L0 > 0.0)) throw std::invalid_argument("ladder base L0 must be > 0");
  if (!(opts.rho > 1.0)) throw std::invalid_argument("ladder factor rho must be > 1");
  if (opts.k_first < 0 || opts.k_last < opts.k_first) throw std::invalid_argument("invalid scale range");

  MeasurementResult result;
  result.method = opts.method;
  result.rows.resize(static_cast<std::size_t>(opts.k_last - opts.k_first) + 1);
  parallel_for(result.rows.size(), [&](std::size_t i) {
    const int k = opts.k_first + static_cast<int>(i);
    const double dx = opts.L0 / std::pow(opts.rho, k);
    const double count = opts.method == Method::grid ? static_cast<double>(grid_count(poly, dx))
                                                     : divider_count(poly, dx);
    result.rows[i] = {k, dx, count, count * dx};
  });
  if (opts.fit) result.fit = estimate_dimension(result.rows, opts.fit_options);
  return result;
}

namespace {

constexpr std::size_t kChunk = 8192;

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

BrownianPath brownian_path(int n, std::uint64_t seed, double step_std) {
  if (n < 2) throw std::invalid_argument("a Brownian path needs n >= 2 vertices");
  if (!(step_std > 0.0) || !std::isfinite(step_std)) throw std::invalid_argument("step_std must be > 0");

  const std::size_t steps = static_cast<std::size_t>(n) - 1;
  std::vector<Vec2> inc(steps);
  const std::size_t chunks = (steps + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    std::mt19937_64 engine(splitmix64(seed, c));
    constexpr double scale = 0x1.0p-53;
    const std::size_t end = std::min(steps, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double u1 = static_cast<double>((engine() >> 11) + 1) * scale;  // (0, 1]
      const double u2 = static_cast<double>(engine() >> 11) * scale;        // [0, 1)
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double t = 2.0 * std::numbers::pi * u2;
      inc[i] = {step_std * r * std::cos(t), step_std * r * std::sin(t)};
    }
  });

  BrownianPath out;
  out.seed = seed;
  out.n = n;
  out.step_std = step_std;
  out.path.vertices.reserve(static_cast<std::size_t>(n));
  out.path.vertices.push_back({0.0, 0.0});
  for (const Vec2 d : inc) out.path.vertices.push_back(out.path.vertices.back() + d);
  return out;
}

}  // namespace fk
