#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fk/estimator.hpp"
#include "fk/geometry.hpp"
#include "fk/kinematics.hpp"
#include "fk/measures.hpp"
#include "fk/render.hpp"
#include "fk/serialize.hpp"

using nlohmann::json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON config files: keys are long flag names of the chosen subcommand;
// nested objects address a subcommand explicitly. Flags on the command line
// win over the file.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& res = opt->results();
        j[name] = res.size() == 1 ? json(res.front()) : json(res);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    std::vector<std::string> parents;
    for (const CLI::App* sub : root_->get_subcommands()) parents.push_back(sub->get_name());
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        collect(value, {key}, items);
      } else {
        collect(json{{key, value}}, parents, items);
      }
    }
    return items;
  }

 private:
  const CLI::App* root_;

  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void collect(const json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        collect(value, next, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      out.push_back(std::move(item));
    }
  }
};

struct GeneratorFlags {
  std::string generator = "koch";
  std::string spec_file;
  double angle = 60.0;
  CLI::Option* generator_opt = nullptr;
  CLI::Option* spec_opt = nullptr;
  CLI::Option* angle_opt = nullptr;

  void attach(CLI::App* sub) {
    generator_opt = sub->add_option("--generator", generator, "Builtin generator")
                        ->check(CLI::IsMember({"line", "koch", "peano", "cesaro"}))
                        ->capture_default_str();
    spec_opt = sub->add_option("--spec", spec_file, "GeneratorSpec JSON file")->check(CLI::ExistingFile);
    spec_opt->excludes(generator_opt);
    angle_opt = sub->add_option("--angle", angle, "Cesaro angle in degrees, in (0, 90)")
                    ->check(CLI::Range(0.0, 90.0))
                    ->capture_default_str();
  }

  fk::GeneratorSpec resolve() const {
    if (spec_opt->count() > 0) {
      if (angle_opt->count() > 0) throw UsageError("--angle applies only to --generator cesaro");
      return fk::generator_from_json(fk::read_json_file(spec_file));
    }
    const auto which = *fk::parse_builtin(generator);
    if (angle_opt->count() > 0 && which != fk::Builtin::cesaro) {
      throw UsageError("--angle applies only to --generator cesaro");
    }
    if (which == fk::Builtin::cesaro && !(angle > 0.0 && angle < 90.0)) {
      throw UsageError("--angle must lie strictly between 0 and 90");
    }
    return fk::builtin(which, angle);
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--scales expects a range like 1..6");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used_a);
    const int hi = std::stoi(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
    if (lo < 0 || hi < lo) throw UsageError("--scales needs 0 <= first <= last");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--scales expects a range like 1..6");
  }
}

// generate

struct GenerateCmd {
  GeneratorFlags gen;
  int level = 0;
  double l0 = 1.0;
  std::string out;
  std::string format;
  bool panels = false;
  std::optional<int> grid;
  int width = 800;
  int height = 400;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("generate", "Build a refined curve and write it as JSON or SVG");
    gen.attach(sub);
    sub->add_option("--level", level, "Refinement level k")->check(CLI::NonNegativeNumber)->capture_default_str();
    sub->add_option("--l0", l0, "Length of the base segment")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--out", out, "Output file; .svg renders, anything else is JSON (default: stdout)");
    sub->add_option("--format", format, "Force json or svg")->check(CLI::IsMember({"json", "svg"}));
    sub->add_flag("--panels", panels, "SVG of levels 0..k side by side");
    sub->add_option("--grid", grid, "Overlay the cell grid of scale k (panels use their own level)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--width", width, "SVG panel width in pixels")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--height", height, "SVG panel height in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->callback([this] { run(); });
  }

  void run() {
    const auto spec = gen.resolve();
    const bool svg = format.empty() ? ends_with(out, ".svg") : format == "svg";
    if (panels && !svg) throw UsageError("--panels needs SVG output");
    if (grid && !svg) throw UsageError("--grid needs SVG output");
    fk::RenderOptions opts;
    opts.width = width;
    opts.height = height;
    if (grid) opts.grid = fk::GridOverlay{*grid, l0, spec.rho()};

    const auto base = fk::unit_segment(l0);
    if (panels) {
      std::vector<fk::Polyline> levels;
      for (int k = 0; k <= level; ++k) levels.push_back(fk::refine(base, spec, k));
      emit(fk::render_panels(levels, opts), out);
      return;
    }
    const auto poly = fk::refine(base, spec, level);
    emit(svg ? fk::render_svg(poly, opts) : fk::dump(json(poly)), out);
  }
};

// analyze

struct AnalyzeCmd {
  GeneratorFlags gen;
  int k_max = 10;
  double mass = 1.0;
  double dt = 1.0;
  double l0 = 1.0;
  std::string format = "json";
  std::string out;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("analyze", "Scale table, uncertainty products, regime and bounds check");
    gen.attach(sub);
    sub->add_option("--k-max", k_max, "Largest scale index")->check(CLI::Range(0, 1000))->capture_default_str();
    sub->add_option("--mass", mass, "Particle mass")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--dt", dt, "Traversal time")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--l0", l0, "Base length")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--out", out, "Output file (default: stdout)");
    sub->callback([this] { run(); });
  }

  void run() {
    const auto spec = gen.resolve();
    const fk::ParticleContext ctx(mass, dt, l0);
    const double ds = fk::similarity_dimension(spec);
    const auto scales = fk::scale_table(spec, l0, dt, k_max);
    const auto products = fk::uncertainty_table(spec, ctx, k_max);
    std::optional<fk::BoundsReport> bounds;
    if (k_max >= 1) bounds = fk::verify_bounds(spec, ctx, 1, k_max);

    if (format == "csv") {
      std::ostringstream table;
      fk::write_scale_csv(table, scales);
      std::istringstream lines(table.str());
      std::string line;
      std::getline(lines, line);
      std::string text = line + ",dV_k,dP_k,regime,in_bounds\n";
      for (std::size_t i = 0; std::getline(lines, line); ++i) {
        const auto& u = products[i];
        const std::string pass = i == 0 ? "na" : (bounds->rows[i - 1].pass ? "true" : "false");
        text += line + "," + fk::format_number(u.dV_k) + "," + fk::format_number(u.dP_k) + "," +
                std::string(fk::to_string(u.regime)) + "," + pass + "\n";
      }
      emit(text, out);
      return;
    }

    json uncertainty = json::array();
    for (const auto& u : products) {
      if (u.k == 0) continue;
      uncertainty.push_back({{"k", u.k}, {"dV_k", u.dV_k}, {"dP_k", u.dP_k}, {"regime", fk::to_string(u.regime)}});
    }
    json j;
    j["spec"] = spec;
    j["ds"] = ds;
    j["context"] = {{"mass", mass}, {"dt", dt}, {"L0", l0}, {"V0", ctx.V0()}, {"E0", ctx.E0()}, {"eta0", ctx.eta0()}};
    j["regime"] = fk::classify_regime(ds, ctx);
    j["scales"] = scales;
    j["uncertainty"] = uncertainty;
    j["bounds"] = bounds ? json(*bounds) : json(nullptr);
    emit(fk::dump(j), out);
  }
};

// measure

struct MeasureCmd {
  std::string input;
  std::string scales = "1..6";
  double rho = 3.0;
  double l0 = 1.0;
  std::string method = "grid";
  bool fit = false;
  bool keep_saturated = false;
  std::string format = "json";
  std::string out;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("measure", "Count a polyline on the ladder dx_k = l0 / rho^k");
    sub->add_option("--input", input, "Polyline JSON file (generate or brownian output)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--scales", scales, "Scale indices as first..last")->capture_default_str();
    sub->add_option("--rho", rho, "Ladder ratio, > 1")->check(CLI::Range(1.0, 1e6))->capture_default_str();
    sub->add_option("--l0", l0, "Ladder base length")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--method", method, "grid or divider")->check(CLI::IsMember({"grid", "divider"}))->capture_default_str();
    sub->add_flag("--fit", fit, "Fit the dimension over the measured scales");
    sub->add_flag("--no-saturation-cut", keep_saturated, "Keep saturated scales in the fit");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--out", out, "Output file (default: stdout)");
    sub->callback([this] { run(); });
  }

  void run() {
    const auto [lo, hi] = parse_range(scales);
    if (!(rho > 1.0)) throw UsageError("--rho must be greater than 1");
    const auto poly = fk::read_json_file(input).get<fk::Polyline>();
    fk::MeasureOptions opts;
    opts.method = fk::method_from_string(method);
    opts.L0 = l0;
    opts.rho = rho;
    opts.k_first = lo;
    opts.k_last = hi;
    opts.fit = fit;
    opts.fit_options.exclude_saturated = !keep_saturated;
    const auto result = fk::measure(poly, opts);
    if (format == "csv") {
      std::ostringstream os;
      fk::write_measurement_csv(os, result);
      if (result.fit) {
        const auto& f = *result.fit;
        os << "# fit: ds_hat=" << fk::format_number(f.ds_hat) << " intercept=" << fk::format_number(f.intercept)
           << " r2=" << fk::format_number(f.r2) << " k_fit_range=" << f.k_first << ".." << f.k_last << "\n";
      }
      emit(os.str(), out);
      return;
    }
    emit(fk::dump(json(result)), out);
  }
};

// brownian

struct BrownianCmd {
  int n = 100000;
  std::uint64_t seed = 0;
  double step_std = 1.0;
  std::string out;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("brownian", "Planar Gaussian random walk as polyline JSON");
    sub->add_option("--n", n, "Number of vertices, >= 2")->check(CLI::Range(2, 100'000'000))->capture_default_str();
    sub->add_option("--seed", seed, "PRNG seed")->capture_default_str();
    sub->add_option("--step-std", step_std, "Per-axis increment standard deviation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--out", out, "Output file (default: stdout)");
    sub->callback([this] { run(); });
  }

  void run() { emit(fk::dump(json(fk::brownian_path(n, seed, step_std))), out); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractal kinematics toolkit: generate curves, analyze scale laws, measure dimensions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file of flag values (flags on the command line take precedence)");

  GenerateCmd generate;
  AnalyzeCmd analyze;
  MeasureCmd measure;
  BrownianCmd brownian;
  generate.attach(app);
  analyze.attach(app);
  measure.attach(app);
  brownian.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
