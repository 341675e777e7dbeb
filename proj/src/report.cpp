#include "fk/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fk/serialize.hpp"

namespace fk {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* suffix) {
  return std::filesystem::path(stem.string() + suffix);
}

}  // namespace

nlohmann::json bundle_json(const ReportInputs& in) {
  nlohmann::json j = nlohmann::json::object();
  if (in.scales) j["scales"] = *in.scales;
  if (in.measurement) j["measurement"] = *in.measurement;
  if (in.bounds) j["bounds"] = *in.bounds;
  return j;
}

std::vector<std::filesystem::path> write_report(const ReportInputs& in, const std::filesystem::path& stem) {
  if (in.empty()) throw std::invalid_argument("report needs at least one of scales, measurement, bounds");

  std::vector<std::filesystem::path> written;
  const auto json_path = with_suffix(stem, ".json");
  write_file(json_path, dump(bundle_json(in)));
  written.push_back(json_path);

  if (in.scales) {
    std::ostringstream os;
    write_scale_csv(os, *in.scales);
    const auto p = with_suffix(stem, ".scales.csv");
    write_file(p, os.str());
    written.push_back(p);
  }
  if (in.measurement) {
    std::ostringstream os;
    write_measurement_csv(os, *in.measurement);
    const auto p = with_suffix(stem, ".measurement.csv");
    write_file(p, os.str());
    written.push_back(p);
  }
  return written;
}

}  // namespace fk
