#include "lab/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "parawave/errors.hpp"
#include "parawave/format.hpp"

namespace parawave::lab {

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void ensure_parent_dir(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace

void RunReport::add(const std::string& name, double value, double tol_abs,
                    double tol_rel) {
  measured.push_back({name, value, tol_abs, tol_rel});
}

void RunReport::criterion(const std::string& name, bool pass,
                          const std::string& detail) {
  criteria.push_back({name, pass, detail});
}

const Measured& RunReport::find(const std::string& name) const {
  for (const auto& m : measured)
    if (m.name == name) return m;
  throw Error("measured quantity '" + name + "' not in report");
}

bool RunReport::all_pass() const {
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return true;
}

std::string RunReport::to_json() const {
  std::ostringstream out;
  out << "{\n";
  out << "  \"experiment\": \"" << experiment_name(config.experiment)
      << "\",\n";
  out << "  \"config\": {\n";
  const auto items = config_items(config);
  for (std::size_t i = 0; i < items.size(); ++i) {
    out << "    \"" << items[i].first << "\": \""
        << json_escape(items[i].second) << "\"";
    out << (i + 1 < items.size() ? ",\n" : "\n");
  }
  out << "  },\n";
  out << "  \"measured\": {\n";
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const auto& m = measured[i];
    out << "    \"" << json_escape(m.name) << "\": {\"value\": "
        << format_double(m.value) << ", \"tol_abs\": "
        << format_double(m.tol_abs) << ", \"tol_rel\": "
        << format_double(m.tol_rel) << "}";
    out << (i + 1 < measured.size() ? ",\n" : "\n");
  }
  out << "  },\n";
  out << "  \"criteria\": [\n";
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    out << "    {\"name\": \"" << json_escape(c.name) << "\", \"pass\": "
        << (c.pass ? "true" : "false") << ", \"detail\": \""
        << json_escape(c.detail) << "\"}";
    out << (i + 1 < criteria.size() ? ",\n" : "\n");
  }
  out << "  ],\n";
  out << "  \"artifacts\": [";
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    out << "\"" << json_escape(artifacts[i]) << "\"";
    if (i + 1 < artifacts.size()) out << ", ";
  }
  out << "],\n";
  out << "  \"wall_ms\": " << format_double(wall_ms) << "\n";
  out << "}\n";
  return out.str();
}

void write_field_csv(const std::string& path, const Field& f) {
  ensure_parent_dir(path);
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  const Grid& g = f.grid();
  out << (g.dim() == 1 ? "x,value\n" : "x,y,value\n");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto pt = g.point(i);
    out << format_double(pt[0]) << ",";
    if (g.dim() == 2) out << format_double(pt[1]) << ",";
    out << format_double(f[i]) << "\n";
  }
}

void write_spectrum_csv(const std::string& path, const Field& f) {
  ensure_parent_dir(path);
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  const Grid& g = f.grid();
  const auto& sp = f.spectrum();
  out << (g.dim() == 1 ? "kx,re,im\n" : "kx,ky,re,im\n");
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const auto xi = g.wavenumber(i);
    out << format_double(xi[0]) << ",";
    if (g.dim() == 2) out << format_double(xi[1]) << ",";
    out << format_double(sp[i].real()) << "," << format_double(sp[i].imag())
        << "\n";
  }
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  ensure_parent_dir(path);
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << header[i];
    out << (i + 1 < header.size() ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << format_double(row[i]);
      out << (i + 1 < row.size() ? "," : "\n");
    }
  }
}

void write_text(const std::string& path, const std::string& text) {
  ensure_parent_dir(path);
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> compare_golden(const RunReport& report,
                                        const std::string& golden_path,
                                        bool bless) {
  if (bless) {
    write_text(golden_path, report.to_json());
    return {"blessed " + golden_path};
  }
  std::ifstream in(golden_path);
  if (!in)
    throw ConfigInvalid("golden file '" + golden_path +
                        "' does not exist (use --bless to create it)");
  nlohmann::json golden;
  try {
    in >> golden;
  } catch (const std::exception& e) {
    throw GoldenMismatch("golden file '" + golden_path +
                         "' is not valid JSON: " + e.what());
  }

  std::vector<std::string> diff;
  std::vector<std::string> offending;

  if (golden.value("experiment", "") !=
      std::string(experiment_name(report.config.experiment)))
    offending.push_back("experiment");

  // The echoed configuration must match exactly; output paths may differ
  // between machines.
  const auto items = config_items(report.config);
  const auto& gconfig = golden.at("config");
  for (const auto& [key, value] : items) {
    if (key == "run.output_dir") continue;
    if (!gconfig.contains(key) || gconfig.at(key).get<std::string>() != value)
      offending.push_back("config." + key);
  }

  const auto& gmeasured = golden.at("measured");
  for (const auto& m : report.measured) {
    if (!gmeasured.contains(m.name)) {
      offending.push_back(m.name + " (missing from golden)");
      continue;
    }
    const double old_value = gmeasured.at(m.name).at("value").get<double>();
    const double scale = std::max(std::abs(old_value), std::abs(m.value));
    const double gap = std::abs(m.value - old_value);
    const double tol = m.tol_abs + m.tol_rel * scale;
    if (!(gap <= tol)) {
      offending.push_back(m.name);
    } else if (gap > 0.0) {
      diff.push_back(m.name + ": " + format_double(old_value) + " -> " +
                     format_double(m.value) + " (within " +
                     format_double(tol) + ")");
    }
  }
  for (auto it = gmeasured.begin(); it != gmeasured.end(); ++it) {
    bool known = false;
    for (const auto& m : report.measured) known |= m.name == it.key();
    if (!known) offending.push_back(it.key() + " (golden only)");
  }

  const auto& gcriteria = golden.at("criteria");
  if (gcriteria.size() != report.criteria.size()) {
    offending.push_back("criteria (count changed)");
  } else {
    for (std::size_t i = 0; i < report.criteria.size(); ++i) {
      const auto& c = report.criteria[i];
      const auto& gc = gcriteria.at(i);
      if (gc.at("name").get<std::string>() != c.name ||
          gc.at("pass").get<bool>() != c.pass)
        offending.push_back("criteria[" + c.name + "]");
    }
  }

  if (!offending.empty()) {
    std::string msg = "golden mismatch vs '" + golden_path + "' on: ";
    for (std::size_t i = 0; i < offending.size(); ++i) {
      if (i) msg += ", ";
      msg += offending[i];
    }
    throw GoldenMismatch(msg);
  }
  return diff;
}

}  // namespace parawave::lab
