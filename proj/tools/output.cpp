#include "output.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "ldrop/core/csv.hpp"
#include "ldrop/core/types.hpp"

namespace ldrop::cli {

std::string num(double v) { return format_double(v); }

namespace {

void write_csv(std::ostream& os, const Output& out) {
  CsvWriter w(os);
  w.row(out.header);
  for (const auto& r : out.rows) w.row(r);
}

std::ofstream open(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

void close(std::ofstream& f, const std::string& path) {
  f.close();
  if (!f) throw IoError("write failed for " + path);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void emit(const Output& out, const nlohmann::json& provenance, const std::string& prefix) {
  if (prefix.empty()) {
    write_csv(std::cout, out);
    return;
  }
  {
    const std::string path = prefix + ".csv";
    auto f = open(path);
    write_csv(f, out);
    close(f, path);
  }
  {
    const std::string path = prefix + ".json";
    auto f = open(path);
    nlohmann::json j = out.summary;
    j["provenance"] = provenance;
    f << j.dump(2) << '\n';
    close(f, path);
  }
  for (const auto& p : out.plots) {
    const std::string path = prefix + "_" + p.name + ".dat";
    auto f = open(path);
    f << "# " << p.xlabel << ' ' << p.ylabel << '\n';
    for (const auto& xy : p.points) f << num(xy[0]) << ' ' << num(xy[1]) << '\n';
    close(f, path);
  }
}

void merge_config_file(const std::string& path, std::vector<std::string>& args) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ArgumentError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    if (given) continue;
    args.push_back(flag);
    args.push_back(value);
  }
}

}  // namespace ldrop::cli
