#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

namespace ldrop::cli {

// What one subcommand produces: a CSV table, a JSON summary and optional
// two-column plot files.
struct Output {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  nlohmann::json summary = nlohmann::json::object();
  struct Plot {
    std::string name;
    std::string xlabel, ylabel;
    std::vector<std::array<double, 2>> points;
  };
  std::vector<Plot> plots;
};

std::string num(double v);

// prefix empty: CSV to stdout. Otherwise PREFIX.csv, PREFIX.json, PREFIX_<plot>.dat.
// Throws IoError when a file cannot be written.
void emit(const Output& out, const nlohmann::json& provenance, const std::string& prefix);

// Reads key=value lines ('#' starts a comment) and appends "--key value" for every key
// not already given on the command line.
void merge_config_file(const std::string& path, std::vector<std::string>& args);

}  // namespace ldrop::cli
