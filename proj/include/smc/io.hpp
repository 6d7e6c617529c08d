#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "smc/dataset.hpp"

namespace smc {

// CSV with header `algorithm,N,K,sc,source`, sc printed with 6 decimals.
void write_dataset_csv(std::ostream& os, const Dataset& d);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& d);
// Throws DomainError with the offending line number on malformed input.
Dataset read_dataset_csv(std::istream& is);
Dataset read_dataset_csv(const std::filesystem::path& path);

// Value list syntax: `7`, `lo..hi`, `lo..hi:step`, or a comma list of those.
// Result is sorted and deduplicated.
std::vector<int> parse_int_list(const std::string& text);

// Same syntax where the literal `N` stands for the current N, e.g. `2..N`.
// Values outside [1, N] are kept so the caller can report them.
using KRange = std::function<std::vector<int>(int n)>;
KRange parse_k_range(const std::string& text);

// Fixed 6-decimal formatting used for every SC value written.
std::string format_sc(double v);

// Writes `text` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace smc
