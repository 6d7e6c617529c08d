#include "smc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "smc/errors.hpp"

namespace smc {

namespace {

constexpr const char* kHeader = "algorithm,N,K,sc,source";

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

int to_int(const std::string& s, const std::string& context) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) throw DomainError("bad integer '" + s + "' in " + context);
  return v;
}

double to_double(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("bad number '" + s + "' in " + context);
  }
  if (used != s.size()) throw DomainError("bad number '" + s + "' in " + context);
  return v;
}

// One list item; `n` is substituted for the literal N when present.
struct RangeItem {
  std::string lo, hi;
  int step = 1;
};

RangeItem parse_item(const std::string& raw, const std::string& text) {
  const std::string item = trim(raw);
  if (item.empty()) throw DomainError("empty item in range '" + text + "'");
  RangeItem r;
  std::string body = item;
  if (const auto colon = item.find(':'); colon != std::string::npos) {
    body = item.substr(0, colon);
    r.step = to_int(trim(item.substr(colon + 1)), "range '" + text + "'");
    if (r.step < 1) throw DomainError("range step must be >= 1 in '" + text + "'");
  }
  if (const auto dots = body.find(".."); dots != std::string::npos) {
    r.lo = trim(body.substr(0, dots));
    r.hi = trim(body.substr(dots + 2));
  } else {
    if (item.find(':') != std::string::npos) throw DomainError("step without a range in '" + text + "'");
    r.lo = r.hi = trim(body);
  }
  return r;
}

int resolve(const std::string& v, std::optional<int> n, const std::string& text) {
  if (v == "N") {
    if (!n) throw DomainError("'N' is only allowed in K ranges: '" + text + "'");
    return *n;
  }
  return to_int(v, "range '" + text + "'");
}

std::vector<int> expand(const std::vector<RangeItem>& items, std::optional<int> n, const std::string& text) {
  std::set<int> out;
  for (const auto& it : items) {
    const int lo = resolve(it.lo, n, text);
    const int hi = resolve(it.hi, n, text);
    if (!n && lo > hi) throw DomainError("empty range '" + text + "'");
    for (long long v = lo; v <= hi; v += it.step) out.insert(static_cast<int>(v));
  }
  return {out.begin(), out.end()};
}

}  // namespace

std::string format_sc(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_dataset_csv(std::ostream& os, const Dataset& d) {
  os << kHeader << '\n';
  for (const auto& r : d.records())
    os << to_string(r.algorithm) << ',' << r.n << ',' << r.k << ',' << format_sc(r.value) << ','
       << to_string(r.source) << '\n';
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& d) {
  std::ostringstream os;
  write_dataset_csv(os, d);
  write_file_atomic(path, os.str());
}

Dataset read_dataset_csv(std::istream& is) {
  Dataset d;
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (!header) {
      if (trim(line) != kHeader) throw DomainError("line 1: expected header '" + std::string(kHeader) + "'");
      header = true;
      continue;
    }
    const std::string ctx = "line " + std::to_string(line_no);
    const auto f = split(line, ',');
    if (f.size() != 5) throw DomainError(ctx + ": expected 5 fields");
    try {
      d.insert({parse_algorithm(trim(f[0])), to_int(trim(f[1]), ctx), to_int(trim(f[2]), ctx),
                to_double(trim(f[3]), ctx), parse_source(trim(f[4]))});
    } catch (const DomainError& e) {
      const std::string msg = e.what();
      throw DomainError(msg.rfind(ctx, 0) == 0 ? msg : ctx + ": " + msg);
    }
  }
  if (!header) throw DomainError("missing header '" + std::string(kHeader) + "'");
  return d;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path.string());
  try {
    return read_dataset_csv(in);
  } catch (const DomainError& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<RangeItem> items;
  for (const auto& part : split(text, ',')) items.push_back(parse_item(part, text));
  if (items.empty()) throw DomainError("empty range");
  return expand(items, std::nullopt, text);
}

KRange parse_k_range(const std::string& text) {
  std::vector<RangeItem> items;
  for (const auto& part : split(text, ',')) items.push_back(parse_item(part, text));
  if (items.empty()) throw DomainError("empty range");
  // Validate the syntax once with a placeholder N.
  (void)expand(items, 1, text);
  return [items, text](int n) { return expand(items, n, text); };
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write " + tmp.string());
    out << text;
    if (!out) throw DomainError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace smc
