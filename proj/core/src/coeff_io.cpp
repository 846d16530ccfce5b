#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "twistzero/error.hpp"
#include "twistzero/qseries.hpp"

namespace twistzero {
namespace {

constexpr const char* kMagic = "# twistzero-coeffs v1 ";

[[noreturn]] void parse_error(const std::string& path, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, path + ":" + std::to_string(line) + ": " + what);
}

std::string field(const std::string& header, const std::string& key, std::size_t from, std::size_t to) {
  const std::string tag = key + "=";
  const auto pos = header.find(tag, from);
  if (pos == std::string::npos || pos >= to) return {};
  const auto start = pos + tag.size();
  auto end = header.find(' ', start);
  if (end == std::string::npos || end > to) end = to;
  return header.substr(start, end - start);
}

}  // namespace

void write_coeffs(const CoeffTable& table, std::ostream& out) {
  char buf[96];
  out << kMagic << "weight2=" << table.weight2 << " level=" << table.level << " label=" << table.label
      << " count=" << table.count() << '\n';
  for (std::size_t n = 1; n <= table.count(); ++n) {
    std::snprintf(buf, sizeof buf, "%zu %.17g %.17g\n", n, table.c[n - 1].real(), table.c[n - 1].imag());
    out << buf;
  }
}

void save_coeffs(const CoeffTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  write_coeffs(table, out);
  out.close();
  if (!out) throw Error(ErrorCode::Io, "error writing " + path);
}

CoeffTable load_coeffs(const std::string& path, std::optional<int> expected_weight2) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) parse_error(path, 1, "missing header");
  if (header.rfind(kMagic, 0) != 0) parse_error(path, 1, "header must start with '# twistzero-coeffs v1'");
  // label=<text> may contain spaces, so count= is located from the right.
  const auto count_pos = header.rfind(" count=");
  const auto label_pos = header.find(" label=");
  if (count_pos == std::string::npos || label_pos == std::string::npos || label_pos > count_pos) {
    parse_error(path, 1, "header needs weight2=, level=, label= and count= fields");
  }
  int weight2 = 0;
  long long level = 0;
  std::size_t count = 0;
  try {
    weight2 = std::stoi(field(header, "weight2", 0, label_pos));
    level = std::stoll(field(header, "level", 0, label_pos));
    count = std::stoull(header.substr(count_pos + 7));
  } catch (const std::exception&) {
    parse_error(path, 1, "malformed numeric header field");
  }
  const std::string label = header.substr(label_pos + 7, count_pos - label_pos - 7);
  if (expected_weight2 && *expected_weight2 != weight2) {
    throw Error(ErrorCode::WeightMismatch, path + " has weight2=" + std::to_string(weight2) +
                                               " but weight2=" + std::to_string(*expected_weight2) +
                                               " was requested");
  }
  std::vector<cplx> c(count);
  std::string line;
  for (std::size_t n = 1; n <= count; ++n) {
    const std::size_t lineno = n + 1;
    if (!std::getline(in, line)) parse_error(path, lineno, "file ends before coefficient " + std::to_string(n));
    std::istringstream ls(line);
    std::size_t idx = 0;
    double re = 0.0;
    double im = 0.0;
    std::string extra;
    if (!(ls >> idx >> re >> im) || (ls >> extra)) parse_error(path, lineno, "expected 'n c_re c_im'");
    if (idx != n) parse_error(path, lineno, "expected index " + std::to_string(n));
    c[n - 1] = {re, im};
  }
  for (std::size_t lineno = count + 2; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) parse_error(path, lineno, "trailing data");
  }
  return make_table(weight2, level, label, std::move(c));
}

}  // namespace twistzero
