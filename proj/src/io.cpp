#include "fracprop/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "fracprop/error.hpp"

namespace fracprop {

namespace {

struct Row {
  double key;
  double re;
  double im;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_field(const std::string& text, const std::string& path, std::size_t line) {
  const std::string field = trim(text);
  double value = 0.0;
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorKind::InvalidInput,
                path + ":" + std::to_string(line) + ": not a finite number: '" + field + "'");
  }
  return value;
}

std::vector<Row> read_rows(const std::string& path, const std::string& header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != header) {
    throw Error(ErrorKind::InvalidInput, path + ": expected header '" + header + "'");
  }
  std::vector<Row> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) fields.push_back(field);
    if (fields.size() != 3) {
      throw Error(ErrorKind::InvalidInput, path + ":" + std::to_string(number) + ": expected 3 fields");
    }
    rows.push_back({parse_field(fields[0], path, number), parse_field(fields[1], path, number),
                    parse_field(fields[2], path, number)});
  }
  return rows;
}

std::string format_rows(const char* header, const Eigen::VectorXd& keys, const Eigen::VectorXcd& values) {
  std::string out = std::string(header) + "\n";
  char buf[128];
  for (Eigen::Index k = 0; k < keys.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", keys[k], values[k].real(), values[k].imag());
    out += buf;
  }
  return out;
}

void dump_into(const Json& v, std::string& out) {
  char buf[64];
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        dump_into(v[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out += buf;
      }
      break;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

SampledSignal read_signal_csv(const std::string& path) {
  const std::vector<Row> rows = read_rows(path, "x,re,im");
  const std::size_t n = rows.size();
  if (n < 8 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::InvalidInput, path + ": row count " + std::to_string(n) + " is not a power of two >= 8");
  }
  const double dx = (rows.back().key - rows.front().key) / static_cast<double>(n - 1);
  if (!(dx > 0.0)) throw Error(ErrorKind::InvalidInput, path + ": x must be strictly increasing");
  for (std::size_t j = 1; j < n; ++j) {
    const double step = rows[j].key - rows[j - 1].key;
    if (!(step > 0.0)) throw Error(ErrorKind::InvalidInput, path + ": x must be strictly increasing");
    if (std::abs(step - dx) > 1e-9 * dx) {
      throw Error(ErrorKind::InvalidInput, path + ": x spacing is not uniform at row " + std::to_string(j + 1));
    }
  }
  const double x_max = 0.5 * static_cast<double>(n) * dx;
  if (std::abs(rows.front().key + x_max) > 1e-9 * x_max) {
    throw Error(ErrorKind::InvalidInput, path + ": grid must start at x = -n dx / 2");
  }
  SampledSignal f{SpatialGrid(n, x_max)};
  for (std::size_t j = 0; j < n; ++j) f.values[static_cast<Eigen::Index>(j)] = Complex(rows[j].re, rows[j].im);
  return f;
}

void write_signal_csv(const std::string& path, const SampledSignal& f) {
  const Eigen::VectorXd x = f.grid.positions();
  write_file_atomic(path, format_rows("x,re,im", x, f.values));
}

Tabulated read_symbol_csv(const std::string& path) {
  const std::vector<Row> rows = read_rows(path, "r,re,im");
  Eigen::VectorXd r(static_cast<Eigen::Index>(rows.size()));
  Eigen::VectorXcd values(r.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    r[static_cast<Eigen::Index>(k)] = rows[k].key;
    values[static_cast<Eigen::Index>(k)] = Complex(rows[k].re, rows[k].im);
  }
  try {
    return Tabulated(r, values, 1e-9);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

void write_symbol_csv(const std::string& path, const Tabulated& profile) {
  write_file_atomic(path, format_rows("r,re,im", profile.radii(), profile.values()));
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + temp.string());
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(temp);
      throw Error(ErrorKind::InvalidInput, "write failed for " + temp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw Error(ErrorKind::InvalidInput, "cannot move output into place at " + path + ": " + ec.message());
  }
}

std::string dump_json(const Json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

Json to_json(const IdentificationResult& r) {
  return Json{{"alpha", r.alpha},
              {"beta", r.beta},
              {"M", r.M},
              {"N", r.N},
              {"gamma", r.gamma},
              {"fit_residual", r.fit_residual},
              {"pair_residual_a", r.pair_residual_a},
              {"pair_residual_b", r.pair_residual_b},
              {"reconstruction_residual", r.reconstruction_residual},
              {"is_identity", r.is_identity},
              {"r_lo", r.r_lo},
              {"r_hi", r.r_hi}};
}

Json to_json(const SemistabilityReport& r) {
  return Json{{"res2", r.res2},
              {"res3", r.res3},
              {"sym_res", r.sym_res},
              {"pass", r.pass},
              {"pair", Json{{"a", static_cast<double>(r.pair.a)}, {"b", static_cast<double>(r.pair.b)}}},
              {"tol", r.tol},
              {"r_lo", r.r_lo},
              {"r_hi", r.r_hi}};
}

Json to_json(const ProductVerdict& v) {
  Json out{{"is_identity", v.is_identity}, {"case_label", to_string(v.case_label)}};
  out["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  out["near_miss"] = v.near_miss;
  return out;
}

Json to_json(const BranchIntegers& b) {
  return Json{{"M", b.M}, {"N", b.N}, {"max_deviation", b.max_deviation}, {"test_points", b.test_points}};
}

}  // namespace fracprop
