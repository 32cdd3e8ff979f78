// SPDX-License-Identifier: Apache-2.0
#include "illspec/io/serialize.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "illspec/util/errors.hpp"

namespace illspec::io {
namespace {

void check_schema(const nlohmann::json& j) {
  const int v = j.at("schema_version").get<int>();
  if (v != kSchemaVersion) throw ValidationError("unsupported schema_version " + std::to_string(v));
}

std::string hex_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ValidationError("matrix json: bad double entry '" + s + "'");
  return v;
}

template <class T, class Fn>
nlohmann::json rows_json(const DenseMatrix<T>& m, Fn&& fmt) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(fmt(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T, class Fn>
DenseMatrix<T> rows_from_json(const nlohmann::json& rows, int n, Fn&& parse) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw ValidationError("matrix json: expected " + std::to_string(n) + " rows");
  }
  std::vector<T> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw ValidationError("matrix json: ragged rows");
    for (const auto& x : row) flat.push_back(parse(x.get<std::string>()));
  }
  DenseMatrix<T> m(n, n, flat.empty() ? T() : flat.front());
  m.data() = std::move(flat);
  return m;
}

}  // namespace

nlohmann::json gram_to_json(const GramMatrix& g) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["scheme"] = to_string(g.scheme);
  j["operator"] = g.op.name();
  j["product"] = g.op.product_string();
  j["N"] = g.n;
  j["precision"] = g.precision ? nlohmann::json(*g.precision) : nlohmann::json(nullptr);
  j["series_tol"] = g.series_tol ? nlohmann::json(g.series_tol->to_hex()) : nlohmann::json(nullptr);
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, DenseMatrix<BigRational>>) {
          j["arithmetic"] = "exact";
          j["entries"] = rows_json(m, [](const BigRational& q) { return q.to_string(); });
        } else if constexpr (std::is_same_v<M, DenseMatrix<BigFloat>>) {
          j["arithmetic"] = "float";
          j["entries"] = rows_json(m, [](const BigFloat& x) { return x.to_hex(); });
        } else {
          j["arithmetic"] = "double";
          j["entries"] = rows_json(m, [](double x) { return hex_double(x); });
        }
      },
      g.entries);
  return j;
}

GramMatrix gram_from_json(const nlohmann::json& j) {
  try {
    check_schema(j);
    const int n = j.at("N").get<int>();
    if (n < 1) throw ValidationError("matrix json: N must be >= 1");
    const std::string arith = j.at("arithmetic").get<std::string>();
    GramMatrix g{DenseMatrix<BigRational>(), CompositionSpec::from_short_name(j.at("operator").get<std::string>()),
                 parse_scheme(j.at("scheme").get<std::string>()), n, std::nullopt, std::nullopt};
    if (!j.at("precision").is_null()) g.precision = j.at("precision").get<mpfr_prec_t>();
    const mpfr_prec_t p = g.precision.value_or(kDefaultPrecision);
    if (!j.at("series_tol").is_null()) g.series_tol = BigFloat::parse(j.at("series_tol").get<std::string>(), p);
    const auto& rows = j.at("entries");
    if (arith == "exact") {
      g.entries = rows_from_json<BigRational>(rows, n, [](const std::string& s) { return BigRational::parse(s); });
    } else if (arith == "float") {
      g.entries = rows_from_json<BigFloat>(rows, n, [p](const std::string& s) { return BigFloat::parse(s, p); });
    } else if (arith == "double") {
      g.entries = rows_from_json<double>(rows, n, parse_double);
    } else {
      throw ValidationError("matrix json: unknown arithmetic '" + arith + "'");
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("matrix json: ") + e.what());
  }
}

std::string fmt_g16(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16g", x);
  return buf;
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream os;
  os << "index,sigma,log10_sigma,trusted\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const BigFloat& v = s.values[i];
    char lg[64];
    if (v.is_zero()) {
      std::snprintf(lg, sizeof lg, "-inf");
    } else {
      std::snprintf(lg, sizeof lg, "%.17g", log10(v).to_double());
    }
    os << (i + 1) << ',' << v.to_decimal(40) << ',' << lg << ','
       << (s.trusted(static_cast<int>(i + 1)) ? "true" : "false") << '\n';
  }
  return os.str();
}

nlohmann::json spectrum_to_json(const Spectrum& s) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["operator"] = s.op ? nlohmann::json(s.op->name()) : nlohmann::json(nullptr);
  j["scheme"] = s.scheme ? nlohmann::json(to_string(*s.scheme)) : nlohmann::json(nullptr);
  j["N"] = s.n;
  j["precision"] = s.precision;
  j["guard_bits"] = kGuardBits;
  j["trust_cutoff"] = s.trust_cutoff;
  j["clamped"] = s.clamped;
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& v : s.values) vals.push_back(v.to_hex());
  j["sigma_hex"] = std::move(vals);
  return j;
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
  try {
    check_schema(j);
    Spectrum s;
    s.precision = j.at("precision").get<mpfr_prec_t>();
    for (const auto& v : j.at("sigma_hex")) s.values.push_back(BigFloat::parse(v.get<std::string>(), s.precision));
    s.n = j.at("N").get<int>();
    s.trust_cutoff = j.at("trust_cutoff").get<int>();
    s.clamped = j.value("clamped", 0);
    if (!j.at("operator").is_null()) s.op = CompositionSpec::from_short_name(j.at("operator").get<std::string>());
    if (!j.at("scheme").is_null()) s.scheme = parse_scheme(j.at("scheme").get<std::string>());
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("spectrum json: ") + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

}  // namespace illspec::io
