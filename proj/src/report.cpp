#include "twoproj/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <openssl/evp.h>

namespace twoproj {

namespace {

std::string format17(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void emit(const Json& j, std::string& out, int level) {
  const std::string pad(static_cast<std::size_t>(2 * (level + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * level), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format17(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) out += "\n" + pad;
        emit(e, out, level + 1);
        first = false;
      }
      if (!flat) out += "\n" + close_pad;
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        out += "\n" + pad + Json(key).dump() + ": ";
        emit(value, out, level + 1);
        first = false;
      }
      out += "\n" + close_pad + '}';
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_report(const Json& doc) {
  std::string out;
  emit(doc, out, 0);
  out += '\n';
  return out;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const CMatrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) data.push_back(complex_json(m(i, j)));
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["data"] = std::move(data);
  return out;
}

Json tolerance_json(const Tolerance& tol) {
  Json out;
  out["atol"] = tol.atol;
  out["rank_tol"] = tol.rank_tol;
  return out;
}

Json verification_json(const VerificationReport& rep) {
  Json residuals = Json::array();
  for (const auto& r : rep.residuals) {
    Json item;
    item["name"] = r.name;
    item["value"] = r.value;
    item["bound"] = r.bound;
    item["ok"] = r.ok();
    residuals.push_back(std::move(item));
  }
  Json out;
  out["residuals"] = std::move(residuals);
  out["verdict"] = rep.verdict;
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace twoproj
