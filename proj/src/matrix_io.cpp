#include "twoproj/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace twoproj {

namespace {

std::string position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << "line " << line << ", column " << col;
  return os.str();
}

Index positive_int(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw Error(ErrorKind::DimensionError, std::string("'") + key + "' must be a positive integer");
  return static_cast<Index>(v.get<long long>());
}

}  // namespace

CMatrix parse_matrix_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, position_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "matrix document must be a JSON object");
  const Index rows = positive_int(doc, "rows");
  const Index cols = positive_int(doc, "cols");
  if (!doc.contains("data") || !doc.at("data").is_array())
    throw Error(ErrorKind::ParseError, "field 'data' must be an array");
  const auto& data = doc.at("data");
  if (static_cast<Index>(data.size()) != rows * cols) {
    std::ostringstream os;
    os << "data has " << data.size() << " entries, expected rows*cols = " << rows * cols;
    throw Error(ErrorKind::DimensionError, os.str());
  }
  CMatrix m(rows, cols);
  for (Index k = 0; k < rows * cols; ++k) {
    const auto& entry = data[static_cast<std::size_t>(k)];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      std::ostringstream os;
      os << "data[" << k << "] must be a [re, im] pair of numbers";
      throw Error(ErrorKind::ParseError, os.str());
    }
    const double re = entry[0].get<double>();
    const double im = entry[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      std::ostringstream os;
      os << "data[" << k << "] is not finite";
      throw Error(ErrorKind::ParseError, os.str());
    }
    m(k / cols, k % cols) = Complex(re, im);
  }
  return m;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CMatrix parse_matrix_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_matrix_text(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string format_shortest(double x) {
  // "-0" would be read back as the integer 0
  if (x == 0.0 && std::signbit(x)) return "-0.0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string write_matrix(const CMatrix& m) {
  std::string out = "{\"rows\":" + std::to_string(m.rows()) + ",\"cols\":" + std::to_string(m.cols()) +
                    ",\"data\":[";
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      if (i != 0 || j != 0) out += ',';
      out += '[' + format_shortest(m(i, j).real()) + ',' + format_shortest(m(i, j).imag()) + ']';
    }
  out += "]}\n";
  return out;
}

void write_matrix_file(const std::filesystem::path& path, const CMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
  out << write_matrix(m);
}

}  // namespace twoproj
