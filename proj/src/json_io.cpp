#include "blocknorm/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "blocknorm/numfmt.hpp"
#include "json.hpp"

namespace blocknorm {

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;  // value directly after its key
    return;
  }
  if (first_.empty()) return;  // single top-level value
  if (first_.back()) {
    first_.back() = false;
    return;
  }
  out_ << ',';
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ << '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  first_.pop_back();
  out_ << '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ << '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  first_.pop_back();
  out_ << ']';
  return *this;
}

namespace {

void write_escaped(std::ostream& out, const std::string& text) {
  out << '"';
  for (char c : text) {
    switch (c) {
      case '"':
        out << "\\\"";
        break;
      case '\\':
        out << "\\\\";
        break;
      case '\n':
        out << "\\n";
        break;
      case '\t':
        out << "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out << buf;
        } else {
          out << c;
        }
    }
  }
  out << '"';
}

}  // namespace

JsonWriter& JsonWriter::key(const std::string& name) {
  if (!first_.empty()) {
    if (first_.back()) {
      first_.back() = false;
    } else {
      out_ << ',';
    }
  }
  write_escaped(out_, name);
  out_ << ':';
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& text) {
  separator();
  write_escaped(out_, text);
  return *this;
}

JsonWriter& JsonWriter::value(const char* text) {
  return value(std::string(text));
}

JsonWriter& JsonWriter::value(double number) {
  separator();
  if (std::isinf(number)) {
    out_ << (number > 0 ? "\"inf\"" : "\"-inf\"");
  } else if (std::isnan(number)) {
    out_ << "null";
  } else {
    out_ << format_double17(number);
  }
  return *this;
}

JsonWriter& JsonWriter::value(int number) {
  separator();
  out_ << number;
  return *this;
}

JsonWriter& JsonWriter::value(long number) {
  separator();
  out_ << number;
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t number) {
  separator();
  out_ << number;
  return *this;
}

JsonWriter& JsonWriter::value(bool flag) {
  separator();
  out_ << (flag ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value_null() {
  separator();
  out_ << "null";
  return *this;
}

void write_matrix(JsonWriter& w, const ComplexMatrix& m) {
  w.begin_object();
  w.key("rows").value(m.rows());
  w.key("cols").value(m.cols());
  w.key("data").begin_array();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      w.begin_array().value(m(i, j).real()).value(m(i, j).imag()).end_array();
    }
  }
  w.end_array();
  w.end_object();
}

MatrixFile parse_matrix_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix file: ") + e.what());
  }
  if (!doc.is_object())
    throw ParseError("matrix file: top level must be an object");
  if (!doc.contains("rows") || !doc["rows"].is_number_integer() ||
      !doc.contains("cols") || !doc["cols"].is_number_integer()) {
    throw ParseError("matrix file: integer fields 'rows' and 'cols' required");
  }
  const int rows = doc["rows"].get<int>();
  const int cols = doc["cols"].get<int>();
  if (rows < 1 || cols < 1)
    throw ParseError("matrix file: dimensions must be positive");
  if (!doc.contains("data") || !doc["data"].is_array()) {
    throw ParseError("matrix file: 'data' must be an array of [re, im] pairs");
  }
  const auto& data = doc["data"];
  if (data.size() != static_cast<std::size_t>(rows) * cols) {
    throw ParseError("matrix file: 'data' has " + std::to_string(data.size()) +
                     " entries, expected " + std::to_string(rows * cols));
  }
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const auto& cell : data) {
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
        !cell[1].is_number()) {
      throw ParseError("matrix file: every data entry must be [re, im]");
    }
    entries.emplace_back(cell[0].get<double>(), cell[1].get<double>());
  }
  MatrixFile file;
  try {
    file.matrix = ComplexMatrix(rows, cols, std::move(entries));
  } catch (const Error& e) {
    throw ParseError(std::string("matrix file: ") + e.what());
  }
  if (doc.contains("partition")) {
    if (!doc["partition"].is_array())
      throw ParseError("matrix file: 'partition' must be an array");
    int total = 0;
    for (const auto& part : doc["partition"]) {
      if (!part.is_number_integer() || part.get<int>() < 1)
        throw ParseError("matrix file: partition sizes must be positive integers");
      file.partition.push_back(part.get<int>());
      total += part.get<int>();
    }
    if (rows != cols)
      throw ParseError("matrix file: partitioned matrices must be square");
    if (total != rows) {
      throw ParseError("matrix file: partition sums to " +
                       std::to_string(total) + ", expected " +
                       std::to_string(rows));
    }
  }
  return file;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_json(buffer.str());
}

std::string matrix_file_to_string(const MatrixFile& file) {
  std::ostringstream out;
  JsonWriter w(out);
  w.begin_object();
  w.key("rows").value(file.matrix.rows());
  w.key("cols").value(file.matrix.cols());
  w.key("data").begin_array();
  for (int i = 0; i < file.matrix.rows(); ++i) {
    for (int j = 0; j < file.matrix.cols(); ++j) {
      w.begin_array()
          .value(file.matrix(i, j).real())
          .value(file.matrix(i, j).imag())
          .end_array();
    }
  }
  w.end_array();
  if (!file.partition.empty()) {
    w.key("partition").begin_array();
    for (int s : file.partition) w.value(s);
    w.end_array();
  }
  w.end_object();
  return out.str();
}

}  // namespace blocknorm
