#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "blocknorm/matrix.hpp"

namespace blocknorm {

// Streaming JSON writer with deterministic output: keys appear in call
// order, doubles carry 17 significant digits, and infinities (legal only in
// construction parameters) become the strings "inf"/"-inf".
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(const std::string& text);
  JsonWriter& value(const char* text);
  JsonWriter& value(double number);
  JsonWriter& value(int number);
  JsonWriter& value(long number);
  JsonWriter& value(std::uint64_t number);
  JsonWriter& value(bool flag);
  JsonWriter& value_null();

 private:
  void separator();
  std::ostream& out_;
  std::vector<bool> first_;  // one flag per open container
  bool pending_key_ = false;
};

// The on-disk matrix format: {"rows": r, "cols": c,
// "data": [[re, im], ...], "partition": [n1, ...]} with partition optional.
struct MatrixFile {
  ComplexMatrix matrix;
  std::vector<int> partition;  // empty when the file carries none
};

MatrixFile parse_matrix_json(const std::string& text);
MatrixFile read_matrix_file(const std::string& path);
std::string matrix_file_to_string(const MatrixFile& file);

// Emits {"rows", "cols", "data"} for an arbitrary complex matrix.
void write_matrix(JsonWriter& w, const ComplexMatrix& m);

}  // namespace blocknorm
