#include "blocknorm/norms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "blocknorm/numfmt.hpp"
#include "blocknorm/spectral.hpp"

namespace blocknorm {

namespace {

void validate_weights(const std::vector<double>& v, int ambient_dim) {
  if (v.empty()) throw ParameterError("c-norm needs at least one weight");
  if (static_cast<int>(v.size()) > ambient_dim) {
    throw DimensionError("c-norm weight vector longer than ambient dimension");
  }
  for (double w : v) {
    if (!std::isfinite(w) || w < 0.0)
      throw ParameterError("c-norm weights must be finite and nonnegative");
  }
  if (v.front() <= 0.0)
    throw ParameterError("c-norm leading weight must be positive");
  for (std::size_t j = 1; j < v.size(); ++j) {
    if (v[j] > v[j - 1])
      throw ParameterError("c-norm weights must be nonincreasing");
  }
}

}  // namespace

UINorm::UINorm(Family family, double p, int r,
               std::vector<std::vector<double>> weights, int ambient_dim)
    : family_(family),
      p_(p),
      r_(r),
      weights_(std::move(weights)),
      ambient_(ambient_dim) {
  if (ambient_ < 1) throw DimensionError("ambient dimension must be positive");
}

UINorm UINorm::schatten(double p, int ambient_dim) {
  if (std::isnan(p) || p < 1.0)
    throw ParameterError("Schatten exponent must satisfy p >= 1");
  return UINorm(Family::kSchatten, p, 0, {}, ambient_dim);
}

UINorm UINorm::operator_norm(int ambient_dim) {
  return schatten(std::numeric_limits<double>::infinity(), ambient_dim);
}

UINorm UINorm::ky_fan(int r, int ambient_dim) {
  if (r < 1 || r > ambient_dim)
    throw ParameterError("Ky Fan order must satisfy 1 <= r <= ambient_dim");
  return UINorm(Family::kKyFan, 0.0, r, {}, ambient_dim);
}

UINorm UINorm::c_norm(std::vector<double> weights, int ambient_dim) {
  validate_weights(weights, ambient_dim);
  std::vector<std::vector<double>> lists;
  lists.push_back(std::move(weights));
  return UINorm(Family::kCNorm, 0.0, 0, std::move(lists), ambient_dim);
}

UINorm UINorm::max_c_norm(std::vector<std::vector<double>> weight_lists,
                          int ambient_dim) {
  if (weight_lists.empty())
    throw ParameterError("max-c norm needs at least one weight vector");
  for (const auto& v : weight_lists) validate_weights(v, ambient_dim);
  return UINorm(Family::kMaxCNorm, 0.0, 0, std::move(weight_lists),
                ambient_dim);
}

std::string UINorm::spec_string() const {
  std::ostringstream out;
  switch (family_) {
    case Family::kSchatten:
      out << "schatten:p=";
      if (std::isinf(p_)) {
        out << "inf";
      } else {
        out << format_double17(p_);
      }
      break;
    case Family::kKyFan:
      out << "kyfan:r=" << r_;
      break;
    case Family::kCNorm:
    case Family::kMaxCNorm: {
      out << (family_ == Family::kCNorm ? "c:" : "maxc:");
      bool first_list = true;
      for (const auto& v : weights_) {
        if (!first_list) out << ";";
        first_list = false;
        out << "[";
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (j) out << ",";
          out << format_double17(v[j]);
        }
        out << "]";
      }
      break;
    }
  }
  return out.str();
}

namespace {

double weighted_sum(const std::vector<double>& weights,
                    const std::vector<double>& s) {
  double sum = 0.0;
  const std::size_t count = std::min(weights.size(), s.size());
  for (std::size_t j = 0; j < count; ++j) sum += weights[j] * s[j];
  return sum;
}

}  // namespace

double eval_norm(const UINorm& norm, const ComplexMatrix& x) {
  if (x.rows() > norm.ambient_dim() || x.cols() > norm.ambient_dim()) {
    throw DimensionError("eval_norm: block exceeds the ambient dimension " +
                         std::to_string(norm.ambient_dim()));
  }
  const std::vector<double> s = singular_values(x);
  switch (norm.family()) {
    case UINorm::Family::kSchatten: {
      if (std::isinf(norm.p())) return s.front();
      if (norm.p() == 1.0) return std::accumulate(s.begin(), s.end(), 0.0);
      const double top = s.front();
      if (top == 0.0) return 0.0;
      double acc = 0.0;  // factor out the top value so powers cannot overflow
      for (double sv : s) acc += std::pow(sv / top, norm.p());
      return top * std::pow(acc, 1.0 / norm.p());
    }
    case UINorm::Family::kKyFan: {
      const std::size_t count =
          std::min<std::size_t>(norm.r(), s.size());
      return std::accumulate(s.begin(), s.begin() + count, 0.0);
    }
    case UINorm::Family::kCNorm:
      return weighted_sum(norm.weight_lists().front(), s);
    case UINorm::Family::kMaxCNorm: {
      double best = 0.0;
      for (const auto& v : norm.weight_lists())
        best = std::max(best, weighted_sum(v, s));
      return best;
    }
  }
  throw ParameterError("eval_norm: unknown norm family");
}

UINorm normalize(const UINorm& norm) {
  switch (norm.family()) {
    case UINorm::Family::kSchatten:
    case UINorm::Family::kKyFan:
      return norm;  // ||E_11|| = 1 already
    case UINorm::Family::kCNorm: {
      std::vector<double> v = norm.weight_lists().front();
      const double lead = v.front();
      for (double& w : v) w /= lead;
      return UINorm::c_norm(std::move(v), norm.ambient_dim());
    }
    case UINorm::Family::kMaxCNorm: {
      double lead = 0.0;  // ||E_11|| = max over lists of the first weight
      for (const auto& v : norm.weight_lists()) lead = std::max(lead, v.front());
      std::vector<std::vector<double>> lists = norm.weight_lists();
      for (auto& v : lists)
        for (double& w : v) w /= lead;
      return UINorm::max_c_norm(std::move(lists), norm.ambient_dim());
    }
  }
  throw ParameterError("normalize: unknown norm family");
}

ConditionBCertificate condition_b(const UINorm& norm, int k, double tol) {
  if (k < 1 || k > norm.ambient_dim()) {
    throw DimensionError("condition_b: k must satisfy 1 <= k <= ambient_dim");
  }
  const UINorm unit = normalize(norm);
  ConditionBCertificate cert;
  cert.k = k;
  cert.norm_of_e11 = eval_norm(unit, ComplexMatrix::identity(1));
  cert.norm_of_partial_identity = eval_norm(unit, ComplexMatrix::identity(k));
  cert.slack = k * cert.norm_of_e11 - cert.norm_of_partial_identity;
  cert.holds = cert.slack <= tol;
  return cert;
}

ConditionBCertificate condition_b(const UINorm& norm, int k) {
  return condition_b(norm, k, 1e-9 * k);
}

int largest_flat_prefix(const UINorm& norm, double tol) {
  int best = 1;
  for (int s = 1; s <= norm.ambient_dim(); ++s) {
    const ConditionBCertificate cert =
        tol < 0.0 ? condition_b(norm, s) : condition_b(norm, s, tol);
    if (cert.holds) best = s;
  }
  return best;
}

namespace {

std::string strip(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  return text.substr(begin, end - begin);
}

double parse_number(const std::string& text, const std::string& spec) {
  const std::string token = strip(text);
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + token + "' in norm spec '" + spec + "'");
  }
  if (consumed != token.size()) {
    throw ParseError("bad number '" + token + "' in norm spec '" + spec + "'");
  }
  return value;
}

int parse_integer(const std::string& text, const std::string& spec) {
  const std::string token = strip(text);
  std::size_t consumed = 0;
  long value = 0;
  try {
    value = std::stol(token, &consumed);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + token + "' in norm spec '" + spec +
                     "'");
  }
  if (consumed != token.size()) {
    throw ParseError("bad integer '" + token + "' in norm spec '" + spec +
                     "'");
  }
  return static_cast<int>(value);
}

std::vector<double> parse_weight_list(const std::string& text,
                                      const std::string& spec) {
  const std::string token = strip(text);
  if (token.size() < 2 || token.front() != '[' || token.back() != ']') {
    throw ParseError("expected a bracketed weight list in norm spec '" + spec +
                     "'");
  }
  std::vector<double> weights;
  const std::string body = token.substr(1, token.size() - 2);
  if (strip(body).empty()) return weights;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    const std::string piece = comma == std::string::npos
                                  ? body.substr(start)
                                  : body.substr(start, comma - start);
    weights.push_back(parse_number(piece, spec));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return weights;
}

}  // namespace

UINorm parse_norm_spec(const std::string& spec, int ambient_dim) {
  const std::string token = strip(spec);
  if (token == "trace") return UINorm::trace(ambient_dim);
  if (token == "op") return UINorm::operator_norm(ambient_dim);
  if (token.rfind("schatten:p=", 0) == 0) {
    const std::string value = token.substr(std::string("schatten:p=").size());
    if (strip(value) == "inf") return UINorm::operator_norm(ambient_dim);
    return UINorm::schatten(parse_number(value, spec), ambient_dim);
  }
  if (token.rfind("kyfan:r=", 0) == 0) {
    const std::string value = token.substr(std::string("kyfan:r=").size());
    return UINorm::ky_fan(parse_integer(value, spec), ambient_dim);
  }
  if (token.rfind("c:", 0) == 0) {
    return UINorm::c_norm(parse_weight_list(token.substr(2), spec),
                          ambient_dim);
  }
  if (token.rfind("maxc:", 0) == 0) {
    std::vector<std::vector<double>> lists;
    const std::string body = token.substr(5);
    std::size_t start = 0;
    while (true) {
      const std::size_t semi = body.find(';', start);
      const std::string piece = semi == std::string::npos
                                    ? body.substr(start)
                                    : body.substr(start, semi - start);
      lists.push_back(parse_weight_list(piece, spec));
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    return UINorm::max_c_norm(std::move(lists), ambient_dim);
  }
  throw ParseError("unrecognized norm spec '" + spec + "'");
}

}  // namespace blocknorm
