#include "incgram/semiring.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "incgram/error.hpp"

namespace incgram {

std::string_view to_string(SemiringKind kind) noexcept {
  switch (kind) {
    case SemiringKind::boolean: return "bool";
    case SemiringKind::real: return "real";
    case SemiringKind::viterbi: return "viterbi";
  }
  return "?";
}

SemiringKind parse_semiring(std::string_view name) {
  if (name == "bool" || name == "boolean") return SemiringKind::boolean;
  if (name == "real") return SemiringKind::real;
  if (name == "viterbi") return SemiringKind::viterbi;
  throw Error("unknown semiring '" + std::string(name) + "' (expected bool, real or viterbi)");
}

Value Value::from_double(SemiringKind kind, double v) {
  if (!std::isfinite(v)) throw Error(fmt::format("weight {} is not finite", v));
  switch (kind) {
    case SemiringKind::boolean:
      return Value::boolean(v != 0.0);
    case SemiringKind::real:
      if (v < 0.0) throw Error(fmt::format("real weight {} is negative", v));
      return Value(kind, v);
    case SemiringKind::viterbi:
      if (v < 0.0 || v > 1.0) throw Error(fmt::format("viterbi weight {} outside [0,1]", v));
      return Value(kind, v);
  }
  return {};
}

namespace {

void require_same(Value a, Value b) {
  if (a.kind() != b.kind()) {
    throw SemiringMismatch(fmt::format("cannot combine {} and {} values", to_string(a.kind()),
                                       to_string(b.kind())));
  }
}

}  // namespace

Value add(Value a, Value b) {
  require_same(a, b);
  switch (a.kind()) {
    case SemiringKind::boolean: return Value::boolean(a.as_bool() || b.as_bool());
    case SemiringKind::real: return Value::from_double(a.kind(), a.as_double() + b.as_double());
    case SemiringKind::viterbi: return a.as_double() >= b.as_double() ? a : b;
  }
  return a;
}

Value mul(Value a, Value b) {
  require_same(a, b);
  if (a.kind() == SemiringKind::boolean) return Value::boolean(a.as_bool() && b.as_bool());
  return Value::from_double(a.kind(), a.as_double() * b.as_double());
}

bool approx_eq(Value a, Value b, double tol) {
  require_same(a, b);
  if (a.kind() == SemiringKind::boolean) return a.as_bool() == b.as_bool();
  return std::abs(a.as_double() - b.as_double()) <= tol;
}

bool approx_eq_relative(Value a, Value b, double rel) {
  require_same(a, b);
  if (a.kind() == SemiringKind::boolean) return a.as_bool() == b.as_bool();
  double scale = std::max(std::abs(a.as_double()), std::abs(b.as_double()));
  return std::abs(a.as_double() - b.as_double()) <= rel * scale;
}

std::string format_value(Value v) {
  if (v.kind() == SemiringKind::boolean) return v.as_bool() ? "true" : "false";
  return fmt::format("{}", v.as_double());
}

}  // namespace incgram
