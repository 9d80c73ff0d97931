#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace incgram {

/// The weight carriers supported by the engine. All three are commutative.
///  - boolean: ({false,true}, or, and)
///  - real:    (R>=0, +, *)
///  - viterbi: ([0,1], max, *)
enum class SemiringKind : std::uint8_t { boolean, real, viterbi };

std::string_view to_string(SemiringKind kind) noexcept;

/// Accepts "bool", "real", "viterbi" (and "boolean" as an alias).
SemiringKind parse_semiring(std::string_view name);

/// An element of one of the semirings above. The kind travels with the value
/// so that mixing instances is caught at the operation boundary.
class Value {
 public:
  Value() = default;

  static Value zero(SemiringKind kind) noexcept { return Value(kind, 0.0); }
  static Value one(SemiringKind kind) noexcept { return Value(kind, 1.0); }
  static Value boolean(bool b) noexcept {
    return Value(SemiringKind::boolean, b ? 1.0 : 0.0);
  }

  /// Converts a plain number into `kind`, validating the carrier:
  /// boolean maps nonzero to true, real requires a finite v >= 0 and viterbi
  /// requires v in [0,1]. Throws Error otherwise.
  static Value from_double(SemiringKind kind, double v);

  SemiringKind kind() const noexcept { return kind_; }
  double as_double() const noexcept { return v_; }
  bool as_bool() const noexcept { return v_ != 0.0; }
  bool is_zero() const noexcept { return v_ == 0.0; }

  friend bool operator==(const Value&, const Value&) = default;

 private:
  Value(SemiringKind kind, double v) noexcept : kind_(kind), v_(v) {}

  SemiringKind kind_ = SemiringKind::boolean;
  double v_ = 0.0;
};

Value add(Value a, Value b);
Value mul(Value a, Value b);
inline Value zero(SemiringKind kind) noexcept { return Value::zero(kind); }
inline Value one(SemiringKind kind) noexcept { return Value::one(kind); }

/// |a - b| <= tol for the numeric semirings, exact equality for boolean.
bool approx_eq(Value a, Value b, double tol);

/// |a - b| <= rel * max(|a|, |b|); exact for boolean.
bool approx_eq_relative(Value a, Value b, double rel);

/// "true"/"false" for boolean, shortest round-trip decimal otherwise.
std::string format_value(Value v);

}  // namespace incgram
