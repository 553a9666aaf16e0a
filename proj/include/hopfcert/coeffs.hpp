#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace hopfcert {

// Base of the error taxonomy. Refusal is the "cannot certify / cannot
// process" class (CLI exit code 2); every other EngineError is a contract
// violation by the caller and indicates a bug, not a failed check.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatchError : public EngineError {
 public:
  using EngineError::EngineError;
};

class Refusal : public EngineError {
 public:
  using EngineError::EngineError;
};

enum class FieldKind : std::uint8_t { Rationals, PrimeField };

// Runtime description of the coefficient field. Scalars carry their spec so
// cross-field operations fail loudly instead of corrupting results.
struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint32_t characteristic = 0;  // 0 for Q, odd of: prime p < 2^31

  static FieldSpec rationals();
  static FieldSpec prime_field(std::uint32_t p);  // throws on non-prime or p >= 2^31

  bool operator==(const FieldSpec&) const = default;
  std::string to_string() const;  // "Q", "F7", ...
};

// Exact field element: canonical at all times (lowest terms with positive
// denominator over Q, residue in [0, p) over F_p). No floating point.
class Scalar {
 public:
  Scalar();  // 0 in Q

  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar of_int(const FieldSpec& f, long n);
  // num/den as a field element; den must be nonzero in the field.
  static Scalar of_fraction(const FieldSpec& f, long num, long den);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;  // throws EngineError on zero

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string to_string() const;  // canonical: "5/6", "-2", "3"

 private:
  Scalar(FieldSpec f, mpq_class q);
  Scalar(FieldSpec f, std::uint64_t r);
  void check_same_field(const Scalar& o) const;
  const mpq_class& rat() const { return std::get<mpq_class>(value_); }
  std::uint64_t res() const { return std::get<std::uint64_t>(value_); }

  FieldSpec field_;
  std::variant<mpq_class, std::uint64_t> value_;
};

}  // namespace hopfcert
