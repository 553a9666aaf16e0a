#include "hopfcert/coeffs.hpp"

namespace hopfcert {

namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Residue in [0, p) of n.
std::uint64_t mod_of_long(long n, std::uint32_t p) {
  long r = n % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  return static_cast<std::uint64_t>(r);
}

// Inverse mod p via extended Euclid; a in [1, p).
std::uint64_t mod_inverse(std::uint64_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw EngineError("no inverse mod p for " + std::to_string(a));
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

FieldSpec FieldSpec::rationals() { return FieldSpec{FieldKind::Rationals, 0}; }

FieldSpec FieldSpec::prime_field(std::uint32_t p) {
  if (p >= (1u << 31)) throw EngineError("prime field modulus must be < 2^31");
  if (!is_prime_u32(p)) throw EngineError("non-prime modulus " + std::to_string(p));
  return FieldSpec{FieldKind::PrimeField, p};
}

std::string FieldSpec::to_string() const {
  return kind == FieldKind::Rationals ? "Q" : "F" + std::to_string(characteristic);
}

Scalar::Scalar() : field_(FieldSpec::rationals()), value_(mpq_class(0)) {}

Scalar::Scalar(FieldSpec f, mpq_class q) : field_(f), value_(std::move(q)) {}

Scalar::Scalar(FieldSpec f, std::uint64_t r) : field_(f), value_(r) {}

Scalar Scalar::zero(const FieldSpec& f) { return of_int(f, 0); }

Scalar Scalar::one(const FieldSpec& f) { return of_int(f, 1); }

Scalar Scalar::of_int(const FieldSpec& f, long n) {
  if (f.kind == FieldKind::Rationals) return Scalar(f, mpq_class(n));
  return Scalar(f, mod_of_long(n, f.characteristic));
}

Scalar Scalar::of_fraction(const FieldSpec& f, long num, long den) {
  if (den == 0) throw EngineError("fraction with zero denominator");
  if (f.kind == FieldKind::Rationals) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(f, std::move(q));
  }
  std::uint64_t d = mod_of_long(den, f.characteristic);
  if (d == 0) {
    throw EngineError("fraction denominator " + std::to_string(den) + " is zero in " +
                      f.to_string());
  }
  std::uint64_t n = mod_of_long(num, f.characteristic);
  return Scalar(f, (n * mod_inverse(d, f.characteristic)) % f.characteristic);
}

bool Scalar::is_zero() const {
  if (field_.kind == FieldKind::Rationals) return sgn(rat()) == 0;
  return res() == 0;
}

bool Scalar::is_one() const {
  if (field_.kind == FieldKind::Rationals) return rat() == 1;
  return res() == 1;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    throw FieldMismatchError("field mismatch: " + field_.to_string() + " vs " +
                             o.field_.to_string());
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  if (field_.kind == FieldKind::Rationals) return Scalar(field_, mpq_class(rat() + o.rat()));
  return Scalar(field_, (res() + o.res()) % field_.characteristic);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(o);
  if (field_.kind == FieldKind::Rationals) return Scalar(field_, mpq_class(rat() - o.rat()));
  std::uint64_t p = field_.characteristic;
  return Scalar(field_, (res() + p - o.res()) % p);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  if (field_.kind == FieldKind::Rationals) return Scalar(field_, mpq_class(rat() * o.rat()));
  // residues < 2^31, so the 64-bit product cannot overflow
  return Scalar(field_, (res() * o.res()) % field_.characteristic);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  if (field_.kind == FieldKind::Rationals) return Scalar(field_, mpq_class(-rat()));
  std::uint64_t p = field_.characteristic;
  return Scalar(field_, (p - res()) % p);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw EngineError("division by zero in " + field_.to_string());
  if (field_.kind == FieldKind::Rationals) return Scalar(field_, mpq_class(1 / rat()));
  return Scalar(field_, mod_inverse(res(), field_.characteristic));
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  if (field_.kind == FieldKind::Rationals) return rat() == o.rat();
  return res() == o.res();
}

std::string Scalar::to_string() const {
  if (field_.kind == FieldKind::Rationals) return rat().get_str();
  return std::to_string(res());
}

}  // namespace hopfcert
