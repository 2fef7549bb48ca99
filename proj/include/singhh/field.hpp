#pragma once

#include <gmpxx.h>

#include <string>

namespace singhh {

// Scalars are always carried as mpq_class. Over the rationals they are used as-is;
// over a prime field they are integers in [0, p) with denominator 1, and every
// operation routes through a Field so the reduction is never skipped.
using Scalar = mpq_class;

enum class FieldKind { Rationals, Prime };

class Field {
public:
  static Field rationals();
  static Field prime(unsigned long p);  // rejects non-primes

  FieldKind kind() const { return kind_; }
  unsigned long characteristic() const { return kind_ == FieldKind::Prime ? p_ : 0; }

  Scalar reduce(const Scalar& a) const;
  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar div(const Scalar& a, const Scalar& b) const;  // b must be nonzero
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  bool is_zero(const Scalar& a) const;
  bool equal(const Scalar& a, const Scalar& b) const;

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return reduce(Scalar(1)); }
  Scalar from_long(long v) const { return reduce(Scalar(v)); }

  // Accepts integers and fractions like "-7/3". Over a prime field the fraction is
  // reduced to a residue (denominator must be a unit).
  Scalar parse(const std::string& text) const;
  std::string to_string(const Scalar& a) const;

  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::string describe() const;

private:
  Field(FieldKind kind, unsigned long p) : kind_(kind), p_(p) {}

  FieldKind kind_;
  unsigned long p_;
};

}  // namespace singhh
