#include "singhh/field.hpp"

#include "singhh/errors.hpp"

namespace singhh {

Field Field::rationals() { return Field(FieldKind::Rationals, 0); }

Field Field::prime(unsigned long p) {
  mpz_class n(p);
  if (p < 2 || mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
    fail_input("field characteristic must be prime, got " + std::to_string(p));
  return Field(FieldKind::Prime, p);
}

Scalar Field::reduce(const Scalar& a) const {
  if (kind_ == FieldKind::Rationals) return a;  // mpq_class is already canonical
  mpz_class p(p_);
  mpz_class den = a.get_den();
  mpz_class num = a.get_num() % p;
  if (den != 1) {
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), mpz_class(den % p).get_mpz_t(), p.get_mpz_t()) == 0)
      fail_math("denominator " + den.get_str() + " is not invertible mod " + std::to_string(p_));
    num = (num * dinv) % p;
  }
  if (num < 0) num += p;
  return Scalar(num);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
Scalar Field::sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
Scalar Field::mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
Scalar Field::neg(const Scalar& a) const { return reduce(-a); }

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) fail_math("division by zero");
  if (kind_ == FieldKind::Rationals) return 1 / a;
  mpz_class p(p_), r;
  if (mpz_invert(r.get_mpz_t(), mpz_class(a.get_num() % p).get_mpz_t(), p.get_mpz_t()) == 0)
    fail_math("element not invertible mod " + std::to_string(p_));
  if (r < 0) r += p;
  return Scalar(r);
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

bool Field::is_zero(const Scalar& a) const {
  if (kind_ == FieldKind::Rationals) return a == 0;
  return reduce(a) == 0;
}

bool Field::equal(const Scalar& a, const Scalar& b) const { return is_zero(sub(a, b)); }

Scalar Field::parse(const std::string& text) const {
  if (text.empty()) fail_input("empty scalar");
  mpq_class q;
  if (q.set_str(text, 10) != 0) fail_input("bad scalar '" + text + "'");
  if (q.get_den() == 0) fail_input("zero denominator in '" + text + "'");
  q.canonicalize();
  return reduce(q);
}

std::string Field::to_string(const Scalar& a) const { return reduce(a).get_str(); }

std::string Field::describe() const {
  return kind_ == FieldKind::Rationals ? "QQ" : "GF(" + std::to_string(p_) + ")";
}

}  // namespace singhh
