#include "sm/rational.hpp"

#include <cmath>

#include "sm/errors.hpp"

namespace sm {

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw ParameterError("empty rational literal");
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw ParameterError("malformed rational literal: " + text);
  if (q.get_den() == 0)
    throw ParameterError("zero denominator in rational literal: " + text);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Int floor_rat(const Rat& value) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(),
             value.get_den().get_mpz_t());
  return q;
}

Int ceil_rat(const Rat& value) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(),
             value.get_den().get_mpz_t());
  return q;
}

Rat pow_rat(const Rat& value, unsigned long e) {
  Rat out;
  mpz_pow_ui(out.get_num().get_mpz_t(), value.get_num().get_mpz_t(), e);
  mpz_pow_ui(out.get_den().get_mpz_t(), value.get_den().get_mpz_t(), e);
  out.canonicalize();
  return out;
}

std::size_t rat_bits(const Rat& value) {
  return mpz_sizeinbase(value.get_num().get_mpz_t(), 2) +
         mpz_sizeinbase(value.get_den().get_mpz_t(), 2);
}

Rat rat_from_double(double value, unsigned precision_bits) {
  if (!std::isfinite(value))
    throw ParameterError("non-finite double in rat_from_double");
  const double scale = std::ldexp(1.0, static_cast<int>(precision_bits));
  mpz_class num;
  mpz_set_d(num.get_mpz_t(), std::round(value * scale));
  Rat out(num, Int(1) << precision_bits);
  out.canonicalize();
  return out;
}

double to_double(const Rat& value) { return value.get_d(); }

}  // namespace sm
