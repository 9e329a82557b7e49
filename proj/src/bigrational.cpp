#include "radialnet/bigrational.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace radialnet {

BigRational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

BigRational pow(const BigRational& q, unsigned long e) {
  BigRational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;  // already reduced: powers of coprime integers stay coprime
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigRational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  BigRational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

BigRational quantize(double x, unsigned bits) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  BigRational exact = rational_from_double(x);
  BigInt scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
  BigRational scaled = exact * scale;
  // round half away from zero
  BigInt twice = scaled.get_num() * 2;
  BigInt den2 = scaled.get_den() * 2;
  BigInt n;
  if (sgn(scaled) >= 0)
    n = (twice + scaled.get_den()) / den2;
  else
    n = -((-twice + scaled.get_den()) / den2);
  BigRational out(n, scale);
  out.canonicalize();
  return out;
}

long log2_abs(const BigRational& q) {
  if (sgn(q) == 0) throw std::invalid_argument("log2 of zero");
  long num_bits = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  return num_bits - den_bits;
}

double to_double(const BigRational& q) {
  // mpq_get_d truncates; go through mpf for correct huge/tiny handling
  if (sgn(q) == 0) return 0.0;
  long e = log2_abs(q);
  if (e > 1100) return sgn(q) * HUGE_VAL;
  if (e < -1200) return 0.0;
  mpf_class f(0, 128);
  f = q;
  return f.get_d();
}

std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigRational parse_rational(const std::string& s) {
  BigRational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

nlohmann::json rational_json(const BigRational& q) {
  return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

}  // namespace radialnet

#include "radialnet/errors.hpp"

namespace radialnet {

std::string to_string(BuildMode m) { return m == BuildMode::Tuned ? "tuned" : "theoretical"; }

BuildMode parse_mode(const std::string& s) {
  if (s == "tuned") return BuildMode::Tuned;
  if (s == "theoretical") return BuildMode::Theoretical;
  throw std::invalid_argument("unknown mode '" + s + "' (expected tuned or theoretical)");
}

nlohmann::json WidthEstimate::to_json() const {
  nlohmann::json j = {{"ln_width", ln_width}, {"log10_width", log10_width}};
  if (exact) j["exact"] = exact->get_str();
  else j["exact"] = nullptr;
  return j;
}

}  // namespace radialnet
