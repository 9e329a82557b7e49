#pragma once

#include <gmpxx.h>

#include <string>

#include <json.hpp>

namespace radialnet {

// GMP keeps mpq_class canonical (positive denominator, reduced) after every
// arithmetic operation, so the wrappers below only add helpers.
using BigInt = mpz_class;
using BigRational = mpq_class;

BigRational make_rational(long num, long den = 1);
BigRational pow(const BigRational& q, unsigned long e);
BigInt factorial(unsigned long n);

// Exact binary value of a finite double.
BigRational rational_from_double(double x);
// Nearest multiple of 2^-bits (ties away from zero).
BigRational quantize(double x, unsigned bits);

// floor(log2 |q|) approximately, usable for q of any magnitude (q != 0).
long log2_abs(const BigRational& q);
double to_double(const BigRational& q);

// "num/den" with den omitted when 1.
std::string to_string(const BigRational& q);
BigRational parse_rational(const std::string& s);

nlohmann::json rational_json(const BigRational& q);

}  // namespace radialnet
