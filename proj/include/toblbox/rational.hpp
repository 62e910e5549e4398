#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>
#include <string>
#include <string_view>

namespace tobl {

// All probabilities, weights and LP data are exact rationals; the solver's
// inner loops work on arbitrary-precision integers.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
using IMat = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;

/// Parses "num/den" or a bare integer; throws ParseError on malformed input
/// or a zero denominator. The result is always in lowest terms.
Rational parse_rational(std::string_view text);

/// Canonical form: "num/den", or plain "num" when the denominator is 1.
std::string to_string(const Rational& value);

}  // namespace tobl
