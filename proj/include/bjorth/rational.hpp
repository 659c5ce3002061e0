#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bjorth {

/// Exact rational scalar (GMP-backed, always canonicalized).
using Rat = boost::multiprecision::mpq_rational;
using RVec = std::vector<Rat>;
using RMat = std::vector<RVec>;

/// Parses "p/q", integer, or plain decimal strings ("-0.5" -> -1/2) exactly.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rat parse_rational(const std::string& text);

/// Canonical "p/q" form ("p" when q == 1).
std::string rational_to_string(const Rat& value);

/// Exact conversion: every finite double is a dyadic rational.
Rat rational_from_double(double value);
double rational_to_double(const Rat& value);

RVec rvec_from_doubles(const std::vector<double>& values);
std::vector<double> rvec_to_doubles(const RVec& values);

Rat dot(const RVec& a, const RVec& b);
RVec scale(const RVec& a, const Rat& s);
RVec add(const RVec& a, const RVec& b);
RVec sub(const RVec& a, const RVec& b);
RVec negate(const RVec& a);
bool is_zero(const RVec& a);

/// Lexicographic total order used for canonical sorting of exact data.
int compare(const RVec& a, const RVec& b);

/// Rank of the row set via Gaussian elimination.
int rank(RMat rows);

/// Basis of {y : row . y = 0 for every row}; empty when the rows span.
RMat nullspace(const RMat& rows);

/// Unique solution of rows * y = rhs if the system has exactly one; nullopt
/// when singular or inconsistent.
std::optional<RVec> solve_unique(RMat rows, RVec rhs);

/// Reduced row echelon form; canonical representation of a row span, so two
/// subspaces are equal iff their RREFs are equal.
RMat rref(RMat rows);

/// Decides whether some y satisfies row . y > 0 for every row (homogeneous
/// strict feasibility) by Fourier-Motzkin elimination. Exact.
bool strictly_feasible(const RMat& rows);

/// True when point lies in the convex hull of the given points (exact).
bool in_convex_hull(const RVec& point, const RMat& points);

}  // namespace bjorth
