#pragma once

#include <string>
#include <vector>

#include "recq/ffzeros.hpp"
#include "recq/quotient.hpp"
#include "recq/sieve.hpp"

namespace recq::io {

/// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);

/// Polynomial from a comma-separated coefficient list, low-to-high,
/// decimal strings ("-2,0,1" = X^2 - 2). The literal "x" is the monomial X.
IntPolynomial parse_poly(const std::string& text);

std::vector<u64> parse_u64_list(const std::string& csv);
std::vector<mpz_class> parse_mpz_list(const std::string& csv);

/// Problem file: {"F": {"companion": {"coeffs": [...], "init": [...]}} or
/// {"exppoly": [{"poly": [...], "root": "..."}, ...]},
/// "G": [...], "invert_primes": [...]}; all integers as decimal strings.
QuotientProblem load_problem(const std::string& path);

/// Sparse-sum instance file: {"p": ..., "k": ..., "modulus": [...],
/// "c": [[...], ...], "a": [[...], ...]} with field elements as coefficient
/// vectors.
SparseInstance load_sparse_instance(const std::string& path);

SieveSystem load_sieve_system(const std::string& path);
void save_sieve_system(const SieveSystem& sys, const std::string& path);

}  // namespace recq::io
