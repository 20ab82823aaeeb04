#ifndef PLCERT_FACTOR_HPP
#define PLCERT_FACTOR_HPP

#include <vector>

#include "plcert/gf.hpp"
#include "plcert/unipoly.hpp"

namespace plcert {

using FqPoly = UniPoly<Fq>;

struct Factor {
  FqPoly poly;  // monic irreducible
  int multiplicity = 1;
};

/// Complete factorization over F_q into monic irreducibles: squarefree
/// decomposition, distinct-degree split, then seeded equal-degree
/// splitting. The product of the factors is re-expanded and checked
/// against monic(f). Throws on the zero polynomial.
std::vector<Factor> uni_factor(const Fq& f, const FqPoly& a, std::uint64_t seed = 0);

/// Squarefree decomposition: pairs (squarefree part, multiplicity).
std::vector<Factor> squarefree_decomposition(const Fq& f, const FqPoly& a);

bool is_irreducible(const Fq& f, const FqPoly& a);

/// Distinct roots in F_q.
std::vector<Fq::Elem> roots(const Fq& f, const FqPoly& a, std::uint64_t seed = 0);

/// x^(q^n) mod m.
FqPoly frobenius_power(const Fq& f, const FqPoly& m, unsigned n);

}  // namespace plcert

#endif  // PLCERT_FACTOR_HPP
