#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dagger/lattice.hpp"
#include "dagger/snf.hpp"

namespace dagger {

/// coker(relations : V^n -> V^m) for an m x n relation matrix over V.
template <class B>
struct ModulePresentation {
  RingPtr<B> ring;
  std::size_t ambient_rank = 0;
  Matrix<B> relations;  // ambient_rank x n, n may be zero

  ModulePresentation() = default;
  ModulePresentation(RingPtr<B> r, std::size_t m)
      : ring(r), ambient_rank(m), relations(r, m, 0) {}
  ModulePresentation(Matrix<B> rel)
      : ring(rel.ring()), ambient_rank(rel.rows()), relations(std::move(rel)) {
    if (!relations.is_integral()) throw InvalidInput("relations must have entries in V");
  }
};

/// coker = (+)_i V/pi^torsion[i]  (+)  V^free_rank.
struct CokernelInvariants {
  std::vector<std::int64_t> torsion;
  std::size_t free_rank = 0;
};

template <class B>
CokernelInvariants cokernel_invariants(const ModulePresentation<B>& p) {
  CokernelInvariants out;
  if (p.relations.cols() == 0) {
    out.free_rank = p.ambient_rank;
    return out;
  }
  auto smith = smith_normal_form(p.relations);
  for (auto a : smith.exponents())
    if (a > 0) out.torsion.push_back(a);
  out.free_rank = p.ambient_rank - smith.rank;
  return out;
}

/// For finitely presented modules over V, bornological and algebraic
/// torsion-freeness agree; this decides the algebraic notion.
template <class B>
bool is_torsion_free(const ModulePresentation<B>& p) {
  return cokernel_invariants(p).torsion.empty();
}

/// Image of the relation matrix as a lattice in V^m.
template <class B>
Lattice<B> relation_lattice(const ModulePresentation<B>& p) {
  if (p.relations.cols() == 0) return Lattice<B>::zero(p.ring, p.ambient_rank);
  return Lattice<B>::span(p.relations);
}

/// Is [v] in pi^m * coker(P)?  Decided as v in im[pi^m I | A].
template <class B>
bool quotient_divisibility(const ModulePresentation<B>& p, const Vector<B>& v, std::int64_t m) {
  if (m < 1) throw InvalidInput("divisibility exponent must be positive");
  if (m >= p.ring->precision())
    throw PrecisionExhausted("divisibility by pi^" + std::to_string(m) + " at precision " +
                             std::to_string(p.ring->precision()));
  if (v.size() != p.ambient_rank) throw DescriptorMismatch("vector outside the ambient module");
  auto scaled_identity =
      Matrix<B>::identity(p.ring, p.ambient_rank).scaled(Scalar<B>::pi_power(p.ring, m));
  return Lattice<B>::span(hconcat(scaled_identity, p.relations)).contains(v);
}

/// Is [v] = 0 in coker(P)?
template <class B>
bool quotient_is_zero(const ModulePresentation<B>& p, const Vector<B>& v) {
  if (v.size() != p.ambient_rank) throw DescriptorMismatch("vector outside the ambient module");
  return relation_lattice(p).contains(v);
}

/// Presentation of coker(A) (x) coker(B): relations [A (x) I | I (x) B].
template <class B>
ModulePresentation<B> tensor_presentation(const ModulePresentation<B>& p,
                                          const ModulePresentation<B>& q) {
  auto ip = Matrix<B>::identity(p.ring, p.ambient_rank);
  auto iq = Matrix<B>::identity(q.ring, q.ambient_rank);
  return ModulePresentation<B>(hconcat(kronecker(p.relations, iq), kronecker(ip, q.relations)));
}

}  // namespace dagger
