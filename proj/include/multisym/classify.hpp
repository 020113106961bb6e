#pragma once

#include <string>
#include <utility>
#include <vector>

#include "multisym/kform.hpp"

namespace multisym {

enum class OrbitType { Product, Complex, Tangent, NotMultisymplectic };

inline const char* orbit_name(OrbitType t) {
  switch (t) {
    case OrbitType::Product: return "product";
    case OrbitType::Complex: return "complex";
    case OrbitType::Tangent: return "tangent";
    default: return "none";
  }
}

/// The fixed volume form used to pin Q throughout classification.
inline KForm theta6() { return KForm::monomial({1, 2, 3, 4, 5, 6}); }

inline KForm product_representative() {
  return KForm::monomial({1, 2, 3}) + KForm::monomial({4, 5, 6});
}
inline KForm complex_representative() {
  return KForm::monomial({1, 2, 3}) + KForm::monomial({1, 4, 5}) +
         KForm::monomial({2, 4, 6}) - KForm::monomial({3, 5, 6});
}
inline KForm tangent_representative() {
  return KForm::monomial({1, 4, 5}) + KForm::monomial({2, 4, 6}) +
         KForm::monomial({3, 5, 6});
}

inline KForm representative(OrbitType t) {
  switch (t) {
    case OrbitType::Product: return product_representative();
    case OrbitType::Complex: return complex_representative();
    case OrbitType::Tangent: return tangent_representative();
    default: throw PreconditionError("no representative for that tag");
  }
}

/// True iff v -> interior(v, w) is injective, i.e. the 15x6 matrix of
/// contraction columns has rank 6.
inline bool is_multisymplectic(const KForm& w) {
  if (w.grade() != 3) throw PreconditionError("multisymplectic test needs a 3-form");
  const auto& rows2 = grade_indices(2);
  Matrix kappa(rows2.size(), kDim);
  for (size_t i = 0; i < kDim; ++i) {
    KForm ci = interior(basis_vector(i), w);
    for (size_t r = 0; r < rows2.size(); ++r) kappa.at(r, i) = ci.coeff(rows2[r]);
  }
  return rank(kappa) == kDim;
}

/// The unique endomorphism Q with interior(v, w) ^ w = interior(Q v, theta)
/// for every v. Quadratic in w, inversely linear in theta.
inline LinMap q_endo(const KForm& w, const KForm& theta) {
  if (w.grade() != 3) throw PreconditionError("q_endo needs a 3-form");
  if (theta.grade() != 6) throw PreconditionError("theta must have grade 6");
  if (theta.is_zero()) throw PreconditionError("theta must be nonzero");
  Scalar t = theta.coeff(MultiIndex::of({1, 2, 3, 4, 5, 6}));
  Scalar tinv = t.inverse();
  LinMap q;
  for (size_t i = 0; i < kDim; ++i) {
    KForm rhs = wedge(interior(basis_vector(i), w), w);
    // interior(e_j, theta) = t * (-1)^(j-1) * alpha_{complement(j)}
    for (size_t j = 0; j < kDim; ++j) {
      MultiIndex single;
      single.len = 1;
      single.idx[0] = static_cast<uint8_t>(j + 1);
      Scalar c = rhs.coeff(single.complement()) * tinv;
      q.at(j, i) = (j % 2 == 0) ? c : -c;
    }
  }
  return q;
}

/// Eigenspace ker(Q - lam I), canonical echelon basis; may be trivial.
inline Subspace eigenspace(const LinMap& q, const Scalar& lam) {
  Matrix m = q.mat() - lam * Matrix::identity(kDim);
  return Subspace{kernel_basis(m)};
}

/// The scalar mu with Q^2 = mu I. Scalarity is guaranteed on multisymplectic
/// input; its failure is an internal invariant violation.
inline Scalar mu_invariant(const KForm& w, const KForm& theta = theta6()) {
  if (!is_multisymplectic(w)) throw NotMultisymplecticError();
  LinMap q = q_endo(w, theta);
  LinMap q2 = q * q;
  Scalar mu = q2.at(0, 0);
  if (q2 != LinMap(mu * Matrix::identity(kDim)))
    throw InternalInvariantError("Q^2 is not scalar on a multisymplectic form");
  return mu;
}

/// Orbit detection by the sign of mu; theta-independent.
inline OrbitType orbit_type(const KForm& w) {
  if (w.grade() != 3) throw PreconditionError("orbit detection needs a 3-form");
  if (!is_multisymplectic(w)) return OrbitType::NotMultisymplectic;
  int s = mu_invariant(w).sign();
  if (s > 0) return OrbitType::Product;
  if (s < 0) return OrbitType::Complex;
  return OrbitType::Tangent;
}

struct Delta2Description {
  enum class Kind { TransversalPair, ZeroOnly, SingleSubspace };
  Kind kind;
  std::vector<Subspace> spaces;  // two, none, or one
};

namespace detail {

inline void verify_delta2_member(const KForm& w, const Subspace& s) {
  for (size_t r = 0; r < s.dim(); ++r) {
    Vec6 v;
    for (size_t c = 0; c < kDim; ++c) v[c] = s.basis.at(r, c);
    KForm two = interior(v, w);
    if (!wedge(two, two).is_zero())
      throw InternalInvariantError("reported vector fails the decomposability test");
  }
}

}  // namespace detail

/// The set of vectors whose contraction is decomposable: a transversal
/// 3+3 pair, the origin alone, or a single 3-space, depending on orbit.
inline Delta2Description delta2(const KForm& w, const KForm& theta = theta6()) {
  if (!is_multisymplectic(w)) throw NotMultisymplecticError();
  Scalar mu = mu_invariant(w, theta);
  LinMap q = q_endo(w, theta);
  int s = mu.sign();
  if (s < 0) return {Delta2Description::Kind::ZeroOnly, {}};
  if (s == 0) {
    Subspace v0 = q.kernel();
    if (v0.dim() != 3) throw InternalInvariantError("tangent kernel is not 3-dimensional");
    detail::verify_delta2_member(w, v0);
    return {Delta2Description::Kind::SingleSubspace, {v0}};
  }
  Scalar lam = Scalar::sqrt_of(mu.rat());
  Subspace plus = eigenspace(q, lam);
  Subspace minus = eigenspace(q, -lam);
  if (plus.dim() != 3 || minus.dim() != 3 || subspace_sum(plus, minus).dim() != 6)
    throw InternalInvariantError("product eigenspaces are not a transversal 3+3 pair");
  detail::verify_delta2_member(w, plus);
  detail::verify_delta2_member(w, minus);
  return {Delta2Description::Kind::TransversalPair, {plus, minus}};
}

struct StructureResult {
  OrbitType orbit;
  Scalar mu;         // Q^2 = mu I
  Scalar lambda;     // sqrt(|mu|); zero in the tangent case
  LinMap structure;  // S, J, or F
  KForm theta_used;
  std::string sign_convention;

  StructureResult() : orbit(OrbitType::NotMultisymplectic), theta_used(6) {}
};

namespace detail {

/// Order on echelon basis matrices: earlier pivot columns win, ties broken
/// by row-major entry comparison. Makes [e1,e2,e3] precede [e4,e5,e6].
inline bool echelon_less(const Matrix& x, const Matrix& y) {
  auto pivots = [](const Matrix& m) {
    std::vector<size_t> p;
    for (size_t i = 0; i < m.rows(); ++i) {
      size_t c = 0;
      while (c < m.cols() && m.at(i, c).is_zero()) ++c;
      p.push_back(c);
    }
    return p;
  };
  std::vector<size_t> px = pivots(x), py = pivots(y);
  if (px != py) return px < py;
  for (size_t i = 0; i < x.rows(); ++i)
    for (size_t j = 0; j < x.cols(); ++j) {
      if (x.at(i, j) < y.at(i, j)) return true;
      if (y.at(i, j) < x.at(i, j)) return false;
    }
  return false;
}

}  // namespace detail

/// Normalizes Q to the orbit structure: S = Q/sqrt(mu) with S^2 = I,
/// J = Q/sqrt(-mu) with J^2 = -I, or F = Q with F^2 = 0 and im F = ker F.
/// Sign choices are deterministic; theta pins the tangent scale.
inline StructureResult structure_extract(const KForm& w, const KForm& theta = theta6()) {
  StructureResult res;
  res.mu = mu_invariant(w, theta);
  res.theta_used = theta;
  LinMap q = q_endo(w, theta);
  int s = res.mu.sign();
  if (s > 0) {
    res.orbit = OrbitType::Product;
    res.lambda = Scalar::sqrt_of(res.mu.rat());
    LinMap sm = res.lambda.inverse() * q;
    Subspace plus = eigenspace(sm, Scalar(1));
    Subspace minus = eigenspace(sm, Scalar(-1));
    if (detail::echelon_less(minus.basis, plus.basis)) {
      sm = -sm;
      std::swap(plus, minus);
    }
    if (sm * sm != LinMap::identity() || plus.dim() != 3 || minus.dim() != 3)
      throw InternalInvariantError("product structure checks failed");
    res.structure = sm;
    res.sign_convention = "S chosen so the +1-eigenspace has the smaller echelon basis";
  } else if (s < 0) {
    res.orbit = OrbitType::Complex;
    res.lambda = Scalar::sqrt_of((-res.mu).rat());
    LinMap j = res.lambda.inverse() * q;
    for (size_t i = 0; i < kDim * kDim; ++i) {
      const Scalar& e = j.at(i / kDim, i % kDim);
      if (e.is_zero()) continue;
      if (e.sign() < 0) j = -j;
      break;
    }
    if (j * j != Scalar(-1) * LinMap::identity())
      throw InternalInvariantError("complex structure square check failed");
    res.structure = j;
    res.sign_convention = "J chosen so its first nonzero row-major entry is positive";
  } else {
    res.orbit = OrbitType::Tangent;
    res.lambda = Scalar(0);
    LinMap f = q;
    Subspace im = f.image();
    if (!(f * f).is_zero() || im.dim() != 3 || im != f.kernel())
      throw InternalInvariantError("tangent structure checks failed");
    res.structure = f;
    res.sign_convention = "F = Q with the scale pinned by theta";
  }
  return res;
}

/// The three-way slot identity w(A v1, v2, v3) = w(v1, A v2, v3)
/// = w(v1, v2, A v3) as an identity of trilinear forms, checked exactly
/// on every ordered basis triple.
inline bool check_compatibility(const KForm& w, const LinMap& a) {
  if (w.grade() != 3) throw PreconditionError("compatibility check needs a 3-form");
  Scalar table[6][6][6];
  for (const auto& [m, c] : w.coeffs()) {
    int i = m.idx[0] - 1, j = m.idx[1] - 1, k = m.idx[2] - 1;
    table[i][j][k] = c;
    table[j][k][i] = c;
    table[k][i][j] = c;
    table[j][i][k] = -c;
    table[i][k][j] = -c;
    table[k][j][i] = -c;
  }
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        Scalar t1(0), t2(0), t3(0);
        for (int m = 0; m < 6; ++m) {
          const Scalar& a1 = a.at(m, i);
          if (!a1.is_zero()) t1 += a1 * table[m][j][k];
          const Scalar& a2 = a.at(m, j);
          if (!a2.is_zero()) t2 += a2 * table[i][m][k];
          const Scalar& a3 = a.at(m, k);
          if (!a3.is_zero()) t3 += a3 * table[i][j][m];
        }
        if (t1 != t2 || t2 != t3) return false;
      }
  return true;
}

/// True iff all double contractions from R vanish. A passing 3-space must
/// coincide with im F; that equality is re-verified, not assumed.
inline bool isotropic_space_check(const KForm& w, const Subspace& r) {
  if (orbit_type(w) != OrbitType::Tangent)
    throw PreconditionError("isotropic space check needs a tangent-type form");
  if (r.dim() != 3) throw PreconditionError("subspace must be 3-dimensional");
  std::array<Vec6, 3> basis;
  for (size_t i = 0; i < 3; ++i)
    for (size_t c = 0; c < kDim; ++c) basis[i][c] = r.basis.at(i, c);
  for (size_t p = 0; p < 3; ++p)
    for (size_t q = p + 1; q < 3; ++q)
      if (!interior(basis[p], interior(basis[q], w)).is_zero()) return false;
  StructureResult sr = structure_extract(w);
  if (r != sr.structure.image())
    throw InternalInvariantError("isotropic 3-space differs from im F");
  return true;
}

namespace detail {

/// Greedy std-basis complement of a subspace: scan e1..e6 and keep vectors
/// independent of the space and of those already kept.
inline std::vector<Vec6> greedy_complement(const Subspace& s) {
  std::vector<Vec6> out;
  Matrix acc = s.basis;
  for (size_t i = 0; i < kDim && out.size() + s.dim() < kDim; ++i) {
    Matrix probe(acc.rows() + 1, kDim);
    for (size_t r = 0; r < acc.rows(); ++r) probe.set_row(r, acc.row(r));
    std::vector<Scalar> row(kDim);
    row[i] = Scalar(1);
    probe.set_row(acc.rows(), row);
    if (rank(probe) == acc.rows() + 1) {
      out.push_back(basis_vector(i));
      acc = probe;
    }
  }
  return out;
}

/// 3x3 matrix of kappa on V0 against quotient pair coordinates: row (p,q),
/// column j holds (interior(b_j, w))(w_p, w_q).
inline Matrix kappa_on_v0(const KForm& w, const std::array<Vec6, 3>& v0basis,
                          const std::vector<Vec6>& compl_basis) {
  Matrix kz(3, 3);
  size_t row = 0;
  for (size_t p = 0; p < 3; ++p)
    for (size_t q = p + 1; q < 3; ++q, ++row)
      for (size_t j = 0; j < 3; ++j) {
        KForm two = interior(v0basis[j], w);
        kz.at(row, j) = eval(two, std::vector<Vec6>{compl_basis[p], compl_basis[q]});
      }
  return kz;
}

}  // namespace detail

/// Builds C through V -> V/V0 -> 2-forms on the quotient -> V0 using a
/// chosen quotient volume eta, and returns (C, a) with C = a F exactly.
inline std::pair<LinMap, Scalar> c_construction(const KForm& w, const KForm& eta) {
  if (orbit_type(w) != OrbitType::Tangent)
    throw PreconditionError("c_construction needs a tangent-type form");
  if (eta.grade() != 3) throw PreconditionError("eta must be a 3-form");
  if (eta.is_zero()) throw PreconditionError("eta must be nonzero");
  StructureResult sr = structure_extract(w);
  const LinMap& f = sr.structure;
  Subspace v0 = f.image();
  std::array<Vec6, 3> b;
  for (size_t i = 0; i < 3; ++i)
    for (size_t c = 0; c < kDim; ++c) b[i][c] = v0.basis.at(i, c);
  for (size_t i = 0; i < 3; ++i)
    if (!interior(b[i], eta).is_zero())
      throw PreconditionError("eta is not basic on the quotient");
  std::vector<Vec6> comp = detail::greedy_complement(v0);
  Matrix kz = detail::kappa_on_v0(w, b, comp);
  LinMap cmap;
  for (size_t j = 0; j < kDim; ++j) {
    KForm two = interior(basis_vector(j), eta);
    Matrix rhs(3, 1);
    size_t row = 0;
    for (size_t p = 0; p < 3; ++p)
      for (size_t q = p + 1; q < 3; ++q, ++row)
        rhs.at(row, 0) = eval(two, std::vector<Vec6>{comp[p], comp[q]});
    SolveResult sol = linear_solve(kz, rhs);
    if (!sol.consistent || sol.rank != 3)
      throw InternalInvariantError("kappa restricted to V0 is not invertible");
    Vec6 img{};
    for (size_t t = 0; t < 3; ++t) img = img + sol.solution.at(t, 0) * b[t];
    cmap.set_column(j, img);
  }
  Scalar a(0);
  for (size_t i = 0; i < kDim && a.is_zero(); ++i)
    for (size_t j = 0; j < kDim && a.is_zero(); ++j)
      if (!f.at(i, j).is_zero()) a = cmap.at(i, j) / f.at(i, j);
  if (a.is_zero() || cmap != a * f)
    throw InternalInvariantError("C is not a nonzero multiple of F");
  return {cmap, a};
}

}  // namespace multisym
