#pragma once

#include <utility>

#include "multisym/classify.hpp"

namespace multisym {

/// Change-of-basis certificate: pullback(g, canonical) equals the input
/// exactly, with canonical one of the three fixed representatives.
struct NormalFormCertificate {
  OrbitType orbit;
  LinMap g;
  KForm canonical;
  bool residual_zero;

  NormalFormCertificate()
      : orbit(OrbitType::NotMultisymplectic), canonical(3), residual_zero(false) {}
};

/// Recomputes the pullback and compares exactly; also requires g invertible.
inline bool verify_certificate(const KForm& w, const NormalFormCertificate& cert) {
  if (rank(cert.g.mat()) != kDim) return false;
  return pullback(cert.g, cert.canonical) == w;
}

namespace detail {

inline Vec6 subspace_row(const Subspace& s, size_t r) {
  Vec6 v;
  for (size_t c = 0; c < kDim; ++c) v[c] = s.basis.at(r, c);
  return v;
}

inline LinMap columns(const std::array<Vec6, 6>& cols) {
  LinMap m;
  for (size_t j = 0; j < kDim; ++j) m.set_column(j, cols[j]);
  return m;
}

/// Product case: echelon bases of the two eigenspaces, third vector of
/// each factor rescaled so both factor volumes are 1. Mixed monomials
/// vanish, so the frame pulls w back to the representative.
inline LinMap product_frame(const KForm& w, const StructureResult& sr) {
  Subspace plus = eigenspace(sr.structure, Scalar(1));
  Subspace minus = eigenspace(sr.structure, Scalar(-1));
  std::array<Vec6, 6> cols;
  for (size_t i = 0; i < 3; ++i) {
    cols[i] = subspace_row(plus, i);
    cols[3 + i] = subspace_row(minus, i);
  }
  Scalar t1 = eval(w, cols[0], cols[1], cols[2]);
  Scalar t2 = eval(w, cols[3], cols[4], cols[5]);
  if (t1.is_zero() || t2.is_zero())
    throw InternalInvariantError("factor volume vanished on a product form");
  cols[2] = t1.inverse() * cols[2];
  cols[5] = t2.inverse() * cols[5];
  return columns(cols);
}

/// Complex case: greedy complex basis (each f together with Jf extends the
/// real span), then f3 is rescaled inside the algebra generated by J so the
/// complex volume psi(f1,f2,f3) = w(f1,f2,f3) - i w(Jf1,f2,f3) equals 1.
inline LinMap complex_frame(const KForm& w, const StructureResult& sr) {
  const LinMap& j = sr.structure;
  std::vector<Vec6> fs;
  Matrix acc(0, kDim);
  for (size_t i = 0; i < kDim && fs.size() < 3; ++i) {
    Vec6 cand = basis_vector(i);
    Vec6 jc = j.apply(cand);
    Matrix probe(acc.rows() + 2, kDim);
    for (size_t r = 0; r < acc.rows(); ++r) probe.set_row(r, acc.row(r));
    std::vector<Scalar> row(kDim), jrow(kDim);
    for (size_t c = 0; c < kDim; ++c) {
      row[c] = cand[c];
      jrow[c] = jc[c];
    }
    probe.set_row(acc.rows(), row);
    probe.set_row(acc.rows() + 1, jrow);
    if (rank(probe) == acc.rows() + 2) {
      fs.push_back(cand);
      acc = probe;
    }
  }
  if (fs.size() != 3) throw InternalInvariantError("complex basis extension failed");
  Scalar re = eval(w, fs[0], fs[1], fs[2]);
  Scalar im = -eval(w, j.apply(fs[0]), fs[1], fs[2]);
  Scalar norm = re * re + im * im;
  if (norm.is_zero()) throw InternalInvariantError("complex volume vanished on a basis");
  Scalar ire = re / norm, iim = -(im / norm);
  Vec6 f3 = ire * fs[2] + iim * j.apply(fs[2]);
  fs[2] = f3;
  std::array<Vec6, 6> cols{fs[0], fs[1], fs[2],
                           j.apply(fs[0]), j.apply(fs[1]), j.apply(fs[2])};
  return columns(cols);
}

/// Tangent case: complement w4,w5,w6 of V0, V0-basis obtained by solving
/// kappa against the dual quotient 2-forms, then one shear on a V0
/// coordinate absorbs the residual complement-volume term.
inline LinMap tangent_frame(const KForm& w, const StructureResult& sr, const KForm& canonical) {
  Subspace v0 = sr.structure.image();
  std::array<Vec6, 3> b;
  for (size_t i = 0; i < 3; ++i) b[i] = subspace_row(v0, i);
  std::vector<Vec6> comp = greedy_complement(v0);
  Matrix kz = kappa_on_v0(w, b, comp);
  // dual quotient 2-forms in pair coordinates (4,5), (4,6), (5,6)
  std::array<Vec6, 3> v;
  for (size_t t = 0; t < 3; ++t) {
    Matrix rhs(3, 1);
    rhs.at(t, 0) = Scalar(1);
    SolveResult sol = linear_solve(kz, rhs);
    if (!sol.consistent || sol.rank != 3)
      throw InternalInvariantError("kappa restricted to V0 is not invertible");
    Vec6 img{};
    for (size_t u = 0; u < 3; ++u) img = img + sol.solution.at(u, 0) * b[u];
    v[t] = img;
  }
  std::array<Vec6, 6> cols{v[0], v[1], v[2], comp[0], comp[1], comp[2]};
  LinMap frame = columns(cols);
  KForm pulled = pullback(frame, w);
  Scalar b_res = pulled.coeff(MultiIndex::of({4, 5, 6}));
  if (pulled != canonical + b_res * KForm::monomial({4, 5, 6}))
    throw InternalInvariantError("tangent frame did not reach the residual normal form");
  LinMap shear = LinMap::identity();
  shear.at(2, 3) = -b_res;  // e4 -> e4 - b e3
  return frame * shear;
}

}  // namespace detail

/// Explicit g with pullback(g, representative) = w, exact in all three
/// orbits; the certificate is verified before it is returned.
inline NormalFormCertificate normal_form(const KForm& w) {
  if (w.grade() != 3) throw PreconditionError("normal form needs a 3-form");
  if (!is_multisymplectic(w)) throw NotMultisymplecticError();
  StructureResult sr = structure_extract(w);
  NormalFormCertificate cert;
  cert.orbit = sr.orbit;
  cert.canonical = representative(sr.orbit);
  switch (sr.orbit) {
    case OrbitType::Product:
      cert.g = LinMap(inverse(detail::product_frame(w, sr).mat()));
      break;
    case OrbitType::Complex: {
      StructureResult ref = structure_extract(cert.canonical);
      LinMap bref = detail::complex_frame(cert.canonical, ref);
      LinMap bw = detail::complex_frame(w, sr);
      cert.g = LinMap(bref.mat() * inverse(bw.mat()));
      break;
    }
    default:
      cert.g = LinMap(inverse(detail::tangent_frame(w, sr, cert.canonical).mat()));
      break;
  }
  cert.residual_zero = verify_certificate(w, cert);
  if (!cert.residual_zero)
    throw InternalInvariantError("normal-form certificate verification failed");
  return cert;
}

}  // namespace multisym
