#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>

#include "multisym/io.hpp"
#include "multisym/normal_form.hpp"
#include "multisym/orbit_tangent.hpp"

namespace multisym {

inline constexpr const char* kToolName = "multisym";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::json;  // std::map keys: serialization sorts keys

/// FNV-1a over the raw input bytes; stable across platforms.
inline std::string input_digest(const std::string& bytes) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

inline Json scalar_json(const Scalar& s) { return s.str(); }

inline Json form_json(const KForm& f) {
  Json terms = Json::array();
  for (const auto& [m, c] : f.coeffs()) {
    Json t;
    t["coeff"] = c.str();
    Json idx = Json::array();
    for (uint8_t i = 0; i < m.len; ++i) idx.push_back(static_cast<int>(m.idx[i]));
    t["indices"] = idx;
    terms.push_back(t);
  }
  Json out;
  out["grade"] = f.grade();
  out["terms"] = terms;
  return out;
}

inline Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

inline Json subspace_json(const Subspace& s) {
  Json out;
  out["dim"] = s.dim();
  out["basis"] = matrix_json(s.basis);
  return out;
}

inline Json tool_section() {
  Json t;
  t["name"] = kToolName;
  t["version"] = kToolVersion;
  return t;
}

inline Json classify_report(const KForm& w, const KForm& theta = theta6()) {
  Json out;
  out["command"] = "classify";
  out["tool"] = tool_section();
  if (!is_multisymplectic(w)) {
    out["multisymplectic"] = false;
    out["orbit"] = "none";
    return out;
  }
  out["multisymplectic"] = true;
  Scalar mu = mu_invariant(w, theta);
  out["orbit"] = orbit_name(orbit_type(w));
  out["mu"] = mu.str();
  return out;
}

inline Json structure_report(const KForm& w, const KForm& theta = theta6()) {
  StructureResult sr = structure_extract(w, theta);
  Json out;
  out["command"] = "structure";
  out["tool"] = tool_section();
  out["orbit"] = orbit_name(sr.orbit);
  out["mu"] = sr.mu.str();
  out["lambda"] = sr.lambda.str();
  if (!sr.lambda.is_rational()) out["extension_d"] = sr.lambda.ext_d();
  out["structure"] = matrix_json(sr.structure.mat());
  out["sign_convention"] = sr.sign_convention;
  out["theta"] = form_json(sr.theta_used);
  const char* square = sr.orbit == OrbitType::Product
                           ? "I"
                           : (sr.orbit == OrbitType::Complex ? "-I" : "0");
  out["structure_square"] = square;
  out["compatible"] = check_compatibility(w, sr.structure);
  return out;
}

inline Json delta2_report(const KForm& w, const KForm& theta = theta6()) {
  Delta2Description d = delta2(w, theta);
  Json out;
  out["command"] = "delta2";
  out["tool"] = tool_section();
  switch (d.kind) {
    case Delta2Description::Kind::TransversalPair:
      out["kind"] = "transversal_pair";
      break;
    case Delta2Description::Kind::ZeroOnly:
      out["kind"] = "zero_only";
      break;
    default:
      out["kind"] = "single_subspace";
  }
  Json spaces = Json::array();
  for (const auto& s : d.spaces) spaces.push_back(subspace_json(s));
  out["spaces"] = spaces;
  return out;
}

inline Json normal_form_report(const KForm& w) {
  NormalFormCertificate cert = normal_form(w);
  Json out;
  out["command"] = "normal-form";
  out["tool"] = tool_section();
  out["orbit"] = orbit_name(cert.orbit);
  out["canonical"] = form_json(cert.canonical);
  out["g"] = matrix_json(cert.g.mat());
  out["residual_zero"] = cert.residual_zero;
  return out;
}

inline Json quadruple_json(const Quadruple& q) {
  Json j = Json::array();
  j.push_back(q.a.str());
  j.push_back(q.b.str());
  j.push_back(q.c.str());
  j.push_back(q.d.str());
  return j;
}

inline Json involution_table_json(const InvolutionTable& t) {
  Json lines = Json::array();
  for (const auto& line : t.lines) {
    Json l;
    l["quadruple"] = quadruple_json(line.q);
    l["squares_to_identity"] = line.squares_to_identity;
    Json comp = Json::array();
    for (size_t s : line.plus_slots) comp.push_back(TypeBasis::slot_name(s));
    l["plus_eigenspace"] = comp;
    l["matches_published_composition"] = line.composition_matches;
    lines.push_back(l);
  }
  Json out;
  out["lines"] = lines;
  Json regen = Json::array();
  for (const auto& q : t.regenerated) regen.push_back(quadruple_json(q));
  out["regenerated"] = regen;
  out["regenerated_matches_published"] = t.regenerated_matches;
  return out;
}

inline Json complex_table_json(const ComplexTable& t) {
  Json scanned = Json::array();
  for (const auto& line : t.scanned) {
    Json l;
    l["quadruple"] = quadruple_json(line.q);
    l["squares_to_minus_identity"] = line.passes;
    scanned.push_back(l);
  }
  Json out;
  out["scanned"] = scanned;
  Json pass = Json::array();
  for (const auto& q : t.passing) pass.push_back(quadruple_json(q));
  out["passing"] = pass;
  out["count"] = t.passing.size();
  return out;
}

inline Json filtration_json(const FiltrationReport& r) {
  Json out;
  Json dims;
  dims["d1"] = r.dim_d1;
  dims["d2"] = r.dim_d2;
  dims["d3"] = r.dim_d3;
  dims["im_n"] = r.dim_im_n;
  dims["im_n2"] = r.dim_im_n2;
  dims["ker_n"] = r.dim_ker_n;
  dims["ker_n2"] = r.dim_ker_n2;
  out["dims"] = dims;
  out["chain_ok"] = r.chain_ok;
  out["im_n2_is_d1"] = r.im_n2_is_d1;
  out["im_n_is_d2"] = r.im_n_is_d2;
  out["ker_n2_is_wedge_annihilator"] = r.ker_n2_is_wedge_annihilator;
  out["n_cubed_zero"] = r.n_cubed_zero;
  out["omega_in_d2"] = r.omega_in_d2;
  out["trace_criterion_ok"] = r.trace_criterion_ok;
  out["ker_n"] = subspace_json(r.ker_n);
  out["ker_n2"] = subspace_json(r.ker_n2);
  out["im_n"] = subspace_json(r.im_n);
  out["im_n2"] = subspace_json(r.im_n2);
  return out;
}

/// Dispatches the orbit-geometry report by detected orbit.
inline Json orbit_report(const KForm& w) {
  OrbitType t = orbit_type(w);
  Json out;
  out["command"] = "orbit-report";
  out["tool"] = tool_section();
  out["orbit"] = orbit_name(t);
  switch (t) {
    case OrbitType::Product:
      out["involution_table"] = involution_table_json(involution_table(w));
      break;
    case OrbitType::Complex:
      out["complex_table"] = complex_table_json(complex_table(w));
      break;
    case OrbitType::Tangent:
      out["filtration"] = filtration_json(n_filtration(w));
      break;
    default:
      throw PreconditionError("orbit report needs a multisymplectic form");
  }
  return out;
}

inline Json tables_report(const std::string& which) {
  Json out;
  out["command"] = "tables";
  out["tool"] = tool_section();
  out["which"] = which;
  if (which == "product") {
    out["involution_table"] = involution_table_json(involution_table(product_representative()));
  } else if (which == "complex") {
    out["complex_table"] = complex_table_json(complex_table(complex_representative()));
  } else {
    throw PreconditionError("tables: --which must be product or complex");
  }
  return out;
}

inline Json witness_report(const KForm& w) {
  OrbitType t = orbit_type(w);
  Json out;
  out["command"] = "witness";
  out["tool"] = tool_section();
  out["orbit"] = orbit_name(t);
  WitnessKind kind;
  if (t == OrbitType::Product) {
    kind = WitnessKind::D21xD12;
    out["kind"] = "d21_x_d12";
  } else if (t == OrbitType::Tangent) {
    kind = WitnessKind::KerN2;
    out["kind"] = "ker_n2";
  } else {
    throw PreconditionError("witness search is defined for product and tangent forms");
  }
  Witness wit = witness_nonintegrable(w, kind);
  out["first"] = form_json(wit.first);
  out["second"] = form_json(wit.second);
  out["wedge"] = form_json(wit.top);
  return out;
}

/// Aligned plain-text rendering of a report document. Arrays of scalars
/// print inline, so matrices come out one row per line.
inline void render_plain(const Json& j, std::string& out, int depth = 0) {
  auto scalar_str = [](const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  auto inline_array = [&](const Json& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += scalar_str(v[i]);
    }
    return s + "]";
  };
  auto is_flat = [](const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
      if (e.is_object() || e.is_array()) return false;
    return true;
  };
  std::string pad(static_cast<size_t>(depth) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !is_flat(v))) {
        out += pad + k + ":\n";
        render_plain(v, out, depth + 1);
      } else if (v.is_array()) {
        out += pad + k + ": " + inline_array(v) + "\n";
      } else {
        out += pad + k + ": " + scalar_str(v) + "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() || (v.is_array() && !is_flat(v))) {
        out += pad + "-\n";
        render_plain(v, out, depth + 1);
      } else if (v.is_array()) {
        out += pad + "- " + inline_array(v) + "\n";
      } else {
        out += pad + "- " + scalar_str(v) + "\n";
      }
    }
  } else {
    out += pad + scalar_str(j) + "\n";
  }
}

inline std::string render(const Json& j, bool plain) {
  if (!plain) return j.dump(2) + "\n";
  std::string out;
  render_plain(j, out);
  return out;
}

}  // namespace multisym
