#include "crflat/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace crflat::report {

namespace {

json number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

bool is_scalar_object(const json& j) {
  return j.is_object() && j.size() == 3 && j.contains("re") && j.contains("im") && j.contains("exact");
}

std::string scalar_text(const json& j) {
  auto part = [](const json& x) {
    return x.is_string() ? x.get<std::string>() : x.dump();
  };
  std::string re = part(j["re"]), im = part(j["im"]);
  std::string s;
  if (im == "0" || im == "0.0") s = re;
  else if (re == "0" || re == "0.0") s = im + "*i";
  else s = re + (im[0] == '-' ? "" : "+") + im + "*i";
  return j["exact"].get<bool>() ? s : "~" + s;
}

void render(const json& j, const std::string& key, int depth, std::ostringstream& os) {
  std::string pad(2 * depth, ' ');
  std::string head = key.empty() ? pad : pad + key + ":";
  if (is_scalar_object(j)) {
    os << head << " " << scalar_text(j) << "\n";
  } else if (j.is_object()) {
    if (!key.empty()) os << head << "\n";
    for (auto it = j.begin(); it != j.end(); ++it) render(it.value(), it.key(), depth + (key.empty() ? 0 : 1), os);
  } else if (j.is_array()) {
    bool flat = true;
    for (const auto& e : j)
      if (e.is_structured() && !is_scalar_object(e)) flat = false;
    if (flat) {
      os << head << " [";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        if (is_scalar_object(j[i])) os << scalar_text(j[i]);
        else os << j[i].dump();
      }
      os << "]\n";
    } else {
      os << head << "\n";
      for (std::size_t i = 0; i < j.size(); ++i) render(j[i], "[" + std::to_string(i) + "]", depth + 1, os);
    }
  } else if (j.is_string()) {
    os << head << " " << j.get<std::string>() << "\n";
  } else {
    os << head << " " << j.dump() << "\n";
  }
}

}  // namespace

json to_json(const Scalar& s) {
  json j;
  if (s.is_exact()) {
    j["re"] = s.exact().re.get_str();
    j["im"] = s.exact().im.get_str();
    j["exact"] = true;
  } else {
    cplx z = s.to_complex();
    j["re"] = z.real();
    j["im"] = z.imag();
    j["exact"] = false;
  }
  return j;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const BoundaryPoint& p) {
  json j;
  j["z0"] = json::array();
  for (const auto& z : p.z0) j["z0"].push_back(to_json(z));
  j["u0"] = to_json(p.u0);
  return j;
}

json to_json(const Tolerances& t) {
  return json{{"rank", t.rank}, {"vanish", t.vanish}, {"frame", t.frame}, {"normalize", t.normalize}};
}

json to_json(const Membership& m) {
  return json{{"isSU", m.isSU},
              {"isGLQ", m.isGLQ},
              {"scale", to_json(m.scale)},
              {"formResidual", m.formResidual},
              {"suFormResidual", m.suFormResidual},
              {"detResidual", m.detResidual},
              {"exact", m.exact}};
}

json to_json(const RankReport& r) {
  return json{{"point", to_json(r.p)},
              {"A", to_json(r.A)},
              {"singularValues", r.singular},
              {"hermitianEigenvalues", r.eigen},
              {"antiHermitianPart", r.antiHermitian},
              {"rank", r.rank},
              {"rankTolerance", r.tol},
              {"exact", r.exact},
              {"advisory", r.advisory}};
}

json to_json(const NormalizedJet& j) {
  json comps = json::array();
  for (const auto& c : j.jets) comps.push_back(c.to_string());
  json steps = json::array();
  for (const auto& s : j.steps) steps.push_back(json{{"description", s.description}, {"matrix", to_json(s.matrix)}});
  return json{{"stage", j.stage == Stage::Star2 ? "star2" : "star3"},
              {"n", j.n},
              {"N", j.N},
              {"jets", comps},
              {"target", to_json(j.target)},
              {"source", to_json(j.source)},
              {"steps", steps},
              {"residual", j.residual},
              {"constraintResidual", j.constraintResidual},
              {"exact", j.exact}};
}

json to_json(const MuData& m) {
  json s0 = json::array();
  for (auto [j, l] : m.S0) s0.push_back(json::array({j + 1, l + 1}));
  return json{{"kappa0", m.kappa0}, {"mu", m.mu}, {"S0", s0}, {"muJL", m.muJL}, {"zeroComponents", m.zeroComponents}};
}

json to_json(const Star3Result& s) {
  return json{{"jet", to_json(s.jet)},
              {"mu", to_json(s.mu)},
              {"rank", to_json(s.rank)},
              {"fallback", s.fallback},
              {"muResidual", s.muResidual},
              {"fwwResidual", s.fwwResidual},
              {"boundHolds", s.boundHolds},
              {"bound", p_bound(s.jet.n, s.mu.kappa0)}};
}

json to_json(const LiftFrame& f) {
  Matrix base(f.e.rows(), f.e.cols(), Scalar(0));
  for (int i = 0; i < f.e.rows(); ++i)
    for (int k = 0; k < f.e.cols(); ++k) base(i, k) = f.e(i, k).constant_term();
  return json{{"kind", lift_kind_name(f.kind)},
              {"point", to_json(f.p)},
              {"frameAtBase", to_json(base)},
              {"formResidual", f.residuals.form},
              {"detResidual", f.residuals.det},
              {"baseResidual", f.residuals.base},
              {"adaptedDefect", f.adapted},
              {"directOrthonormal", f.directOrthonormal},
              {"exact", f.exact}};
}

json to_json(const MCRelations& r) {
  return json{{"omega00_plus_conj_omegaTopTop", r.w00},
              {"omegaTopA_minus_2i_conj_omegaA0", r.wTopA},
              {"omegaATop_plus_half_i_conj_omega0A", r.wAtop},
              {"omegaAB_plus_conj_omegaBA", r.wAB},
              {"trace", r.trace},
              {"omegaMu0", r.wMu0},
              {"thetaImaginaryPart", r.thetaReal},
              {"formCompatibility", r.full},
              {"structureEquation", r.structure},
              {"worst", r.worst()}};
}

json to_json(const SFFTensor& q) {
  json t = json::array();
  for (const auto& m : q.q) t.push_back(to_json(m));
  return json{{"point", to_json(q.p)},
              {"q", t},
              {"frame", lift_kind_name(q.frameUsed)},
              {"extractionResidual", q.residual},
              {"symmetryDefect", q.symmetry},
              {"norm", q.norm},
              {"rank", q.rank},
              {"exact", q.exact}};
}

json to_json(const ExtrinsicReport& x) {
  json spans = json::array();
  for (const auto& s : x.spans) spans.push_back(json{{"k", s.k}, {"dimension", s.dimension}, {"basis", to_json(s.basis)}});
  json form = json::array();
  for (const auto& row : x.form) {
    json r = json::array();
    for (const auto& v : row) {
      json vec = json::array();
      for (const auto& s : v) vec.push_back(to_json(s));
      r.push_back(vec);
    }
    form.push_back(r);
  }
  return json{{"point", to_json(x.p)}, {"spans", spans}, {"form", form}, {"norm", x.norm}, {"rank", x.rank}, {"exact", x.exact}};
}

json to_json(const EquivalenceReport& e) {
  return json{{"frameNorm", e.frameNorm},
              {"extrinsicNorm", e.extrinsicNorm},
              {"frameRank", e.frameRank},
              {"extrinsicRank", e.extrinsicRank},
              {"frameVanishes", e.frameVanishes},
              {"extrinsicVanishes", e.extrinsicVanishes},
              {"agree", e.agree}};
}

json to_json(const FlatnessVerdict& v) {
  json pts = json::array();
  for (const auto& p : v.samplePoints) pts.push_back(to_json(p));
  json norms = json::array();
  for (double d : v.sffNorms) norms.push_back(number(d));
  json j{{"verdict", verdict_name(v.verdict)},
         {"samplePoints", pts},
         {"sffNorms", norms},
         {"maxSFFNorm", v.maxSFFNorm},
         {"kappa0", v.kappa0},
         {"diagnostics", v.diagnostics}};
  if (v.witness) {
    j["witness"] = json{{"tau", to_json(v.witness->tau)},
                        {"L", to_json(v.witness->L)},
                        {"sigma", to_json(v.witness->sigma)},
                        {"basePoint", to_json(v.witness->base)},
                        {"residual", v.witness->residual},
                        {"checkedPoints", v.witness->checkedPoints}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json to_json(const Failure& f) { return json{{"error", kind_name(f.kind)}, {"message", f.message}}; }

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string render_text(const json& doc) {
  std::ostringstream os;
  render(doc, "", 0, os);
  return os.str();
}

}  // namespace crflat::report
