#include "kmlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace nlohmann {

template <typename T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& v) {
    if (v) {
      j = *v;
    } else {
      j = nullptr;
    }
  }
  static void from_json(const json& j, std::optional<T>& v) {
    if (j.is_null()) {
      v.reset();
    } else {
      v = j.get<T>();
    }
  }
};

}  // namespace nlohmann

namespace kmlab {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassSection, tag, display, normal, u, f, residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(KappaMuSection, kappa, mu, nullity_kind, h_rank, residual, pattern_residual, note)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(InvariantSection, kind, defined, value, value_squared, reason)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GroupSection, name, table, range, description, row, reason)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CurvatureSection, ricci, principal, scalar, distribution_curvature)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(IdentitySection, id, status, residual, reason)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(MilnorSection, lambda, mu, ricci, signs, bracket_residual, ricci_residual)

using nlohmann::json;

input_error::input_error(std::string location, const std::string& message)
    : std::runtime_error(location.empty() ? message : location + ": " + message), location_(std::move(location)) {}

namespace {

Scalar parse_scalar(const json& v, const std::string& loc, Mode mode) {
  if (v.is_number_integer()) {
    const long n = v.get<long>();
    return mode == Mode::Exact ? Scalar(n) : Scalar::from_double(static_cast<double>(n));
  }
  if (v.is_number_float()) {
    if (mode == Mode::Exact) throw input_error(loc, "decimal numbers need float mode; write rationals as \"p/q\"");
    return Scalar::from_double(v.get<double>());
  }
  if (v.is_string()) {
    try {
      return Scalar::parse(v.get<std::string>(), mode);
    } catch (const scalar_error& e) {
      throw input_error(loc, e.what());
    }
  }
  throw input_error(loc, "expected a number or a \"p/q\" string");
}

const json& member(const json& obj, const std::string& key, const std::string& loc) {
  auto it = obj.find(key);
  if (it == obj.end()) throw input_error(loc + "/" + key, "missing key '" + key + "'");
  return *it;
}

Vec3 parse_vec(const json& v, const std::string& loc, Mode mode) {
  if (!v.is_array() || v.size() != 3) throw input_error(loc, "expected an array of 3 numbers");
  Vec3 out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = parse_scalar(v[i], loc + "/" + std::to_string(i), mode);
  return out;
}

Mat3 parse_mat(const json& v, const std::string& loc, Mode mode) {
  if (!v.is_array() || v.size() != 3) throw input_error(loc, "expected a 3x3 array");
  Mat3 out;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string rloc = loc + "/" + std::to_string(i);
    if (!v[i].is_array() || v[i].size() != 3) throw input_error(rloc, "expected a row of 3 numbers");
    for (std::size_t j = 0; j < 3; ++j) out(i, j) = parse_scalar(v[i][j], rloc + "/" + std::to_string(j), mode);
  }
  return out;
}

std::size_t parse_index(const json& v, const std::string& loc) {
  if (!v.is_number_integer()) throw input_error(loc, "expected a frame index 0, 1 or 2");
  const long i = v.get<long>();
  if (i < 0 || i > 2) throw input_error(loc, "frame index out of range: " + std::to_string(i));
  return static_cast<std::size_t>(i);
}

StructureTensors parse_raw(const json& doc, Mode mode) {
  static const std::set<std::string> keys = {"frame_kind", "metric", "brackets", "phi", "xi", "eta", "epsilon"};
  for (const auto& [k, _] : doc.items()) {
    if (keys.count(k) == 0) throw input_error("/" + k, "unknown key");
  }
  FrameKind kind = FrameKind::General;
  if (auto it = doc.find("frame_kind"); it != doc.end()) {
    if (!it->is_string()) throw input_error("/frame_kind", "expected a string");
    try {
      kind = frame_kind_from_string(it->get<std::string>());
    } catch (const std::exception& e) {
      throw input_error("/frame_kind", e.what());
    }
  }
  const Mat3 metric = parse_mat(member(doc, "metric", ""), "/metric", mode);
  MetricLieAlgebra3 alg(Ten3{}, metric, kind);

  const json& br = member(doc, "brackets", "");
  if (!br.is_array()) throw input_error("/brackets", "expected a list of [i, j, [c0, c1, c2]]");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t n = 0; n < br.size(); ++n) {
    const std::string loc = "/brackets/" + std::to_string(n);
    const json& e = br[n];
    if (!e.is_array() || e.size() != 3) throw input_error(loc, "expected [i, j, [c0, c1, c2]]");
    const std::size_t i = parse_index(e[0], loc + "/0");
    const std::size_t j = parse_index(e[1], loc + "/1");
    const Vec3 c = parse_vec(e[2], loc + "/2", mode);
    if (i == j) {
      if (!c.is_zero()) throw input_error(loc, "[e_i, e_i] must vanish");
      continue;
    }
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second) {
      throw input_error(loc, "bracket of e_" + std::to_string(i) + " and e_" + std::to_string(j) + " given twice");
    }
    alg.set_bracket(i, j, c);
  }

  StructureTensors st;
  st.host = alg;
  st.phi = parse_mat(member(doc, "phi", ""), "/phi", mode);
  st.xi = parse_vec(member(doc, "xi", ""), "/xi", mode);
  st.eta = parse_vec(member(doc, "eta", ""), "/eta", mode);
  const json& eps = member(doc, "epsilon", "");
  if (!eps.is_number_integer()) throw input_error("/epsilon", "expected -1 or 1");
  st.epsilon = eps.get<int>();
  return st;
}

json vec_json(const Vec3& v) {
  json a = json::array();
  for (std::size_t i = 0; i < 3; ++i) a.push_back(v[i].str());
  return a;
}

json mat_json(const Mat3& m) {
  json a = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < 3; ++j) row.push_back(m(i, j).str());
    a.push_back(row);
  }
  return a;
}

// Float outputs of the Milnor analysis, rounded to 10 significant digits so
// reports do not depend on the last bits of the eigen solver.
std::string stable_double(double v) {
  if (std::abs(v) < 1e-12) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return format_double(std::strtod(buf, nullptr));
}

std::optional<std::string> opt_str(const std::optional<Scalar>& s) {
  if (!s) return std::nullopt;
  return s->str();
}

std::string invariant_label(InvariantKind k) {
  switch (k) {
    case InvariantKind::BoeckxI:
      return "I";
    case InvariantKind::DackoOlszakC:
      return "C";
    case InvariantKind::ParaE:
      return "E";
    case InvariantKind::ParaF:
      return "F";
  }
  return "?";
}

}  // namespace

InputDocument parse_input(const json& doc, Mode mode) {
  if (!doc.is_object()) throw input_error("", "input document must be an object");
  InputDocument in;
  if (doc.contains("family")) {
    for (const auto& [k, _] : doc.items()) {
      if (k != "family" && k != "params") throw input_error("/" + k, "unknown key");
    }
    const json& name = doc.at("family");
    if (!name.is_string()) throw input_error("/family", "expected a family name");
    std::map<std::string, Scalar> params;
    if (auto it = doc.find("params"); it != doc.end()) {
      if (!it->is_object()) throw input_error("/params", "expected an object of parameters");
      for (const auto& [k, v] : it->items()) params.emplace(k, parse_scalar(v, "/params/" + k, mode));
    }
    in.family = FamilySpec::make(name.get<std::string>(), params);
  } else {
    in.raw = parse_raw(doc, mode);
  }
  return in;
}

InputDocument parse_input_text(const std::string& text, Mode mode) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error("", std::string("malformed document: ") + e.what());
  }
  return parse_input(doc, mode);
}

std::map<std::string, Scalar> parse_params(const std::string& text, Mode mode) {
  std::map<std::string, Scalar> out;
  std::stringstream ss(text);
  std::string item;
  auto trim = [](const std::string& t) {
    const auto b = t.find_first_not_of(" \t");
    return b == std::string::npos ? std::string() : t.substr(b, t.find_last_not_of(" \t") - b + 1);
  };
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw input_error("--params", "expected name=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    Scalar value;
    try {
      value = Scalar::parse(trim(item.substr(eq + 1)), mode);
    } catch (const scalar_error& e) {
      throw input_error("--params " + key, e.what());
    }
    if (!out.emplace(key, value).second) throw input_error("--params", "parameter '" + key + "' given twice");
  }
  return out;
}

json echo_input(const InputDocument& in) {
  json j;
  if (in.family) {
    j["family"] = in.family->name();
    json p = json::object();
    for (const auto& [k, v] : in.family->params) p[k] = v.str();
    j["params"] = p;
    return j;
  }
  const StructureTensors& st = *in.raw;
  j["frame_kind"] = to_string(st.host.frame_kind());
  j["metric"] = mat_json(st.host.metric());
  json br = json::array();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = i + 1; k < 3; ++k) {
      const Vec3 c = st.host.bracket(Vec3::basis(i), Vec3::basis(k));
      if (!c.is_zero()) br.push_back(json::array({i, k, vec_json(c)}));
    }
  j["brackets"] = br;
  j["phi"] = mat_json(st.phi);
  j["xi"] = vec_json(st.xi);
  j["eta"] = vec_json(st.eta);
  j["epsilon"] = st.epsilon;
  return j;
}

StructureTensors materialize(const InputDocument& in) {
  if (in.family) return build(*in.family);
  if (!in.raw) throw input_error("", "empty input document");
  if (auto v = validate(*in.raw); !v.empty()) throw validation_error(std::move(v));
  return *in.raw;
}

bool Report::operator==(const Report& o) const {
  return schema == o.schema && input == o.input && mode == o.mode && dhomothety == o.dhomothety &&
         structure_class == o.structure_class && kappa_mu == o.kappa_mu && invariants == o.invariants &&
         group == o.group && curvature == o.curvature && identities == o.identities && milnor == o.milnor;
}

Report make_report(const InputDocument& in, const ReportOptions& opt) {
  StructureTensors st = materialize(in);
  Report r;
  r.input = echo_input(in);
  r.mode = opt.mode == Mode::Exact ? "exact" : "float";
  if (opt.dhomothety) {
    r.dhomothety = opt.dhomothety->str();
    if (st.is_para() && st.host.frame_kind() == FrameKind::Artin) {
      st = d_homothety_artin(st, *opt.dhomothety);
    } else {
      st = d_homothety(st, *opt.dhomothety);
    }
  }

  const Analysis a = analyze(st);
  r.structure_class = {a.tag.name(), a.tag.display(), a.tag.normal, a.tag.u.str(), a.tag.f.str(),
                       a.tag.residual.str()};
  r.kappa_mu = {opt_str(a.kmu.kappa),           opt_str(a.kmu.mu),       to_string(a.kmu.nullity_kind),
                a.kmu.h_rank,                    a.kmu.residual.str(),    a.kmu.pattern_residual.str(),
                a.kmu.note};

  const auto inv = invariants(a.tag, a.kmu);
  for (const auto& i : inv) {
    InvariantSection s;
    s.kind = to_string(i.kind);
    s.defined = i.defined;
    if (i.defined) {
      s.value = i.value.str();
      s.value_squared = i.value.squared().str();
    }
    s.reason = i.reason;
    r.invariants.push_back(s);
  }

  const GroupClass g = classify_group(a.st, a.tag, a.kmu, inv);
  r.group = {g.name(), g.table, g.range, g.description(), emit_table_row(g), g.reason};

  const auto& alg = a.st.host;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < 3; ++j) row.push_back(a.cc.ricci(i, j).str());
    r.curvature.ricci.push_back(row);
  }
  if (alg.frame_kind() == FrameKind::Orthonormal && a.cc.ricci.is_diagonal()) {
    r.curvature.principal = std::vector<std::string>{a.cc.ricci(0, 0).str(), a.cc.ricci(1, 1).str(),
                                                     a.cc.ricci(2, 2).str()};
  }
  r.curvature.scalar = a.cc.scalar.str();
  if (alg.frame_kind() == FrameKind::Artin) {
    r.curvature.distribution_curvature =
        distribution_curvature(alg, a.cc, Vec3::basis(1), Vec3::basis(2)).str();
  }

  for (const auto& res : verify_identities(a, opt.identities)) {
    IdentitySection s;
    s.id = to_string(res.id);
    s.status = to_string(res.status);
    if (res.status != IdentityStatus::Skipped) s.residual = res.residual.str();
    s.reason = res.reason;
    r.identities.push_back(s);
  }

  if (!a.st.is_para() && ad_traces(alg).is_zero()) {
    try {
      const MilnorData m = milnor_frame(alg);
      MilnorSection ms;
      for (std::size_t i = 0; i < 3; ++i) {
        ms.lambda.push_back(stable_double(m.lambda[i]));
        ms.mu.push_back(stable_double(m.mu[i]));
        ms.ricci.push_back(stable_double(m.ricci[i]));
        ms.signs.push_back(m.signs[i]);
      }
      ms.bracket_residual = stable_double(m.bracket_residual);
      ms.ricci_residual = stable_double(m.ricci_residual);
      r.milnor = ms;
    } catch (const validation_error&) {
      // indefinite metric: no Milnor frame
    }
  }
  return r;
}

json report_to_json(const Report& r) {
  json j;
  j["schema"] = r.schema;
  j["input"] = r.input;
  j["mode"] = r.mode;
  j["dhomothety"] = r.dhomothety;
  j["class"] = r.structure_class;
  j["kappa_mu"] = r.kappa_mu;
  j["invariants"] = r.invariants;
  j["group"] = r.group;
  j["curvature"] = r.curvature;
  j["identities"] = r.identities;
  j["milnor"] = r.milnor;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  try {
    j.at("schema").get_to(r.schema);
    if (r.schema != "v1") throw input_error("/schema", "unsupported schema '" + r.schema + "'");
    r.input = j.at("input");
    j.at("mode").get_to(r.mode);
    j.at("dhomothety").get_to(r.dhomothety);
    j.at("class").get_to(r.structure_class);
    j.at("kappa_mu").get_to(r.kappa_mu);
    j.at("invariants").get_to(r.invariants);
    j.at("group").get_to(r.group);
    j.at("curvature").get_to(r.curvature);
    j.at("identities").get_to(r.identities);
    j.at("milnor").get_to(r.milnor);
  } catch (const json::exception& e) {
    throw input_error("", std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

std::string report_to_text(const Report& r) {
  std::ostringstream os;
  os << "kmlab report (schema " << r.schema << ", " << r.mode << " mode)\n";
  os << "input:       " << r.input.dump() << "\n";
  if (r.dhomothety) os << "D-homothety: alpha = " << *r.dhomothety << "\n";
  const auto& c = r.structure_class;
  os << "class:       " << c.display << " [" << c.tag << "], u = " << c.u << ", f = " << c.f << "\n";
  const auto& k = r.kappa_mu;
  os << "(κ,μ):       " << k.nullity_kind << ", κ = " << k.kappa.value_or("none") << ", μ = " << k.mu.value_or("none")
     << ", rank h = " << k.h_rank << ", residual " << k.residual << "\n";
  if (!k.note.empty()) os << "             " << k.note << "\n";
  for (const auto& i : r.invariants) {
    os << "invariant:   " << i.kind << " = " << (i.defined ? *i.value : "undefined (" + i.reason + ")") << "\n";
  }
  os << "group:       " << r.group.row;
  if (r.group.table != 0) os << "  (Table " << r.group.table << ")";
  os << "\n";
  os << "Ricci:       ";
  if (r.curvature.principal) {
    const auto& p = *r.curvature.principal;
    os << "principal (" << p[0] << ", " << p[1] << ", " << p[2] << ")";
  } else {
    for (std::size_t i = 0; i < 3; ++i) {
      os << (i == 0 ? "[" : " ") << "[" << r.curvature.ricci[i][0] << ", " << r.curvature.ricci[i][1] << ", "
         << r.curvature.ricci[i][2] << "]" << (i == 2 ? "]" : ",");
    }
  }
  os << ", scalar " << r.curvature.scalar << "\n";
  if (r.curvature.distribution_curvature) os << "K_D:         " << *r.curvature.distribution_curvature << "\n";
  for (const auto& id : r.identities) {
    os << "identity:    " << id.id << " " << id.status;
    if (id.residual) os << " (residual " << *id.residual << ")";
    if (!id.reason.empty()) os << " (" << id.reason << ")";
    os << "\n";
  }
  if (r.milnor) {
    const auto& m = *r.milnor;
    os << "Milnor:      λ = (" << m.lambda[0] << ", " << m.lambda[1] << ", " << m.lambda[2] << "), signs (" << m.signs[0]
       << ", " << m.signs[1] << ", " << m.signs[2] << "), r = (" << m.ricci[0] << ", " << m.ricci[1] << ", "
       << m.ricci[2] << ")\n";
  }
  return os.str();
}

namespace {

std::vector<Scalar> default_grid(Mode mode) {
  std::vector<Scalar> g;
  for (int i = -3; i <= 3; ++i) g.emplace_back(i);
  for (int n : {-3, -1, 1, 3}) g.emplace_back(n, 2);
  for (auto& s : g) s = s.in_mode(mode);
  return g;
}

long parse_int(const std::string& s, const std::string& loc) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw input_error(loc, "expected an integer bound, got '" + s + "'");
}

std::vector<Scalar> parse_values(const std::string& text, const std::string& loc, Mode mode) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '|')) {
    if (tok == "*") {
      auto d = default_grid(mode);
      out.insert(out.end(), d.begin(), d.end());
    } else if (auto dots = tok.find(".."); dots != std::string::npos) {
      const long lo = parse_int(tok.substr(0, dots), loc);
      const long hi = parse_int(tok.substr(dots + 2), loc);
      if (hi < lo || hi - lo > 1000) throw input_error(loc, "bad range '" + tok + "'");
      for (long v = lo; v <= hi; ++v) out.push_back(Scalar(v).in_mode(mode));
    } else {
      try {
        out.push_back(Scalar::parse(tok, mode));
      } catch (const scalar_error& e) {
        throw input_error(loc, e.what());
      }
    }
  }
  if (out.empty()) throw input_error(loc, "no values");
  return out;
}

}  // namespace

std::vector<SweepRow> run_sweep(const std::string& family, const std::string& grid_spec,
                                const std::map<std::string, Scalar>& fixed, Mode mode) {
  const FamilyKind kind = family_from_name(family);
  const auto& names = family_parameters(kind);
  std::map<std::string, std::vector<Scalar>> axes;
  std::stringstream ss(grid_spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw input_error("--sweep", "expected name=values, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw input_error("--sweep", "family '" + family + "' has no parameter '" + key + "'");
    }
    if (axes.count(key) != 0) throw input_error("--sweep", "parameter '" + key + "' given twice");
    axes[key] = parse_values(item.substr(eq + 1), "--sweep " + key, mode);
  }
  std::size_t total = 1;
  for (const auto& n : names) {
    if (axes.count(n) == 0) {
      auto it = fixed.find(n);
      axes[n] = it != fixed.end() ? std::vector<Scalar>{it->second} : default_grid(mode);
    }
    total *= axes[n].size();
    if (total > 200000) throw input_error("--sweep", "grid has more than 200000 points");
  }

  std::vector<SweepRow> rows;
  rows.reserve(total);
  std::vector<std::size_t> idx(names.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rem = n;
    for (std::size_t p = names.size(); p-- > 0;) {
      idx[p] = rem % axes[names[p]].size();
      rem /= axes[names[p]].size();
    }
    std::map<std::string, Scalar> params;
    SweepRow row;
    for (std::size_t p = 0; p < names.size(); ++p) {
      const Scalar& v = axes[names[p]][idx[p]];
      params.emplace(names[p], v);
      row.params[names[p]] = v.str();
    }
    try {
      const Analysis a = analyze(build(FamilySpec::make(family, params)));
      const auto inv = invariants(a.tag, a.kmu);
      row.valid = true;
      row.structure_class = a.tag.display();
      row.kappa = opt_str(a.kmu.kappa);
      row.mu = opt_str(a.kmu.mu);
      if (inv.empty()) {
        row.invariant = "-";
      } else {
        const auto& i = inv.front();
        row.invariant = invariant_label(i.kind) + (i.defined ? "=" + i.value.str() : " undefined");
      }
      row.group = classify_group(a.st, a.tag, a.kmu, inv);
      row.row = emit_table_row(row.group);
    } catch (const validation_error& e) {
      row.valid = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json sweep_to_json(const std::string& family, const std::vector<SweepRow>& rows) {
  json points = json::array();
  std::map<std::string, int> hits;
  int invalid = 0;
  for (const auto& r : rows) {
    json p;
    p["params"] = r.params;
    p["valid"] = r.valid;
    if (!r.valid) {
      p["error"] = r.error;
      ++invalid;
    } else {
      p["class"] = r.structure_class;
      p["kappa"] = r.kappa;
      p["mu"] = r.mu;
      p["invariant"] = r.invariant;
      p["group"] = r.group.name();
      p["table"] = r.group.table;
      p["row"] = r.row;
      if (r.group.table != 0) ++hits["Table " + std::to_string(r.group.table) + ": " + r.row];
    }
    points.push_back(p);
  }
  json j;
  j["schema"] = "v1";
  j["family"] = family;
  j["points"] = points;
  j["rows_hit"] = hits;
  j["invalid_points"] = invalid;
  return j;
}

std::string sweep_to_text(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    bool first = true;
    for (const auto& [k, v] : r.params) {
      os << (first ? "" : " ") << k << "=" << v;
      first = false;
    }
    if (!r.valid) {
      os << " | invalid: " << r.error << "\n";
      continue;
    }
    os << " | " << r.structure_class << " | κ=" << r.kappa.value_or("none") << " μ=" << r.mu.value_or("none") << " | "
       << r.invariant << " | ";
    if (r.group.table != 0) os << "T" << r.group.table << ": ";
    os << r.row << "\n";
  }
  return os.str();
}

}  // namespace kmlab
