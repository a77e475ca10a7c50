#include "drm/json_io.hpp"

#include <sstream>

namespace drm {

ojson field_json(const FieldData& K) {
  ojson j;
  j["kind"] = K.rational() ? "Q" : "imaginary_quadratic";
  j["discriminant"] = K.rational() ? 1 : K.disc;
  j["unit_order"] = K.unit_order;
  return j;
}

ojson ideal_json(const IdealHNF& a) {
  ojson j;
  j["a"] = a.a;
  j["b"] = a.b;
  j["c"] = a.c;
  j["norm"] = ideal_norm(a);
  return j;
}

static ojson fe_json(const FieldElement& g) {
  return ojson::array({g.x, g.y});
}

static ojson elem_json(const DRLevel& L, int x) {
  const auto& [rho, s] = L.elems[x];
  ojson jr = ojson::array();
  for (const FieldElement& r : rho) jr.push_back(fe_json(r));
  ojson j;
  j["rho"] = jr;
  j["s"] = s;
  return j;
}

ojson level_json(const DRLevel& L) {
  ojson j;
  j["conductor"] = ideal_json(L.conductor);
  ojson supp = ojson::array();
  for (const LocalFactor& F : L.ring.factors) {
    ojson f;
    f["prime"] = ideal_json(F.prime);
    f["e"] = F.e;
    f["residue_norm"] = F.residue_norm;
    supp.push_back(f);
  }
  j["support"] = supp;
  j["ray_class_orders"] = L.ray.G().orders;
  j["ray_class_order"] = L.ray.order();
  j["size"] = L.size();
  j["identity"] = L.identity_idx;
  j["e_empty"] = L.e_empty_idx;
  ojson elems = ojson::array();
  for (int x = 0; x < (int)L.size(); ++x) elems.push_back(elem_json(L, x));
  j["elements"] = elems;
  j["units"] = L.unit_elems;
  ojson ik = ojson::array();
  for (int x = 0; x < (int)L.size(); ++x)
    if (L.ik_member[x]) ik.push_back(x);
  j["ideal_image"] = ik;
  return j;
}

ojson tower_json(const FieldData& K, const std::vector<DRLevel>& levels) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["document"] = "dr_tower";
  j["field"] = field_json(K);
  ojson lv = ojson::array();
  for (const DRLevel& L : levels) lv.push_back(level_json(L));
  j["levels"] = lv;
  return j;
}

ojson idempotents_json(const DRLevel& L) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["document"] = "idempotents";
  j["field"] = field_json(L.K);
  j["conductor"] = ideal_json(L.conductor);
  std::vector<IdempotentRecord> idem = L.all_idempotents();
  j["count"] = (i64)idem.size();
  j["expected_count"] = (i64)1 << L.nfactors();
  ojson rows = ojson::array();
  for (const IdempotentRecord& r : idem) {
    ojson row;
    row["index"] = r.idx;
    row["support"] = r.support;
    row["maximal"] = r.maximal;
    if (r.maximal)
      row["prime_label"] = ideal_str(L.ring.factors[r.missing_factor].prime);
    else
      row["prime_label"] = "";
    rows.push_back(row);
  }
  j["idempotents"] = rows;
  return j;
}

ojson suite_json(const SuiteReport& rep) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["document"] = "suite_report";
  j["suite"] = rep.suite;
  j["field"] = rep.field;
  j["conductor_norms"] = rep.conductor_norms;
  ojson checks = ojson::array();
  for (const CheckResult& c : rep.checks) {
    ojson row;
    row["name"] = c.name;
    row["pass"] = c.pass;
    row["witness"] = c.witness;
    checks.push_back(row);
  }
  j["checks"] = checks;
  j["pass"] = rep.pass();
  return j;
}

static ojson invariants_json(const LevelInvariants& v) {
  ojson j;
  j["conductor_norm"] = v.conductor_norm;
  j["elements"] = v.elem_count;
  j["idempotents"] = v.idempotent_count;
  j["maximal_idempotents"] = v.maximal_idempotent_count;
  j["unit_snf"] = v.unit_snf;
  j["residue_norms"] = v.np_spectrum;
  j["local_unit_orders"] = v.local_unit_orders;
  j["ideal_image_size"] = v.ik_size;
  return j;
}

ojson comparison_json(const ComparisonReport& rep) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["document"] = "comparison";
  ojson lv = ojson::array();
  for (const auto& [a, b] : rep.levels) {
    ojson row;
    row["left"] = invariants_json(a);
    row["right"] = invariants_json(b);
    lv.push_back(row);
  }
  j["levels"] = lv;
  j["differences"] = rep.differences;
  j["verdict"] = rep.distinguished ? "distinguished" : "indistinguishable at tested levels";
  return j;
}

std::string dump_canonical(const ojson& j) {
  return j.dump(2) + "\n";
}

static void render_value(const ojson& v, const std::string& prefix, std::ostringstream& os);

static bool uniform_object_array(const ojson& a) {
  if (!a.is_array() || a.empty() || !a[0].is_object()) return false;
  for (const auto& row : a) {
    if (!row.is_object()) return false;
    if (row.size() != a[0].size()) return false;
  }
  for (auto it = a[0].begin(); it != a[0].end(); ++it)
    if (!it.value().is_primitive()) return false;
  return true;
}

static std::string scalar_str(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

static void render_rows(const ojson& a, const std::string& prefix, std::ostringstream& os) {
  std::vector<std::string> keys;
  for (auto it = a[0].begin(); it != a[0].end(); ++it) keys.push_back(it.key());
  std::vector<size_t> width;
  for (const std::string& k : keys) width.push_back(k.size());
  for (const auto& row : a)
    for (size_t i = 0; i < keys.size(); ++i)
      width[i] = std::max(width[i], scalar_str(row.at(keys[i])).size());
  os << prefix;
  for (size_t i = 0; i < keys.size(); ++i) {
    os << keys[i] << std::string(width[i] - keys[i].size(), ' ');
    os << (i + 1 < keys.size() ? "  " : "\n");
  }
  for (const auto& row : a) {
    os << prefix;
    for (size_t i = 0; i < keys.size(); ++i) {
      std::string s = scalar_str(row.at(keys[i]));
      os << s << std::string(width[i] - s.size(), ' ');
      os << (i + 1 < keys.size() ? "  " : "\n");
    }
  }
}

static void render_value(const ojson& v, const std::string& prefix, std::ostringstream& os) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (it.value().is_primitive()) {
        os << prefix << it.key() << ": " << scalar_str(it.value()) << "\n";
      } else if (uniform_object_array(it.value())) {
        os << prefix << it.key() << ":\n";
        render_rows(it.value(), prefix + "  ", os);
      } else if (it.value().is_array() &&
                 (it.value().empty() || it.value()[0].is_primitive())) {
        os << prefix << it.key() << ": " << it.value().dump() << "\n";
      } else {
        os << prefix << it.key() << ":\n";
        render_value(it.value(), prefix + "  ", os);
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) render_value(e, prefix, os);
  } else {
    os << prefix << scalar_str(v) << "\n";
  }
}

std::string render_table(const ojson& j) {
  std::ostringstream os;
  render_value(j, "", os);
  return os.str();
}

} // namespace drm
