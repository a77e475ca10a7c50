#include "drm/errors.hpp"
#include "drm/json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace drm;

FieldData parse_field(const std::string& s) {
  if (s == "Q" || s == "q") return make_field(1);
  return make_field(std::stoll(s));
}

IdealHNF parse_conductor(const FieldData& K, const std::string& s) {
  if (s.find(',') != std::string::npos) {
    std::istringstream is(s);
    std::string part;
    std::vector<i64> v;
    while (std::getline(is, part, ',')) v.push_back(std::stoll(part));
    if (v.size() != 3) throw std::invalid_argument("conductor HNF needs three entries a,b,c");
    IdealHNF a{v[0], v[1], v[2]};
    if (ideal_norm(a) <= 0) throw std::invalid_argument("conductor HNF not positive");
    return a;
  }
  return conductor_of_norm(K, std::stoll(s));
}

std::vector<IdealHNF> resolve_conductors(const FieldData& K, const std::string& conductor,
                                         i64 conductor_norm, const std::vector<i64>& levels) {
  std::vector<IdealHNF> out;
  if (!conductor.empty()) out.push_back(parse_conductor(K, conductor));
  if (conductor_norm > 0) out.push_back(conductor_of_norm(K, conductor_norm));
  for (i64 n : levels) out.push_back(conductor_of_norm(K, n));
  if (out.empty()) throw std::invalid_argument("no conductor given");
  return out;
}

void emit(const ojson& j, const std::string& out_path, const std::string& format) {
  std::string text = format == "table" ? render_table(j) : dump_canonical(j);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open output path " + out_path);
    os << text;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-level Deligne-Ribet monoid toolkit"};
  app.require_subcommand(1);

  std::string field = "Q", field2, conductor, out_path, format = "json", suite = "all";
  i64 conductor_norm = 0;
  std::vector<i64> levels;
  uint64_t seed = 0;
  i64 orbit_cap = 100000, ring_cap = 10000;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--field", field, "Q or a negative fundamental discriminant");
    cmd->add_option("--conductor", conductor, "conductor as norm or HNF a,b,c");
    cmd->add_option("--conductor-norm", conductor_norm, "conductor of least HNF with this norm");
    cmd->add_option("--levels", levels, "list of conductor norms")->delimiter(',');
    cmd->add_option("--seed", seed, "seed for sampled property tests");
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--orbit-cap", orbit_cap, "raw orbit pair cap");
    cmd->add_option("--ring-cap", ring_cap, "conductor norm cap");
  };

  CLI::App* cmd_build = app.add_subcommand("build", "build and dump a level tower");
  CLI::App* cmd_idem = app.add_subcommand("idempotents", "idempotent table of one level");
  CLI::App* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  CLI::App* cmd_compare = app.add_subcommand("compare", "compare two fields by invariants");
  add_common(cmd_build);
  add_common(cmd_idem);
  add_common(cmd_verify);
  add_common(cmd_compare);
  cmd_verify->add_option("--suite", suite, "idempotents|omega|local|sigma|reciprocity|u1|transitions|all");
  cmd_compare->add_option("--field2", field2, "second field descriptor")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    FieldData K = parse_field(field);
    Caps caps;
    caps.orbit_cap = orbit_cap;
    caps.ring_norm_cap = ring_cap;

    if (cmd_build->parsed()) {
      std::vector<IdealHNF> fs = resolve_conductors(K, conductor, conductor_norm, levels);
      std::vector<DRLevel> tower;
      for (const IdealHNF& f : fs) tower.push_back(build_dr(K, f, caps));
      ojson j = tower_json(K, tower);
      j["seed"] = seed;
      emit(j, out_path, format);
      return 0;
    }
    if (cmd_idem->parsed()) {
      std::vector<IdealHNF> fs = resolve_conductors(K, conductor, conductor_norm, levels);
      int rc = 0;
      for (const IdealHNF& f : fs) {
        DRLevel L = build_dr(K, f, caps);
        ojson j = idempotents_json(L);
        emit(j, out_path, format);
        if (j["count"] != j["expected_count"]) rc = 1;
      }
      return rc;
    }
    if (cmd_verify->parsed()) {
      std::vector<std::string> names = suite_names();
      std::vector<IdealHNF> fs = resolve_conductors(K, conductor, conductor_norm, levels);
      SuiteReport rep = run_suite(suite, K, fs, seed, caps);
      ojson j = suite_json(rep);
      j["seed"] = seed;
      emit(j, out_path, format);
      return rep.pass() ? 0 : 1;
    }
    if (cmd_compare->parsed()) {
      FieldData L2 = parse_field(field2);
      std::vector<IdealHNF> fs1 = resolve_conductors(K, conductor, conductor_norm, levels);
      std::vector<DRLevel> t1, t2;
      std::vector<const DRLevel*> p1, p2;
      for (const IdealHNF& f : fs1) t1.push_back(build_dr(K, f, caps));
      for (const IdealHNF& f : fs1) t2.push_back(build_dr(L2, conductor_of_norm(L2, ideal_norm(f)), caps));
      for (const DRLevel& L : t1) p1.push_back(&L);
      for (const DRLevel& L : t2) p2.push_back(&L);
      ojson j = comparison_json(compare_fields(p1, p2));
      j["seed"] = seed;
      emit(j, out_path, format);
      return 0;
    }
  } catch (const drm::CapExceeded& e) {
    ojson err;
    err["error"] = "resource cap exceeded";
    err["detail"] = e.what();
    std::cerr << dump_canonical(err);
    return 3;
  } catch (const std::exception& e) {
    ojson err;
    err["error"] = "invalid configuration";
    err["detail"] = e.what();
    std::cerr << dump_canonical(err);
    return 2;
  }
  return 2;
}
