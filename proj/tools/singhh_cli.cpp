#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "singhh/singhh.h"

using json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
  std::string field = "rationals";
  std::string order = "grevlex";
  std::string format = "json";
  int threads = 1;
  long budget = 50000000;
  int depth_cap = 10;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--field", o.field, "Coefficient field: rationals or gf<p>");
  cmd->add_option("--order", o.order, "Monomial order: grevlex, gradedlex or lex");
  cmd->add_option("--format", o.format, "Output format: json or tsv")
      ->check(CLI::IsMember({"json", "tsv"}));
  cmd->add_option("--threads", o.threads, "Worker threads for exact linear algebra");
  cmd->add_option("--budget", o.budget, "Size budget for constructed complexes");
  cmd->add_option("--depth-cap", o.depth_cap, "Deepest truncation tried when composing classes");
}

// "gf7", "gf:7" and "gf 7" all mean the prime field with seven elements.
std::string normalize_field(const std::string& v) {
  if (v.rfind("gf", 0) != 0 || v.size() <= 2) return v;
  std::string rest = v.substr(2);
  if (rest[0] == ':' || rest[0] == ' ') rest = rest.substr(1);
  return "gf " + rest;
}

std::pair<int, int> parse_window(const std::string& text) {
  size_t dots = text.find("..");
  if (dots == std::string::npos)
    throw CLI::ValidationError("--degrees", "expected a window like -3..5, got '" + text + "'");
  try {
    size_t lo_end = 0, hi_end = 0;
    std::string lo_text = text.substr(0, dots), hi_text = text.substr(dots + 2);
    int lo = std::stoi(lo_text, &lo_end), hi = std::stoi(hi_text, &hi_end);
    if (lo_end != lo_text.size() || hi_end != hi_text.size() || lo > hi)
      throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--degrees", "expected a window like -3..5, got '" + text + "'");
  }
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    int i = 0;
    for (const auto& v : j) flatten(v, prefix + "." + std::to_string(i++), rows);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

void print_report(const std::string& report, const std::string& format) {
  if (format == "json") {
    std::cout << report << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(json::parse(report), "", rows);
  for (const auto& [key, value] : rows) std::cout << key << "\t" << value << "\n";
}

int exit_code(int status) {
  switch (status) {
    case SHH_OK:
      return 0;
    case SHH_ERROR_INPUT:
    case SHH_ERROR_IO:
      return 2;
    default:
      return 1;
  }
}

// A scan that ran to completion without a verdict is still a mathematical
// failure for the exit status; the report is printed either way.
bool has_inconclusive_degree(const std::string& report) {
  json j = json::parse(report);
  if (!j.contains("degrees")) return false;
  for (const auto& row : j["degrees"])
    if (row.contains("stabilized") && row["stabilized"] == false) return true;
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants of hypersurface singularities and finite dimensional algebras"};
  app.require_subcommand(1);

  CommonOpts common;
  std::function<int(shh_session*, char**)> runner;
  bool check_stabilization = false;

  std::string poly, poly_second, vars, algebra_path, resolution_path, file_path, window_text;
  int n_max = 5, q_max = 8, degree_f = 0, degree_g = 0;

  auto poly_cmd = [&](const char* name, const char* help, auto fn, bool two_polys = false) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("--poly", poly, two_polys ? "First polynomial" : "Polynomial")->required();
    if (two_polys) cmd->add_option("--with", poly_second, "Second polynomial")->required();
    cmd->add_option("--vars", vars, "Comma separated variable names")->required();
    add_common(cmd, common);
    cmd->callback([&runner, fn] { runner = fn; });
    return cmd;
  };

  poly_cmd("milnor", "Jacobian quotient of a polynomial and its multiplicity at the origin",
           [&](shh_session* s, char** out) { return shh_milnor(s, poly.c_str(), vars.c_str(), out); });
  poly_cmd("tyurina", "Quotient by the polynomial and its partial derivatives",
           [&](shh_session* s, char** out) { return shh_tyurina(s, poly.c_str(), vars.c_str(), out); });
  poly_cmd("fingerprint", "Isomorphism invariants of the local algebra of a singularity",
           [&](shh_session* s, char** out) { return shh_fingerprint(s, poly.c_str(), vars.c_str(), out); });
  poly_cmd("compare", "Invariant-by-invariant comparison of two singularities",
           [&](shh_session* s, char** out) {
             return shh_compare(s, poly.c_str(), poly_second.c_str(), vars.c_str(), out);
           },
           true);

  CLI::App* hyp = poly_cmd("hyp-hh", "Stable cohomology dimensions of a hypersurface by degree",
                           [&](shh_session* s, char** out) {
                             auto [lo, hi] = parse_window(window_text);
                             return shh_stable_hh(s, poly.c_str(), vars.c_str(), lo, hi, out);
                           });
  hyp->add_option("--degrees", window_text, "Degree window lo..hi")->default_val("-3..5");

  CLI::App* hh = app.add_subcommand("hh", "Cohomology of an algebra from its bar complex");
  hh->add_option("--algebra", algebra_path, "Algebra file")->required();
  hh->add_option("--nmax", n_max, "Largest degree computed");
  add_common(hh, common);
  hh->callback([&] {
    runner = [&](shh_session* s, char** out) {
      return shh_hochschild(s, algebra_path.c_str(), n_max, out);
    };
  });

  CLI::App* sg = app.add_subcommand("hh-sg", "Stabilized cohomology of an algebra by degree");
  sg->add_option("--algebra", algebra_path, "Algebra file")->required();
  sg->add_option("--resolution", resolution_path, "Resolution file; the bar resolution when absent");
  sg->add_option("--degrees", window_text, "Degree window lo..hi")->default_val("-3..5");
  sg->add_option("--qmax", q_max, "Deepest truncation stage scanned");
  add_common(sg, common);
  sg->callback([&] {
    check_stabilization = true;
    runner = [&](shh_session* s, char** out) {
      auto [lo, hi] = parse_window(window_text);
      return shh_hochschild_sg(s, algebra_path.c_str(),
                               resolution_path.empty() ? nullptr : resolution_path.c_str(), lo,
                               hi, q_max, out);
    };
  });

  CLI::App* prod = app.add_subcommand("hh-sg-product",
                                      "Composition products between stabilized classes");
  prod->add_option("--algebra", algebra_path, "Algebra file")->required();
  prod->add_option("--resolution", resolution_path,
                   "Resolution file; the bar resolution when absent");
  prod->add_option("--degree-f", degree_f, "Degree of the left factor")->required();
  prod->add_option("--degree-g", degree_g, "Degree of the right factor")->required();
  prod->add_option("--qmax", q_max, "Deepest truncation stage scanned");
  add_common(prod, common);
  prod->callback([&] {
    runner = [&](shh_session* s, char** out) {
      return shh_hochschild_sg_product(s, algebra_path.c_str(),
                                       resolution_path.empty() ? nullptr : resolution_path.c_str(),
                                       degree_f, degree_g, q_max, out);
    };
  });

  CLI::App* syz = app.add_subcommand("syzygy-check",
                                     "Two independent descriptions of each syzygy, compared");
  syz->add_option("--algebra", algebra_path, "Algebra file")->required();
  syz->add_option("--qmax", q_max, "Deepest syzygy checked");
  add_common(syz, common);
  syz->callback([&] {
    runner = [&](shh_session* s, char** out) {
      return shh_syzygy_check(s, algebra_path.c_str(), q_max, out);
    };
  });

  CLI::App* mf = app.add_subcommand("mf-hom",
                                    "Morphism cohomology between two matrix factorizations");
  mf->add_option("--first", file_path, "First factorization file")->required();
  mf->add_option("--second", poly_second, "Second factorization file")->required();
  add_common(mf, common);
  mf->callback([&] {
    runner = [&](shh_session* s, char** out) {
      return shh_mf_hom(s, file_path.c_str(), poly_second.c_str(), out);
    };
  });

  CLI::App* val = app.add_subcommand("validate", "Parse and check a data file");
  val->add_option("--file", file_path, "Algebra, resolution or factorization file")->required();
  val->add_option("--algebra", algebra_path, "Algebra a resolution file belongs to");
  add_common(val, common);
  val->callback([&] {
    runner = [&](shh_session* s, char** out) {
      return shh_validate(s, file_path.c_str(),
                          algebra_path.empty() ? nullptr : algebra_path.c_str(), out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "Run '" << argv[0] << " --help' for usage.\n";
    return 2;
  }

  shh_session* session = shh_session_new();
  auto fail = [&](const char* stage) {
    std::cerr << "error: " << stage << ": " << shh_last_error(session) << "\n";
    int code = 2;
    shh_session_free(session);
    return code;
  };
  if (shh_configure(session, "field", normalize_field(common.field).c_str()) != SHH_OK)
    return fail("--field");
  if (shh_configure(session, "order", common.order.c_str()) != SHH_OK) return fail("--order");
  if (shh_configure(session, "threads", std::to_string(common.threads).c_str()) != SHH_OK)
    return fail("--threads");
  if (shh_configure(session, "budget", std::to_string(common.budget).c_str()) != SHH_OK)
    return fail("--budget");
  if (shh_configure(session, "depth-cap", std::to_string(common.depth_cap).c_str()) != SHH_OK)
    return fail("--depth-cap");

  int status;
  char* report = nullptr;
  try {
    status = runner(session, &report);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    shh_session_free(session);
    return 2;
  }

  int code = exit_code(status);
  if (status == SHH_OK) {
    std::string text = report ? report : "";
    if (check_stabilization && has_inconclusive_degree(text)) code = 1;
    print_report(text, common.format);
  } else {
    std::cerr << "error: " << shh_last_error(session) << "\n";
  }
  shh_string_free(report);
  shh_session_free(session);
  return code;
}
